//! Textual DSL for bottom-tangle diagrams.
//!
//! Format:
//!
//! ```text
//! # comment
//! tangle <name> components=<n>
//! <row>        # bottom row first
//! <row>
//! ...
//! ```
//!
//! Each row is a whitespace-separated list of cell tokens `|`, `X+`, `X-`,
//! `cap`, `cup`.  Everything after `#` on a line is a comment.  Rows are
//! listed bottom to top; the first row consumes the `2n` bottom endpoints
//! and the last row must close the diagram (no open columns remain).
//!
//! [`parse`] checks widths and endpoint adjacency, so a returned diagram
//! always traverses cleanly.  [`Diagram`]'s `Display` implementation is the
//! inverse serializer: `parse(d.to_string())` reproduces `d`.

use super::diagram::{Cell, Diagram, Row, TangleError};

/// Errors raised while reading the DSL, with 1-based line positions.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    /// The first non-comment line is not a valid header.
    #[error("line {line}: expected header `tangle <name> components=<n>`, found `{found}`")]
    BadHeader {
        /// 1-based line number.
        line: usize,
        /// The offending line text.
        found: String,
    },
    /// The component count is missing, zero, or not a number.
    #[error("line {line}: invalid component count `{found}`")]
    BadComponentCount {
        /// 1-based line number.
        line: usize,
        /// The offending token.
        found: String,
    },
    /// A token is not one of `|`, `X+`, `X-`, `cap`, `cup`.
    #[error("line {line}, token {index}: unknown cell token `{token}`")]
    UnknownToken {
        /// 1-based line number.
        line: usize,
        /// 1-based token index within the line.
        index: usize,
        /// The offending token.
        token: String,
    },
    /// No rows follow the header.
    #[error("diagram has no rows")]
    Empty,
    /// The grid parsed but is not a valid bottom tangle.
    #[error(transparent)]
    Structure(#[from] TangleError),
}

/// Parse the DSL into a validated diagram.
///
/// # Arguments
/// * `text` - the full DSL source.
///
/// # Returns
/// The diagram, already checked for width consistency, adjacency of
/// endpoints, and absence of closed loops.
pub fn parse(text: &str) -> Result<Diagram, ParseError> {
    let mut name = None;
    let mut components = 0usize;
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if name.is_none() {
            let mut parts = line.split_whitespace();
            if parts.next() != Some("tangle") {
                return Err(ParseError::BadHeader {
                    line: line_no,
                    found: line.to_string(),
                });
            }
            let nm = parts.next().ok_or_else(|| ParseError::BadHeader {
                line: line_no,
                found: line.to_string(),
            })?;
            let comp = parts.next().ok_or_else(|| ParseError::BadHeader {
                line: line_no,
                found: line.to_string(),
            })?;
            let value = comp
                .strip_prefix("components=")
                .ok_or_else(|| ParseError::BadHeader {
                    line: line_no,
                    found: line.to_string(),
                })?;
            components = value.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| {
                ParseError::BadComponentCount {
                    line: line_no,
                    found: value.to_string(),
                }
            })?;
            if parts.next().is_some() {
                return Err(ParseError::BadHeader {
                    line: line_no,
                    found: line.to_string(),
                });
            }
            name = Some(nm.to_string());
            continue;
        }
        let mut cells = Vec::new();
        for (t, token) in line.split_whitespace().enumerate() {
            let cell = match token {
                "|" => Cell::Vertical,
                "X+" => Cell::PositiveCrossing,
                "X-" => Cell::NegativeCrossing,
                "cap" => Cell::Cap,
                "cup" => Cell::Cup,
                other => {
                    return Err(ParseError::UnknownToken {
                        line: line_no,
                        index: t + 1,
                        token: other.to_string(),
                    })
                }
            };
            cells.push(cell);
        }
        rows.push(Row { cells });
    }
    let name = name.ok_or(ParseError::BadHeader {
        line: 1,
        found: String::new(),
    })?;
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    let d = Diagram {
        name,
        components,
        rows,
    };
    d.traverse()?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_serializer() {
        let src = "tangle demo components=1\n| cup |\ncap | |\ncap\n";
        let d = parse(src).expect("parses");
        assert_eq!(d.name, "demo");
        assert_eq!(d.components, 1);
        let again = parse(&d.to_string()).expect("round trip");
        assert_eq!(d, again);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let src = "# a diagram\n\ntangle t components=1  # header\n | |   # bottom\ncap # top\n";
        let d = parse(src).expect("parses");
        assert_eq!(d.rows.len(), 2);
    }

    #[test]
    fn reports_unknown_token_with_position() {
        let src = "tangle t components=1\n| Y+\n";
        match parse(src) {
            Err(ParseError::UnknownToken { line, index, token }) => {
                assert_eq!((line, index), (2, 2));
                assert_eq!(token, "Y+");
            }
            other => panic!("expected token error, got {other:?}"),
        }
    }

    #[test]
    fn reports_width_mismatch_row() {
        let src = "tangle t components=1\n| | |\ncap\n";
        match parse(src) {
            Err(ParseError::Structure(TangleError::WidthMismatch { row, expected, got })) => {
                assert_eq!((row, expected, got), (1, 2, 3));
            }
            other => panic!("expected width mismatch, got {other:?}"),
        }
    }

    #[test]
    fn reports_open_top() {
        let src = "tangle t components=1\n| |\n";
        match parse(src) {
            Err(ParseError::Structure(TangleError::OpenTop { width })) => assert_eq!(width, 2),
            other => panic!("expected open top, got {other:?}"),
        }
    }

    #[test]
    fn reports_non_adjacent_endpoints() {
        // A single kink closes off on its own endpoints and parses; a lone
        // crossing between two components swaps their endpoints and fails.
        let kink = "tangle t components=1\nX+\ncap\n";
        let swapped = "tangle t components=2\n| X+ |\ncap cap\n";
        assert!(parse(kink).is_ok());
        match parse(swapped) {
            Err(ParseError::Structure(TangleError::NonAdjacentEndpoints {
                component, ..
            })) => assert_eq!(component, 1),
            other => panic!("expected adjacency error, got {other:?}"),
        }
    }

    #[test]
    fn reports_closed_loop() {
        let src = "tangle t components=1\ncup | |\ncap | |\ncap\n";
        match parse(src) {
            Err(ParseError::Structure(TangleError::UnreachableCell { .. })) => {}
            other => panic!("expected unreachable cell, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_headers() {
        assert!(matches!(
            parse("knot t components=1\ncap\n"),
            Err(ParseError::BadHeader { .. })
        ));
        assert!(matches!(
            parse("tangle t components=0\ncap\n"),
            Err(ParseError::BadComponentCount { .. })
        ));
        assert!(matches!(
            parse("tangle t\ncap\n"),
            Err(ParseError::BadHeader { .. })
        ));
    }
}
