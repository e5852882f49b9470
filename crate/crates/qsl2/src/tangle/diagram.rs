//! Grid data model for bottom-tangle diagrams.
//!
//! A diagram is a stack of rows of cells read bottom to top.  The bottom
//! boundary carries `2n` endpoints for an `n`-component bottom tangle;
//! component `i` (1-based) owns the adjacent bottom columns `2i-2` and
//! `2i-1` and is oriented from its right endpoint to its left endpoint.
//! The top boundary is empty: every strand closes off through caps.
//!
//! Each row is a horizontal slice of fundamental cells:
//!
//! ```text
//! |    identity (1 in, 1 out)        X+   positive crossing (2 in, 2 out)
//! cap  maximum (2 in, 0 out)         X-   negative crossing (2 in, 2 out)
//! cup  minimum (0 in, 2 out)
//! ```
//!
//! Traversal walks every component from its left endpoint upward (against
//! the orientation), recording crossings, their over/under parties, walk
//! directions, and cap/cup turn directions; this is precisely the data the
//! state sum consumes.

use std::fmt;

/// A fundamental cell.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cell {
    /// Identity strand `|`.
    Vertical,
    /// Positive crossing `X+`: the strand entering bottom-left passes over.
    PositiveCrossing,
    /// Negative crossing `X-`: the strand entering bottom-right passes over.
    NegativeCrossing,
    /// Maximum `cap`: joins two adjacent columns from below.
    Cap,
    /// Minimum `cup`: creates two adjacent columns above.
    Cup,
}

impl Cell {
    /// Number of input (bottom) columns the cell consumes.
    pub fn inputs(&self) -> usize {
        match self {
            Cell::Vertical => 1,
            Cell::PositiveCrossing | Cell::NegativeCrossing | Cell::Cap => 2,
            Cell::Cup => 0,
        }
    }

    /// Number of output (top) columns the cell emits.
    pub fn outputs(&self) -> usize {
        match self {
            Cell::Vertical => 1,
            Cell::PositiveCrossing | Cell::NegativeCrossing | Cell::Cup => 2,
            Cell::Cap => 0,
        }
    }

    /// Token in the textual DSL.
    pub fn token(&self) -> &'static str {
        match self {
            Cell::Vertical => "|",
            Cell::PositiveCrossing => "X+",
            Cell::NegativeCrossing => "X-",
            Cell::Cap => "cap",
            Cell::Cup => "cup",
        }
    }
}

/// One row of cells.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Row {
    /// Cells left to right.
    pub cells: Vec<Cell>,
}

impl Row {
    /// Total inputs consumed by the row.
    pub fn inputs(&self) -> usize {
        self.cells.iter().map(|c| c.inputs()).sum()
    }

    /// Total outputs emitted by the row.
    pub fn outputs(&self) -> usize {
        self.cells.iter().map(|c| c.outputs()).sum()
    }
}

/// A bottom-tangle diagram.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    /// Diagram name (used by the DSL round trip).
    pub name: String,
    /// Number of components `n`; the bottom boundary has `2n` points.
    pub components: usize,
    /// Rows from bottom to top.
    pub rows: Vec<Row>,
}

/// Structural or traversal errors for diagrams.
#[derive(Debug, thiserror::Error)]
pub enum TangleError {
    /// A row consumes a different number of columns than the boundary
    /// below it provides.
    #[error("row {row}: consumes {got} columns but {expected} are present")]
    WidthMismatch {
        /// 1-based row number from the bottom.
        row: usize,
        /// Columns provided from below.
        expected: usize,
        /// Columns the row consumes.
        got: usize,
    },
    /// The top boundary is not empty.
    #[error("top boundary has {width} open columns; all strands must close off")]
    OpenTop {
        /// Number of leftover columns.
        width: usize,
    },
    /// A component's walk did not end at its adjacent right endpoint.
    #[error("component {component} starts at bottom column {start} but ends at {end}; endpoints must be adjacent")]
    NonAdjacentEndpoints {
        /// 1-based component.
        component: usize,
        /// Starting bottom column.
        start: usize,
        /// Ending bottom column.
        end: usize,
    },
    /// Some cap, cup, or crossing is not reached by any component walk:
    /// the diagram contains a closed loop, which bottom tangles exclude.
    #[error("row {row}, cell {cell}: not reached from the bottom boundary; closed loops are not allowed")]
    UnreachableCell {
        /// 1-based row from the bottom.
        row: usize,
        /// 1-based cell index within the row.
        cell: usize,
    },
    /// The sum of crossing signs between two distinct components is odd.
    #[error("crossing signs between components {a} and {b} sum to an odd value {sum}")]
    OddLinkingSum {
        /// First 1-based component.
        a: usize,
        /// Second 1-based component.
        b: usize,
        /// The odd sum.
        sum: i64,
    },
}

/// One strand's pass through a crossing cell.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Pass {
    /// 0-based component index.
    pub component: usize,
    /// True iff the walk direction at the cell is downward.
    pub walking_down: bool,
}

/// A crossing discovered by traversal.
#[derive(Clone, Debug)]
pub struct Crossing {
    /// 0-based row.
    pub row: usize,
    /// 0-based cell index within the row.
    pub cell: usize,
    /// True for `X+`.
    pub positive: bool,
    /// The two diagonal parties: index 0 joins bottom-left to top-right,
    /// index 1 joins bottom-right to top-left.
    pub party: [Option<Pass>; 2],
}

impl Crossing {
    /// Index (0 or 1) of the party that passes over: bottom-left to
    /// top-right for `X+`, bottom-right to top-left for `X-`.
    pub fn over_party(&self) -> usize {
        if self.positive {
            0
        } else {
            1
        }
    }

    /// The crossing sign, determined by cell type and whether the two walk
    /// directions agree: `X+` counts `+1` when they agree, `-1` when mixed,
    /// and `X-` the opposite.
    ///
    /// # Panics
    /// Panics if traversal has not filled both parties.
    pub fn sign(&self) -> i64 {
        let a = self.party[0].expect("traversed");
        let b = self.party[1].expect("traversed");
        let same = a.walking_down == b.walking_down;
        match (self.positive, same) {
            (true, true) | (false, false) => 1,
            _ => -1,
        }
    }
}

/// One step of a component walk.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WalkStep {
    /// Passing through crossing `crossing` as party `party` (0 = the
    /// bottom-left to top-right diagonal).
    Cross {
        /// Index into [`Traversal::crossings`].
        crossing: usize,
        /// Diagonal party index (0 or 1).
        party: u8,
    },
    /// Turning around at a cap or cup.
    Turn {
        /// True for a cap (maximum), false for a cup (minimum).
        cap: bool,
        /// True iff the walk moves leftward across the turn; leftward turns
        /// carry Cartan labels in the state sum.
        walk_leftward: bool,
    },
}

/// Result of walking every component.
#[derive(Clone, Debug)]
pub struct Traversal {
    /// Per component (0-based), the walk steps in order from the left
    /// endpoint to the right endpoint.
    pub steps: Vec<Vec<WalkStep>>,
    /// All crossings, in discovery order.
    pub crossings: Vec<Crossing>,
    /// Edge directions: `edges[r][c]` is `(component, walking_down)` for
    /// the strand edge at column `c` of the boundary below row `r` (level
    /// `rows.len()` is the top).  The walk runs against the orientation,
    /// so a downward-walked edge is an upward-oriented strand.
    pub edges: Vec<Vec<(usize, bool)>>,
}

impl Diagram {
    /// Widths of the horizontal boundaries: `widths()[r]` is the number of
    /// columns below row `r`, and the last entry is the top width.
    pub fn widths(&self) -> Vec<usize> {
        let mut w = vec![2 * self.components];
        for row in &self.rows {
            let below = *w.last().unwrap();
            let consumed = row.inputs();
            w.push(below - consumed.min(below) + row.outputs());
        }
        w
    }

    /// Validate widths: every row must consume exactly the columns below
    /// it, and the top must be empty.
    pub fn validate_widths(&self) -> Result<(), TangleError> {
        let mut width = 2 * self.components;
        for (r, row) in self.rows.iter().enumerate() {
            let consumed = row.inputs();
            if consumed != width {
                return Err(TangleError::WidthMismatch {
                    row: r + 1,
                    expected: width,
                    got: consumed,
                });
            }
            width = row.outputs();
        }
        if width != 0 {
            return Err(TangleError::OpenTop { width });
        }
        Ok(())
    }

    /// Starting input column of each cell in row `r`.
    fn in_starts(&self, r: usize) -> Vec<usize> {
        let mut acc = 0;
        self.rows[r]
            .cells
            .iter()
            .map(|c| {
                let s = acc;
                acc += c.inputs();
                s
            })
            .collect()
    }

    /// Starting output column of each cell in row `r`.
    fn out_starts(&self, r: usize) -> Vec<usize> {
        let mut acc = 0;
        self.rows[r]
            .cells
            .iter()
            .map(|c| {
                let s = acc;
                acc += c.outputs();
                s
            })
            .collect()
    }

    /// Walk every component and collect crossings and turns.
    pub fn traverse(&self) -> Result<Traversal, TangleError> {
        self.validate_widths()?;
        let in_starts: Vec<Vec<usize>> = (0..self.rows.len()).map(|r| self.in_starts(r)).collect();
        let out_starts: Vec<Vec<usize>> =
            (0..self.rows.len()).map(|r| self.out_starts(r)).collect();
        let find = |starts: &[usize], widths: &[usize], col: usize| -> (usize, usize) {
            // Locate the cell covering `col` and the local index within it.
            for (k, s) in starts.iter().enumerate() {
                if col >= *s && col < s + widths[k] {
                    return (k, col - s);
                }
            }
            unreachable!("column {col} not covered");
        };
        let mut crossings: Vec<Crossing> = Vec::new();
        let mut crossing_ids: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        let mut visited: std::collections::HashSet<(usize, usize)> =
            std::collections::HashSet::new();
        let mut steps: Vec<Vec<WalkStep>> = Vec::new();
        let mut edge_marks: Vec<Vec<Option<(usize, bool)>>> = self
            .widths()
            .iter()
            .map(|w| vec![None; *w])
            .collect();
        for comp in 0..self.components {
            let mut walk = Vec::new();
            // State: edge between row r-1 and row r at column `col`;
            // `down == false` means about to enter row r from below.
            let mut r = 0usize;
            let mut col = 2 * comp;
            let mut down = false;
            loop {
                if !down {
                    edge_marks[r][col] = Some((comp, false));
                    let in_w: Vec<usize> =
                        self.rows[r].cells.iter().map(|c| c.inputs()).collect();
                    let (k, local) = find(&in_starts[r], &in_w, col);
                    visited.insert((r, k));
                    match self.rows[r].cells[k] {
                        Cell::Vertical => {
                            col = out_starts[r][k];
                            r += 1;
                        }
                        Cell::PositiveCrossing | Cell::NegativeCrossing => {
                            let id = *crossing_ids.entry((r, k)).or_insert_with(|| {
                                crossings.push(Crossing {
                                    row: r,
                                    cell: k,
                                    positive: matches!(
                                        self.rows[r].cells[k],
                                        Cell::PositiveCrossing
                                    ),
                                    party: [None, None],
                                });
                                crossings.len() - 1
                            });
                            // Entering from below at local 0 rides the
                            // bottom-left/top-right diagonal (party 0).
                            let party = local as u8;
                            crossings[id].party[party as usize] = Some(Pass {
                                component: comp,
                                walking_down: false,
                            });
                            walk.push(WalkStep::Cross {
                                crossing: id,
                                party,
                            });
                            col = out_starts[r][k] + (1 - local);
                            r += 1;
                        }
                        Cell::Cap => {
                            // Turn around; leaving down the other input.
                            walk.push(WalkStep::Turn {
                                cap: true,
                                walk_leftward: local == 1,
                            });
                            col = in_starts[r][k] + (1 - local);
                            down = true;
                        }
                        Cell::Cup => unreachable!("cup consumes no inputs"),
                    }
                } else {
                    // Moving down: crossing the boundary below row r means
                    // entering row r-1 from above, or reaching the bottom.
                    edge_marks[r][col] = Some((comp, true));
                    if r == 0 {
                        break;
                    }
                    let rr = r - 1;
                    let out_w: Vec<usize> =
                        self.rows[rr].cells.iter().map(|c| c.outputs()).collect();
                    let (k, local) = find(&out_starts[rr], &out_w, col);
                    visited.insert((rr, k));
                    match self.rows[rr].cells[k] {
                        Cell::Vertical => {
                            col = in_starts[rr][k];
                            r = rr;
                        }
                        Cell::PositiveCrossing | Cell::NegativeCrossing => {
                            let id = *crossing_ids.entry((rr, k)).or_insert_with(|| {
                                crossings.push(Crossing {
                                    row: rr,
                                    cell: k,
                                    positive: matches!(
                                        self.rows[rr].cells[k],
                                        Cell::PositiveCrossing
                                    ),
                                    party: [None, None],
                                });
                                crossings.len() - 1
                            });
                            // Entering from above at local 0 (top-left)
                            // rides the bottom-right/top-left diagonal
                            // (party 1).
                            let party = (1 - local) as u8;
                            crossings[id].party[party as usize] = Some(Pass {
                                component: comp,
                                walking_down: true,
                            });
                            walk.push(WalkStep::Cross {
                                crossing: id,
                                party,
                            });
                            col = in_starts[rr][k] + (1 - local);
                            r = rr;
                        }
                        Cell::Cup => {
                            walk.push(WalkStep::Turn {
                                cap: false,
                                walk_leftward: local == 1,
                            });
                            col = out_starts[rr][k] + (1 - local);
                            down = false;
                            r = rr + 1;
                        }
                        Cell::Cap => unreachable!("cap emits no outputs"),
                    }
                }
            }
            if col != 2 * comp + 1 {
                return Err(TangleError::NonAdjacentEndpoints {
                    component: comp + 1,
                    start: 2 * comp,
                    end: col,
                });
            }
            steps.push(walk);
        }
        // Every non-vertical cell must have been visited.
        for (r, row) in self.rows.iter().enumerate() {
            for (k, cell) in row.cells.iter().enumerate() {
                if !matches!(cell, Cell::Vertical) && !visited.contains(&(r, k)) {
                    return Err(TangleError::UnreachableCell {
                        row: r + 1,
                        cell: k + 1,
                    });
                }
            }
        }
        // With every cap and cup visited, every edge lies on some walk.
        let edges = edge_marks
            .into_iter()
            .map(|level| {
                level
                    .into_iter()
                    .map(|m| m.expect("edge covered by a component walk"))
                    .collect()
            })
            .collect();
        Ok(Traversal {
            steps,
            crossings,
            edges,
        })
    }

    /// The linking matrix: off-diagonal entries are half the sum of
    /// crossing signs between the two components; diagonal entries are
    /// writhes (sums of self-crossing signs).
    pub fn linking_matrix(&self) -> Result<Vec<Vec<i64>>, TangleError> {
        let t = self.traverse()?;
        let n = self.components;
        let mut sums = vec![vec![0i64; n]; n];
        for x in &t.crossings {
            let a = x.party[0].expect("traversed").component;
            let b = x.party[1].expect("traversed").component;
            let s = x.sign();
            if a == b {
                sums[a][a] += s;
            } else {
                sums[a][b] += s;
                sums[b][a] += s;
            }
        }
        let mut lk = vec![vec![0i64; n]; n];
        for i in 0..n {
            lk[i][i] = sums[i][i];
            for j in 0..n {
                if i == j {
                    continue;
                }
                if sums[i][j].rem_euclid(2) != 0 {
                    return Err(TangleError::OddLinkingSum {
                        a: i.min(j) + 1,
                        b: i.max(j) + 1,
                        sum: sums[i][j],
                    });
                }
                lk[i][j] = sums[i][j] / 2;
            }
        }
        Ok(lk)
    }

    /// True iff every crossing involves component `i` (1-based): the
    /// Brunnian presentation required by the membership verifier.
    pub fn brunnian_form(&self, i: usize) -> Result<bool, TangleError> {
        let t = self.traverse()?;
        Ok(t.crossings.iter().all(|x| {
            x.party
                .iter()
                .any(|p| p.expect("traversed").component + 1 == i)
        }))
    }
}

impl fmt::Display for Diagram {
    /// Serialize to the textual DSL (header plus rows, bottom first).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tangle {} components={}", self.name, self.components)?;
        for row in &self.rows {
            let tokens: Vec<&str> = row.cells.iter().map(|c| c.token()).collect();
            writeln!(f, "{}", tokens.join(" "))?;
        }
        Ok(())
    }
}
