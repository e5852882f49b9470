//! Built-in example diagrams.
//!
//! * `trivial(n)`: the n-component trivial bottom tangle (a row of caps).
//! * `clasp_B`: the two-component clasp tangle whose closure is the Hopf
//!   link with linking number -1 on the off-diagonal.
//! * `borromean_TB`: the Borromean rings as a symmetric six-crossing
//!   bottom tangle; all pairwise linking numbers vanish.
//! * `borromean_P`: the Borromean rings presented so that components 2
//!   and 3 are crossing-free hoops and every crossing involves component
//!   1, which descends through a commutator pattern.
//! * `borromean_plus_arc`: `borromean_TB` together with a disjoint
//!   trivial fourth component.

use super::diagram::{Cell, Diagram, Row};

/// Build a row of total input width `width` with `cell` placed so that its
/// leftmost input sits at column `pos`, and identity strands elsewhere.
fn row_at(width: usize, pos: usize, cell: Cell) -> Row {
    let mut cells = Vec::new();
    for _ in 0..pos {
        cells.push(Cell::Vertical);
    }
    cells.push(cell);
    let used = pos + cell.inputs();
    assert!(used <= width, "cell at {pos} exceeds width {width}");
    for _ in used..width {
        cells.push(Cell::Vertical);
    }
    Row { cells }
}

/// The trivial `n`-component bottom tangle: one row of `n` caps.
///
/// # Panics
/// Panics if `n == 0`.
pub fn trivial(n: usize) -> Diagram {
    assert!(n > 0, "a bottom tangle needs at least one component");
    Diagram {
        name: format!("trivial({n})"),
        components: n,
        rows: vec![Row {
            cells: vec![Cell::Cap; n],
        }],
    }
}

/// The two-component clasp tangle: two positive crossing rows closed by
/// caps.  Both crossings are traversed in mixed directions, so the
/// linking matrix is `[[0, -1], [-1, 0]]`.
pub fn clasp_b() -> Diagram {
    Diagram {
        name: "clasp_B".to_string(),
        components: 2,
        rows: vec![
            row_at(4, 1, Cell::PositiveCrossing),
            row_at(4, 1, Cell::PositiveCrossing),
            row_at(4, 0, Cell::Cap),
            row_at(2, 0, Cell::Cap),
        ],
    }
}

/// The Borromean rings as a six-crossing bottom tangle with cyclic
/// symmetry: each pair of components meets in one positive and one
/// negative crossing, so the linking matrix vanishes.
pub fn borromean_tb() -> Diagram {
    Diagram {
        name: "borromean_TB".to_string(),
        components: 3,
        rows: vec![
            row_at(6, 1, Cell::PositiveCrossing),
            row_at(6, 3, Cell::PositiveCrossing),
            row_at(6, 2, Cell::NegativeCrossing),
            row_at(6, 3, Cell::Cup),
            row_at(8, 2, Cell::NegativeCrossing),
            row_at(8, 4, Cell::NegativeCrossing),
            row_at(8, 3, Cell::PositiveCrossing),
            row_at(8, 1, Cell::Cap),
            row_at(6, 0, Cell::Cap),
            row_at(4, 1, Cell::Cap),
            row_at(2, 0, Cell::Cap),
        ],
    }
}

/// The Borromean rings with components 2 and 3 as crossing-free hoops.
/// Component 1 descends from its cap and weaves a commutator: it crosses
/// over both legs of hoop 2, clasps a leg of hoop 3, clasps the right
/// leg of hoop 2 from the other side, clasps the leg of hoop 3 with the
/// opposite sense, and exits over hoop 2.  All ten crossings involve
/// component 1 and the linking matrix vanishes.
pub fn borromean_p() -> Diagram {
    Diagram {
        name: "borromean_P".to_string(),
        components: 3,
        rows: vec![
            row_at(6, 1, Cell::PositiveCrossing),
            row_at(6, 2, Cell::PositiveCrossing),
            row_at(6, 3, Cell::NegativeCrossing),
            row_at(6, 3, Cell::NegativeCrossing),
            row_at(6, 2, Cell::NegativeCrossing),
            row_at(6, 2, Cell::NegativeCrossing),
            row_at(6, 3, Cell::PositiveCrossing),
            row_at(6, 3, Cell::PositiveCrossing),
            row_at(6, 2, Cell::PositiveCrossing),
            row_at(6, 1, Cell::NegativeCrossing),
            row_at(6, 0, Cell::Cap),
            row_at(4, 0, Cell::Cap),
            row_at(2, 0, Cell::Cap),
        ],
    }
}

/// `borromean_TB` with a disjoint trivial arc appended as component 4:
/// algebraically split but not Brunnian.
pub fn borromean_plus_arc() -> Diagram {
    let tb = borromean_tb();
    let mut rows: Vec<Row> = tb
        .rows
        .into_iter()
        .map(|mut row| {
            row.cells.push(Cell::Vertical);
            row.cells.push(Cell::Vertical);
            row
        })
        .collect();
    rows.push(Row {
        cells: vec![Cell::Cap],
    });
    Diagram {
        name: "borromean_plus_arc".to_string(),
        components: 4,
        rows,
    }
}

/// Look up a built-in diagram by name; `trivial(n)` is parametric.
///
/// # Returns
/// `None` if the name is not recognized.
pub fn builtin(name: &str) -> Option<Diagram> {
    if let Some(rest) = name.strip_prefix("trivial(") {
        let n: usize = rest.strip_suffix(')')?.parse().ok()?;
        if n == 0 {
            return None;
        }
        return Some(trivial(n));
    }
    match name {
        "clasp_B" => Some(clasp_b()),
        "borromean_TB" => Some(borromean_tb()),
        "borromean_P" => Some(borromean_p()),
        "borromean_plus_arc" => Some(borromean_plus_arc()),
        _ => None,
    }
}

/// Names of all built-in diagrams (with a representative trivial tangle).
pub fn builtin_names() -> Vec<&'static str> {
    vec![
        "trivial(1)",
        "clasp_B",
        "borromean_TB",
        "borromean_P",
        "borromean_plus_arc",
    ]
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse;
    use super::*;

    #[test]
    fn all_builtins_traverse_and_round_trip() {
        for name in builtin_names() {
            let d = builtin(name).expect("known");
            d.traverse().unwrap_or_else(|e| panic!("{name}: {e}"));
            let again = parse(&d.to_string()).expect("serialized form parses");
            assert_eq!(d, again, "{name} round trip");
        }
    }

    #[test]
    fn trivial_tangles_have_no_crossings() {
        for n in 1..=4 {
            let d = trivial(n);
            let t = d.traverse().expect("valid");
            assert!(t.crossings.is_empty());
            assert_eq!(d.linking_matrix().expect("valid"), vec![vec![0; n]; n]);
            for steps in &t.steps {
                assert_eq!(steps.len(), 1, "one cap turn per component");
            }
        }
    }

    #[test]
    fn clasp_linking_matrix() {
        let d = clasp_b();
        let t = d.traverse().expect("valid");
        assert_eq!(t.crossings.len(), 2);
        for x in &t.crossings {
            assert_eq!(x.sign(), -1, "both clasp crossings are mixed-direction");
        }
        assert_eq!(
            d.linking_matrix().expect("valid"),
            vec![vec![0, -1], vec![-1, 0]]
        );
    }

    #[test]
    fn borromean_tb_structure() {
        let d = borromean_tb();
        let t = d.traverse().expect("valid");
        assert_eq!(t.crossings.len(), 6);
        assert_eq!(d.linking_matrix().expect("valid"), vec![vec![0; 3]; 3]);
        // Each pair of components shares exactly two crossings and every
        // crossing is traversed in mixed directions.
        let mut pair_counts = std::collections::BTreeMap::new();
        for x in &t.crossings {
            let a = x.party[0].expect("filled");
            let b = x.party[1].expect("filled");
            assert_ne!(a.walking_down, b.walking_down);
            let mut key = [a.component, b.component];
            key.sort();
            *pair_counts.entry(key).or_insert(0) += 1;
        }
        let expected: std::collections::BTreeMap<[usize; 2], i32> =
            [([0, 1], 2), ([0, 2], 2), ([1, 2], 2)].into_iter().collect();
        assert_eq!(pair_counts, expected);
        // Not in Brunnian form with respect to any single component.
        for i in 1..=3 {
            assert!(!d.brunnian_form(i).expect("valid"));
        }
    }

    #[test]
    fn borromean_p_structure() {
        let d = borromean_p();
        let t = d.traverse().expect("valid");
        assert_eq!(t.crossings.len(), 10);
        assert_eq!(d.linking_matrix().expect("valid"), vec![vec![0; 3]; 3]);
        assert!(d.brunnian_form(1).expect("valid"));
        // Components 2 and 3 never cross each other or themselves.
        for x in &t.crossings {
            let a = x.party[0].expect("filled").component;
            let b = x.party[1].expect("filled").component;
            assert!(a == 0 || b == 0, "every crossing involves component 1");
            assert_ne!((a, b), (0, 0), "component 1 has no self-crossings");
        }
    }

    #[test]
    fn borromean_plus_arc_structure() {
        let d = borromean_plus_arc();
        let t = d.traverse().expect("valid");
        assert_eq!(t.crossings.len(), 6);
        assert_eq!(d.linking_matrix().expect("valid"), vec![vec![0; 4]; 4]);
        assert!(!d.brunnian_form(4).expect("valid"));
        // The fourth component is a bare arc: a single cap turn.
        assert_eq!(t.steps[3].len(), 1);
    }

    #[test]
    fn builtin_lookup() {
        assert!(builtin("trivial(3)").is_some());
        assert!(builtin("trivial(0)").is_none());
        assert!(builtin("unknown").is_none());
    }
}
