//! Label assignment for the state sum.
//!
//! Fix a diagram and a state (one non-negative integer per crossing).  Each
//! crossing contributes a two-strand label pair drawn from the R-matrix
//! series: the under-strand receives the alpha half, the over-strand the
//! beta half, indexed by the state value, with the series sign given by
//! the crossing cell.  A half whose strand is walked downward at the cell
//! (the walk runs against the orientation) is replaced by its antipode
//! image, which also flips the sign of the associated diagonal pair.
//! Leftward-walked turns carry a Cartan label: `K^{-1}` on caps and `K`
//! on cups; rightward turns are label-free.
//!
//! The result of [`labeled_state`] is a scalar prefactor together with
//! positional strand words ready for [`crate::uqalg::push_d_left`].

use crate::scalars::RationalScalar;
use crate::tangle::{Diagram, TangleError, Traversal, WalkStep};
use crate::uqalg::{rmatrix_term, Atom, DPair, LabeledStrands, StrandItem};

/// Cartan exponent on a leftward-walked cap; cups carry the negative.
pub const CAP_EXPONENT: i64 = -1;

/// Errors for state-sum evaluation.
#[derive(Debug, thiserror::Error)]
pub enum StateSumError {
    /// The underlying diagram is invalid.
    #[error(transparent)]
    Tangle(#[from] TangleError),
    /// The state vector length does not match the crossing count.
    #[error("state has {got} entries but the diagram has {expected} crossings")]
    StateLength {
        /// Number of crossings.
        expected: usize,
        /// Entries supplied.
        got: usize,
    },
    /// An operation requiring a trivial diagonal part met a diagram with
    /// nonzero linking numbers or framing.
    #[error("diagram has a nonzero linking matrix; quantum traces require all linking numbers and framings to vanish")]
    NonzeroLinking,
    /// The number of colors does not match the component count.
    #[error("{got} colors supplied for {expected} components")]
    ColorCount {
        /// Component count.
        expected: usize,
        /// Colors supplied.
        got: usize,
    },
    /// A 1-based special component index outside the component range.
    #[error("special component {got} out of range 1..={components}")]
    SpecialComponent {
        /// Component count.
        components: usize,
        /// Index supplied.
        got: usize,
    },
}

/// The labeled strands for one state, before gathering diagonal pairs.
pub struct StateLabels {
    /// Product of all scalar prefactors from the R-matrix halves.
    pub scalar: RationalScalar,
    /// Positional strand words with embedded diagonal legs.
    pub strands: LabeledStrands,
}

/// Assign labels for `state` on a traversed diagram.
///
/// # Arguments
/// * `t` - traversal of the diagram.
/// * `components` - number of components.
/// * `state` - one index per crossing, in traversal discovery order.
///
/// # Panics
/// Panics if `state.len()` differs from the crossing count; callers
/// validate first.
pub fn labeled_state(t: &Traversal, components: usize, state: &[u32]) -> StateLabels {
    assert_eq!(state.len(), t.crossings.len(), "state length");
    // Count antipode applications per crossing to fix pair signs.
    let mut flips = vec![0u32; t.crossings.len()];
    let mut scalar = RationalScalar::one();
    let mut strands: Vec<Vec<StrandItem>> = Vec::with_capacity(components);
    for steps in &t.steps {
        let mut items: Vec<StrandItem> = Vec::new();
        for step in steps {
            match *step {
                WalkStep::Cross { crossing, party } => {
                    let c = &t.crossings[crossing];
                    let sign = if c.positive { 1 } else { -1 };
                    let over = usize::from(party) == c.over_party();
                    let term = rmatrix_term(state[crossing], sign);
                    let mut half = if over { term.beta } else { term.alpha };
                    let pass = c.party[party as usize].expect("traversed");
                    if pass.walking_down {
                        half = half.antipode();
                        flips[crossing] += 1;
                    }
                    scalar = scalar.mul(&half.scalar);
                    let end = if over { 1 } else { 0 };
                    items.extend(half.items(crossing, end));
                }
                WalkStep::Turn { cap, walk_leftward } => {
                    if walk_leftward {
                        let e = if cap { CAP_EXPONENT } else { -CAP_EXPONENT };
                        items.push(StrandItem::Atom(Atom::K(e)));
                    }
                }
            }
        }
        strands.push(items);
    }
    let pairs: Vec<DPair> = t
        .crossings
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let sign = if c.positive { 1 } else { -1 };
            let eps = if flips[i] % 2 == 0 { sign } else { -sign };
            DPair { eps }
        })
        .collect();
    StateLabels {
        scalar,
        strands: LabeledStrands { strands, pairs },
    }
}

/// Per-crossing exclusive upper bounds for state indices when every
/// component `i` is colored by representations of dimension at most
/// `dims[i]`: index `n` contributes zero once `n >= min` of the two
/// participating dimensions, because `F^n` and `e^n` act as zero.
pub fn truncation_ranges(t: &Traversal, dims: &[u32]) -> Vec<u32> {
    t.crossings
        .iter()
        .map(|c| {
            let a = c.party[0].expect("traversed").component;
            let b = c.party[1].expect("traversed").component;
            dims[a].min(dims[b])
        })
        .collect()
}

/// Iterate over all states with `state[c] < ranges[c]`, in lexicographic
/// order with the last crossing varying fastest.
pub fn state_space(ranges: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total: usize = ranges.iter().map(|&r| r as usize).product();
    if ranges.iter().any(|&r| r == 0) {
        return out;
    }
    out.reserve(total);
    let mut cur = vec![0u32; ranges.len()];
    loop {
        out.push(cur.clone());
        let mut k = ranges.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < ranges[k] {
                break;
            }
            cur[k] = 0;
        }
    }
}

/// Validate that a state vector matches the diagram's crossing count.
pub fn check_state(d: &Diagram, t: &Traversal, state: &[u32]) -> Result<(), StateSumError> {
    let _ = d;
    if state.len() != t.crossings.len() {
        return Err(StateSumError::StateLength {
            expected: t.crossings.len(),
            got: state.len(),
        });
    }
    Ok(())
}
