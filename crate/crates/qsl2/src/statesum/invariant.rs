//! The universal invariant as a truncated state sum.
//!
//! Each state contributes a pure tensor: one normal-ordered algebra
//! element per component, obtained by assigning R-matrix labels, pushing
//! the diagonal Cartan pairs off to a global ledger, and normal-ordering
//! what remains.  The ledger is a state-independent record of linking
//! numbers and framings; the sum of the pure tensors over all states with
//! indices below a cutoff is the truncated universal invariant.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::scalars::RationalScalar;
use crate::tangle::Diagram;
use crate::uqalg::{push_d_left, AlgebraElement, DLedger};

use super::labels::{check_state, labeled_state, state_space, StateSumError};
use super::memo::OrderCache;

/// The contribution of a single state: a ledger plus a pure tensor.
///
/// The overall scalar prefactor is folded into the first tensor factor.
#[derive(Debug, Clone)]
pub struct StateTerm {
    /// Symmetric matrix of diagonal-pair multiplicities: off-diagonal
    /// entries are twice the linking numbers, diagonal entries the
    /// framings.
    pub ledger: DLedger,
    /// One normal-ordered element per component.
    pub strands: Vec<AlgebraElement>,
}

/// Evaluate the contribution of one state.
///
/// # Arguments
/// * `d` - the diagram.
/// * `state` - one index per crossing, in traversal discovery order.
///
/// # Returns
/// The ledger and per-component tensor factors, or an error if the
/// diagram is invalid or the state has the wrong length.
pub fn state_term(d: &Diagram, state: &[u32]) -> Result<StateTerm, StateSumError> {
    let t = d.traverse()?;
    check_state(d, &t, state)?;
    let labels = labeled_state(&t, d.components, state);
    let pushed = push_d_left(&labels.strands);
    let mut strands = pushed.normal_ordered();
    if let Some(first) = strands.first_mut() {
        *first = first.scale(&labels.scalar);
    }
    Ok(StateTerm {
        ledger: pushed.ledger,
        strands,
    })
}

/// A finite linear combination of pure tensors of PBW monomials.
///
/// Keys are tuples of PBW exponents `(a, b, c)` for `F^{(a)} K^b E^{(c)}`,
/// one per tensor factor; values are the coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    /// Number of tensor factors.
    pub factors: usize,
    /// Coefficient map.
    pub terms: BTreeMap<Vec<(u32, i64, u32)>, RationalScalar>,
}

impl TensorElement {
    /// The zero element with the given number of factors.
    pub fn zero(factors: usize) -> Self {
        TensorElement {
            factors,
            terms: BTreeMap::new(),
        }
    }

    /// Add the expansion of a pure tensor of algebra elements.
    pub fn add_pure(&mut self, strands: &[AlgebraElement]) {
        assert_eq!(strands.len(), self.factors, "tensor width");
        let mut keys: Vec<(Vec<(u32, i64, u32)>, RationalScalar)> =
            vec![(Vec::new(), RationalScalar::one())];
        for s in strands {
            let mut next = Vec::with_capacity(keys.len() * s.num_terms());
            for (prefix, coeff) in &keys {
                for (mono, c) in s.terms() {
                    let mut key = prefix.clone();
                    key.push(*mono);
                    next.push((key, coeff.mul(c)));
                }
            }
            keys = next;
        }
        for (key, coeff) in keys {
            let entry = self
                .terms
                .entry(key)
                .or_insert_with(RationalScalar::zero);
            *entry = entry.add(&coeff);
        }
        self.terms.retain(|_, v| !v.is_zero());
    }

    /// Merge another element into this one.
    pub fn merge(&mut self, other: TensorElement) {
        assert_eq!(self.factors, other.factors, "tensor width");
        for (key, coeff) in other.terms {
            let entry = self
                .terms
                .entry(key)
                .or_insert_with(RationalScalar::zero);
            *entry = entry.add(&coeff);
        }
        self.terms.retain(|_, v| !v.is_zero());
    }
}

/// The truncated universal invariant of a diagram.
#[derive(Debug, Clone)]
pub struct UniversalInvariant {
    /// The state-independent ledger of diagonal pairs.
    pub ledger: DLedger,
    /// Truncation: state indices run over `0..cutoff` at every crossing.
    pub cutoff: u32,
    /// Sum of all pure-tensor state contributions.
    pub tensor: TensorElement,
}

/// Sum the state contributions with every index below `cutoff`.
///
/// # Arguments
/// * `d` - the diagram.
/// * `cutoff` - exclusive upper bound for every crossing index.
///
/// # Returns
/// The truncated universal invariant; the ledger is checked to be
/// identical across states.
pub fn universal_invariant(d: &Diagram, cutoff: u32) -> Result<UniversalInvariant, StateSumError> {
    let t = d.traverse()?;
    let ranges = vec![cutoff; t.crossings.len()];
    let states = state_space(&ranges);
    let memo = OrderCache::new();
    let terms: Vec<StateTerm> = states
        .par_iter()
        .map(|s| {
            let labels = labeled_state(&t, d.components, s);
            let pushed = push_d_left(&labels.strands);
            let mut strands: Vec<AlgebraElement> = pushed
                .words
                .iter()
                .map(|w| (*memo.ordered(w).elem).clone())
                .collect();
            if let Some(first) = strands.first_mut() {
                *first = first.scale(&labels.scalar);
            }
            StateTerm {
                ledger: pushed.ledger,
                strands,
            }
        })
        .collect();
    let ledger = terms
        .first()
        .map(|s| s.ledger.clone())
        .unwrap_or_else(|| DLedger::trivial(d.components));
    for s in &terms {
        assert_eq!(s.ledger, ledger, "ledger must be state independent");
    }
    let tensor = terms
        .par_iter()
        .fold(
            || TensorElement::zero(d.components),
            |mut acc, s| {
                acc.add_pure(&s.strands);
                acc
            },
        )
        .reduce(
            || TensorElement::zero(d.components),
            |mut a, b| {
                a.merge(b);
                a
            },
        );
    Ok(UniversalInvariant {
        ledger,
        cutoff,
        tensor,
    })
}
