//! Per-state integral-form verification for Brunnian-form diagrams.
//!
//! For a diagram in Brunnian form with respect to component `i` (every
//! crossing involves that component and the remaining components never
//! cross each other), each state term admits an expression with strand
//! `i` in the even-Cartan integral form, certified by an explicit
//! `Fdiv K^2j [H; s] Ediv` witness, and every other strand in the
//! rescaled-generator even integral form.  Per-strand scalars are not
//! canonical, so the verifier distributes them the way that expression
//! requires: at a crossing of index `n` whose divided-power half lands
//! on a strand other than `i`, that strand absorbs a factor `{n}_q!`,
//! turning `Fdiv(n)` into the rescaled power `f^n` up to a unit, and
//! strand `i` absorbs the inverse, turning its `e^n` half into the
//! divided power `Ediv(n)`.  The checks are sufficient conditions: a
//! failing strand is reported as "not verified", never as a disproof.

use rayon::prelude::*;

use crate::scalars::{q_brace_factorial, RationalScalar};
use crate::tangle::Diagram;
use crate::uqalg::{
    membership_report, push_d_left, uzq_auto_certificate, IntegralForm,
};

use super::labels::{labeled_state, state_space, StateSumError};
use super::memo::OrderCache;

/// Outcome for one strand of one state.
#[derive(Debug, Clone)]
pub struct StrandVerdict {
    /// The state, one index per crossing.
    pub state: Vec<u32>,
    /// 1-based strand number.
    pub strand: usize,
    /// Human-readable description of the obstruction.
    pub reason: String,
}

/// Result of verifying every state of a diagram.
#[derive(Debug, Clone)]
pub struct BrunnianReport {
    /// 1-based index of the special component.
    pub special: usize,
    /// Whether the diagram is syntactically in Brunnian form with respect
    /// to the special component.
    pub brunnian_form: bool,
    /// Exclusive upper bound used for every crossing index.
    pub cutoff: u32,
    /// Number of states checked.
    pub states_checked: usize,
    /// Total number of certificate monomials accumulated over all
    /// verified special strands.
    pub witness_terms: usize,
    /// Strands that could not be verified, if any.
    pub failures: Vec<StrandVerdict>,
}

impl BrunnianReport {
    /// True iff every strand of every state was verified.
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify integral-form membership of every state term.
///
/// # Arguments
/// * `d` - the diagram.
/// * `special` - 1-based component index whose strands are certified in
///   the even-Cartan integral form.
/// * `cutoff` - exclusive upper bound for every crossing index.
///
/// # Returns
/// A report listing any strands that could not be verified.
pub fn verify_brunnian_membership(
    d: &Diagram,
    special: usize,
    cutoff: u32,
) -> Result<BrunnianReport, StateSumError> {
    if special == 0 || special > d.components {
        return Err(StateSumError::SpecialComponent {
            components: d.components,
            got: special,
        });
    }
    let t = d.traverse()?;
    let brunnian_form = d.brunnian_form(special)?;
    let ranges = vec![cutoff; t.crossings.len()];
    let states = state_space(&ranges);
    let memo = OrderCache::new();
    let results: Vec<(usize, Vec<StrandVerdict>)> = states
        .par_iter()
        .map(|state| {
            let labels = labeled_state(&t, d.components, state);
            let pushed = push_d_left(&labels.strands);
            let strands: Vec<_> = pushed.words.iter().map(|w| memo.ordered(w)).collect();
            // Move a factor {n}_q! onto every strand other than the
            // special one that received the divided-power half of a
            // crossing, and its inverse onto the special strand.
            let mut rescale = vec![RationalScalar::one(); d.components];
            for (ci, c) in t.crossings.iter().enumerate() {
                let n = state[ci];
                if n == 0 {
                    continue;
                }
                let under = 1 - c.over_party();
                let comp = c.party[under].expect("traversed").component;
                if comp + 1 != special {
                    let f = RationalScalar::from_laurent(q_brace_factorial(n));
                    rescale[comp] = rescale[comp].mul(&f);
                    rescale[special - 1] = rescale[special - 1].div(&f);
                }
            }
            let mut witness_terms = 0usize;
            let mut failures = Vec::new();
            for (idx, x) in strands.iter().enumerate() {
                // The global prefactor is a unit and does not affect
                // integrality, but fold it in anyway for faithfulness.
                let x = x.elem.scale(&rescale[idx]);
                let x = if idx == 0 { x.scale(&labels.scalar) } else { x };
                if idx + 1 == special {
                    match uzq_auto_certificate(&x) {
                        Ok(w) => witness_terms += w.terms.len(),
                        Err(e) => failures.push(StrandVerdict {
                            state: state.clone(),
                            strand: idx + 1,
                            reason: format!("even-Cartan certificate not found: {e}"),
                        }),
                    }
                } else {
                    match membership_report(&x, IntegralForm::UbarQEv) {
                        Ok(()) => {}
                        Err(f) => failures.push(StrandVerdict {
                            state: state.clone(),
                            strand: idx + 1,
                            reason: format!(
                                "membership in the even rescaled integral form not verified at {:?}: {}",
                                f.key, f.reason
                            ),
                        }),
                    }
                }
            }
            (witness_terms, failures)
        })
        .collect();
    let witness_terms = results.iter().map(|(w, _)| w).sum();
    let failures = results.into_iter().flat_map(|(_, f)| f).collect();
    Ok(BrunnianReport {
        special,
        brunnian_form,
        cutoff,
        states_checked: states.len(),
        witness_terms,
        failures,
    })
}
