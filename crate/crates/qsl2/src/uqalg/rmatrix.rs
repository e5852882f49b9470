//! Quasitriangular R-matrix expansion into labeled half-words.
//!
//! The universal R-matrix and its inverse factor through the Cartan part
//! `D = q^(H (x) H / 4)` as
//!
//! ```text
//! R     = D * sum_n  q^(n(n-1)/2) Fdiv(n) K^-n  (x)  e^n
//! R^-1  = D^-1 * sum_n  (-1)^n Fdiv(n)          (x)  K^-n e^n
//! ```
//!
//! [`rmatrix_term`] returns the `n`-th summand as a pair of
//! [`HalfLabel`]s, each carrying one leg of the `D^(+-1)` pair in front of
//! its atoms.  Applying the antipode to one tensor factor reverses that
//! factor's atoms, transforms them letter by letter, moves the leg behind
//! the atoms, and flips the sign of the `D` exponent:
//! `(S (x) 1)(D^eps) = D^-eps`.

use super::atoms::{word_antipode, Atom};
use super::dledger::StrandItem;
use crate::scalars::RationalScalar;

/// Half of one R-matrix summand: a scalar, an atom word, and the position
/// of this half's `D`-leg relative to the atoms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfLabel {
    /// Scalar prefactor.
    pub scalar: RationalScalar,
    /// Atom word.
    pub atoms: Vec<Atom>,
    /// True iff the `D`-leg precedes the atoms (plain labels); the antipode
    /// moves it behind them.
    pub leg_first: bool,
}

impl HalfLabel {
    /// Apply the antipode once: reverse and transform the atoms, flip the
    /// leg to the other side, accumulate the scalar.  The caller is
    /// responsible for flipping the `D` exponent of the pair.
    pub fn antipode(&self) -> Self {
        let (s, atoms) = word_antipode(&self.atoms);
        HalfLabel {
            scalar: self.scalar.mul(&s),
            atoms,
            leg_first: !self.leg_first,
        }
    }

    /// Apply the antipode `k` times.
    pub fn antipode_power(&self, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.antipode();
        }
        out
    }

    /// Emit the half as strand items carrying leg `(pair, end)`.
    pub fn items(&self, pair: usize, end: u8) -> Vec<StrandItem> {
        let mut out = Vec::with_capacity(self.atoms.len() + 1);
        if self.leg_first {
            out.push(StrandItem::Leg { pair, end });
        }
        out.extend(self.atoms.iter().map(|a| StrandItem::Atom(*a)));
        if !self.leg_first {
            out.push(StrandItem::Leg { pair, end });
        }
        out
    }
}

/// One summand of `R` (`sign = +1`) or `R^-1` (`sign = -1`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RTerm {
    /// Exponent of the Cartan pair `D^eps` for this summand.
    pub eps: i64,
    /// First tensor factor (placed on the under-strand).
    pub alpha: HalfLabel,
    /// Second tensor factor (placed on the over-strand).
    pub beta: HalfLabel,
}

/// The `n`-th summand of the R-matrix (`sign = +1`) or its inverse
/// (`sign = -1`).
///
/// # Panics
/// Panics if `sign` is not `+1` or `-1`.
pub fn rmatrix_term(n: u32, sign: i64) -> RTerm {
    let ni = n as i64;
    match sign {
        1 => RTerm {
            eps: 1,
            alpha: HalfLabel {
                scalar: RationalScalar::q_pow(ni * (ni - 1) / 2),
                atoms: if n == 0 {
                    vec![]
                } else {
                    vec![Atom::Fdiv(n), Atom::K(-ni)]
                },
                leg_first: true,
            },
            beta: HalfLabel {
                scalar: RationalScalar::one(),
                atoms: std::iter::repeat(Atom::SmallE).take(n as usize).collect(),
                leg_first: true,
            },
        },
        -1 => RTerm {
            eps: -1,
            alpha: HalfLabel {
                scalar: RationalScalar::from_int(if n % 2 == 0 { 1 } else { -1 }),
                atoms: if n == 0 { vec![] } else { vec![Atom::Fdiv(n)] },
                leg_first: true,
            },
            beta: HalfLabel {
                scalar: RationalScalar::one(),
                atoms: if n == 0 {
                    vec![]
                } else {
                    let mut w = vec![Atom::K(-ni)];
                    w.extend(std::iter::repeat(Atom::SmallE).take(n as usize));
                    w
                },
                leg_first: true,
            },
        },
        _ => panic!("sign must be +1 or -1, got {sign}"),
    }
}
