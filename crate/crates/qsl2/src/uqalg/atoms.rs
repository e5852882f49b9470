//! Generator atoms for words in the quantized enveloping algebra.
//!
//! An [`Atom`] is a single letter of a label word: one of the Chevalley-style
//! generators `E`, `F`, a Cartan power `K^j`, the rescaled generators
//!
//! ```text
//! e = (v - v^-1) E          f = (q - 1) F K          (v = q^(1/2))
//! ```
//!
//! or a divided power
//!
//! ```text
//! Ediv(n) = (q^(-1/2) E)^n / [n]_q!       Fdiv(n) = F^n K^n / [n]_q!
//! ```
//!
//! Words of atoms are normally ordered by the engine in
//! [`crate::uqalg::elem`]; the antipode acts atom-by-atom via
//! [`atom_antipode`].

use crate::scalars::{q_int_factorial, LaurentScalar, RationalScalar};
use std::fmt;

/// A single letter of an algebra word.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Atom {
    /// The raising generator `E`.
    E,
    /// The lowering generator `F`.
    F,
    /// A Cartan power `K^j` (any integer `j`).
    K(i64),
    /// The rescaled raising generator `e = (v - v^-1) E`.
    SmallE,
    /// The rescaled lowering generator `f = (q - 1) F K`.
    SmallF,
    /// The divided power `Ediv(n) = (q^(-1/2) E)^n / [n]_q!`.
    Ediv(u32),
    /// The divided power `Fdiv(n) = F^n K^n / [n]_q!`.
    Fdiv(u32),
}

impl Atom {
    /// Weight-space degree of the atom: `|E| = |e| = 1`, `|F| = |f| = -1`,
    /// `|Ediv(n)| = n`, `|Fdiv(n)| = -n`, `|K^j| = 0`.
    pub fn degree(&self) -> i64 {
        match self {
            Atom::E | Atom::SmallE => 1,
            Atom::F | Atom::SmallF => -1,
            Atom::K(_) => 0,
            Atom::Ediv(n) => *n as i64,
            Atom::Fdiv(n) => -(*n as i64),
        }
    }

    /// Expansion of the atom in the raw monomial basis `F^a K^b E^c`:
    /// returns the single raw key together with its coefficient.
    pub fn raw_expansion(&self) -> ((u32, i64, u32), RationalScalar) {
        match self {
            Atom::E => ((0, 0, 1), RationalScalar::one()),
            Atom::F => ((1, 0, 0), RationalScalar::one()),
            Atom::K(j) => ((0, *j, 0), RationalScalar::one()),
            // e = (v - v^-1) E
            Atom::SmallE => (
                (0, 0, 1),
                RationalScalar::from_laurent(
                    &LaurentScalar::u_pow(2) - &LaurentScalar::u_pow(-2),
                ),
            ),
            // f = (q - 1) F K
            Atom::SmallF => (
                (1, 1, 0),
                RationalScalar::from_laurent(
                    &LaurentScalar::q_pow(1) - &LaurentScalar::one(),
                ),
            ),
            // Ediv(n) = q^(-n/2) E^n / [n]_q!
            Atom::Ediv(n) => (
                (0, 0, *n),
                RationalScalar::new(
                    LaurentScalar::u_pow(-2 * *n as i64),
                    q_int_factorial(*n),
                ),
            ),
            // Fdiv(n) = F^n K^n / [n]_q!
            Atom::Fdiv(n) => (
                (*n, *n as i64, 0),
                RationalScalar::new(LaurentScalar::one(), q_int_factorial(*n)),
            ),
        }
    }

    /// Antipode acting on a single atom, written again as a scalar multiple
    /// of an atom word:
    ///
    /// ```text
    /// S(E) = -K^-1 E            S(F) = -F K
    /// S(K^j) = K^-j
    /// S(e) = -K^-1 e            S(f) = -q f K^-1
    /// S(Ediv(n)) = (-1)^n q^(n(n-1)/2) K^-n Ediv(n)
    /// S(Fdiv(n)) = (-1)^n q^(n(n+1)/2) Fdiv(n) K^-n
    /// ```
    pub fn antipode(&self) -> (RationalScalar, Vec<Atom>) {
        let sign = |n: u32| {
            if n % 2 == 0 {
                RationalScalar::one()
            } else {
                RationalScalar::from_int(-1)
            }
        };
        match self {
            Atom::E => (RationalScalar::from_int(-1), vec![Atom::K(-1), Atom::E]),
            Atom::F => (RationalScalar::from_int(-1), vec![Atom::F, Atom::K(1)]),
            Atom::K(j) => (RationalScalar::one(), vec![Atom::K(-j)]),
            Atom::SmallE => (
                RationalScalar::from_int(-1),
                vec![Atom::K(-1), Atom::SmallE],
            ),
            Atom::SmallF => (
                RationalScalar::q_pow(1).neg(),
                vec![Atom::SmallF, Atom::K(-1)],
            ),
            Atom::Ediv(n) => (
                sign(*n).mul(&RationalScalar::q_pow((*n as i64) * (*n as i64 - 1) / 2)),
                vec![Atom::K(-(*n as i64)), Atom::Ediv(*n)],
            ),
            Atom::Fdiv(n) => (
                sign(*n).mul(&RationalScalar::q_pow((*n as i64) * (*n as i64 + 1) / 2)),
                vec![Atom::Fdiv(*n), Atom::K(-(*n as i64))],
            ),
        }
    }
}

/// Antipode of an atom word: reverses the word and applies the atom-level
/// antipode letter by letter, returning the accumulated scalar and the new
/// word.
pub fn word_antipode(word: &[Atom]) -> (RationalScalar, Vec<Atom>) {
    let mut scalar = RationalScalar::one();
    let mut out = Vec::with_capacity(word.len() + 2);
    for atom in word.iter().rev() {
        let (s, atoms) = atom.antipode();
        scalar = scalar.mul(&s);
        out.extend(atoms);
    }
    (scalar, out)
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::E => write!(f, "E"),
            Atom::F => write!(f, "F"),
            Atom::K(1) => write!(f, "K"),
            Atom::K(j) => write!(f, "K^{j}"),
            Atom::SmallE => write!(f, "e"),
            Atom::SmallF => write!(f, "f"),
            Atom::Ediv(n) => write!(f, "E~({n})"),
            Atom::Fdiv(n) => write!(f, "F~({n})"),
        }
    }
}
