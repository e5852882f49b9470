//! The representation ring and the special colors `P_l`, `P~'_l`, `P''_l`.
//!
//! A [`Color`] is a formal linear combination of the irreducibles `V_m`
//! (`m >= 1`) with coefficients in the fraction field of Z[u, u^-1].
//! Products follow the Clebsch-Gordan rule
//!
//! ```text
//! V_2 V_m = V_(m+1) + V_(m-1),    V_0 = 0,
//! ```
//!
//! extended recursively: `V_m y = V_2 (V_(m-1) y) - V_(m-2) y`.
//!
//! The special colors are
//!
//! ```text
//! P_l    = prod_{i=0}^{l-1} (V_2 - (q^(i+1/2) + q^(-i-1/2)) V_1)
//! P~'_l  = q^(l/2) / {l}_q! * P_l
//! P''_l  = q^(l(l+1)) {1}_q / {2l+1}_(q,l+1) * P~'_l
//! ```

use crate::scalars::{q_brace, q_brace_factorial, q_brace_falling, LaurentScalar, RationalScalar};
use std::collections::BTreeMap;
use std::fmt;

/// A formal linear combination of irreducible colors `V_m`.
///
/// Invariant: no stored coefficient is zero; keys are dimensions `m >= 1`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Color {
    terms: BTreeMap<u32, RationalScalar>,
}

impl Color {
    /// The zero color.
    pub fn zero() -> Self {
        Color {
            terms: BTreeMap::new(),
        }
    }

    /// The irreducible color `V_m`.
    ///
    /// # Panics
    /// Panics if `m == 0`.
    pub fn irreducible(m: u32) -> Self {
        assert!(m >= 1, "irreducible colors start at V_1");
        let mut terms = BTreeMap::new();
        terms.insert(m, RationalScalar::one());
        Color { terms }
    }

    /// Iterator over `(dimension, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&u32, &RationalScalar)> {
        self.terms.iter()
    }

    /// True iff zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest dimension in the support (0 for the zero color).
    pub fn max_dimension(&self) -> u32 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    fn insert(terms: &mut BTreeMap<u32, RationalScalar>, m: u32, c: &RationalScalar) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert(&mut terms, *m, c);
        }
        Color { terms }
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RationalScalar::from_int(-1)))
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &RationalScalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Color {
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul(s))).collect(),
        }
    }

    /// Ring product via the Clebsch-Gordan recursion.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out = out.add(&basis_product(*m1, *m2).scale(&c1.mul(c2)));
            }
        }
        out
    }

    /// Integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::irreducible(1);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Product of two irreducibles as a color.
fn basis_product(m1: u32, m2: u32) -> Color {
    // V_1 is the unit; V_2 V_m = V_(m+1) + V_(m-1) with V_0 = 0;
    // V_m = V_2 V_(m-1) - V_(m-2) recursively.
    if m1 == 1 {
        return Color::irreducible(m2);
    }
    if m2 == 1 {
        return Color::irreducible(m1);
    }
    if m1 == 2 {
        let mut out = Color::irreducible(m2 + 1);
        if m2 >= 2 {
            out = out.add(&Color::irreducible(m2 - 1));
        }
        return out;
    }
    // V_m1 V_m2 = V_2 (V_(m1-1) V_m2) - V_(m1-2) V_m2.
    let a = basis_product(2, 1)
        .mul(&basis_product(m1 - 1, m2));
    let b = basis_product(m1 - 2, m2);
    a.sub(&b)
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) V_{m}")?;
        }
        Ok(())
    }
}

/// The color `P_l = prod_{i=0}^{l-1} (V_2 - (q^(i+1/2) + q^(-i-1/2)) V_1)`.
pub fn color_p(l: u32) -> Color {
    let mut acc = Color::irreducible(1);
    for i in 0..l as i64 {
        let coeff = RationalScalar::from_laurent(
            &LaurentScalar::v_pow(2 * i + 1) + &LaurentScalar::v_pow(-2 * i - 1),
        );
        let factor = Color::irreducible(2).sub(&Color::irreducible(1).scale(&coeff));
        acc = acc.mul(&factor);
    }
    acc
}

/// The rescaled color `P~'_l = q^(l/2) / {l}_q! * P_l`.
pub fn color_ptilde(l: u32) -> Color {
    color_p(l).scale(&RationalScalar::new(
        LaurentScalar::v_pow(l as i64),
        q_brace_factorial(l),
    ))
}

/// The idempotent-like color
/// `P''_l = q^(l(l+1)) {1}_q / {2l+1}_(q,l+1) * P~'_l`.
pub fn color_pdoubleprime(l: u32) -> Color {
    let li = l as i64;
    color_ptilde(l).scale(&RationalScalar::new(
        LaurentScalar::q_pow(li * (li + 1)).mul(&q_brace(1)),
        q_brace_falling(2 * li + 1, l + 1),
    ))
}
