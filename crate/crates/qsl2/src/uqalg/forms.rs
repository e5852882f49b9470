//! Integral-form membership tests and divided-power certificates.
//!
//! Four integral forms are supported, distinguished by which rescaled basis
//! must have coefficients in Z[q, q^-1] when an element is rewritten:
//!
//! ```text
//! Ubar_q      : basis f^a K^b e^c
//! Ubar_q_ev   : basis f^a K^b e^c with b even
//! Ucal_q      : basis Fdiv(a) K^b e^c
//! Ucal_q_ev   : basis Fdiv(a) K^b e^c with b even
//! ```
//!
//! The PBW coefficients of `Fdiv(a) K^b Ediv(c)` convert by
//!
//! ```text
//! coeff(f^a K^b e^c)      = coeff_PBW * q^(a(a-1)/2) / ({a}_q! {c}_q!)
//! coeff(Fdiv(a) K^b e^c)  = coeff_PBW / {c}_q!
//! ```
//!
//! A stronger, even-Cartan integral form is certified through witnesses in
//! the basis `Fdiv(i) K^(2j) [H; s] Ediv(k)` where
//!
//! ```text
//! [H; s] = (K^2 - 1)(q^-1 K^2 - 1) ... (q^-(s-1) K^2 - 1) / {s}_q!
//! ```
//!
//! Witnesses are either supplied and checked ([`uzq_certificate`]) or found
//! automatically by Newton-style divided differences in the variable `K^2`
//! ([`uzq_auto_certificate`]).

use super::elem::AlgebraElement;
use crate::scalars::{q_brace_factorial, RationalScalar};

/// The integral form against which membership is tested.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntegralForm {
    /// Z[q, q^-1]-span of `f^a K^b e^c`.
    UbarQ,
    /// Z[q, q^-1]-span of `f^a K^b e^c` with even `b`.
    UbarQEv,
    /// Z[q, q^-1]-span of `Fdiv(a) K^b e^c`.
    UcalQ,
    /// Z[q, q^-1]-span of `Fdiv(a) K^b e^c` with even `b`.
    UcalQEv,
}

impl IntegralForm {
    /// Parse the CLI spelling of a form name.
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "Ubar_q" => Some(IntegralForm::UbarQ),
            "Ubar_q_ev" => Some(IntegralForm::UbarQEv),
            "Ucal_q" => Some(IntegralForm::UcalQ),
            "Ucal_q_ev" => Some(IntegralForm::UcalQEv),
            _ => None,
        }
    }

    fn requires_even_cartan(&self) -> bool {
        matches!(self, IntegralForm::UbarQEv | IntegralForm::UcalQEv)
    }
}

/// A witness that a particular basis coefficient violates membership.
#[derive(Clone, Debug)]
pub struct MembershipFailure {
    /// PBW key `(a, b, c)` of the offending term.
    pub key: (u32, i64, u32),
    /// The converted coefficient in the form's basis, as text.
    pub coefficient: String,
    /// Human-readable reason.
    pub reason: String,
}

/// Test membership of `x` in the given integral form; on failure report the
/// first offending coefficient.
pub fn membership_report(
    x: &AlgebraElement,
    form: IntegralForm,
) -> Result<(), MembershipFailure> {
    for ((a, b, c), coeff) in x.terms() {
        if form.requires_even_cartan() && b.rem_euclid(2) != 0 {
            return Err(MembershipFailure {
                key: (*a, *b, *c),
                coefficient: coeff.to_string(),
                reason: format!("odd Cartan exponent {b}"),
            });
        }
        let converted = match form {
            IntegralForm::UbarQ | IntegralForm::UbarQEv => {
                // coeff * q^(a(a-1)/2) / ({a}_q! {c}_q!)
                let ai = *a as i64;
                coeff
                    .mul(&RationalScalar::q_pow(ai * (ai - 1) / 2))
                    .div(&RationalScalar::from_laurent(
                        q_brace_factorial(*a).mul(&q_brace_factorial(*c)),
                    ))
            }
            IntegralForm::UcalQ | IntegralForm::UcalQEv => {
                coeff.div(&RationalScalar::from_laurent(q_brace_factorial(*c)))
            }
        };
        if !converted.is_q_polynomial() {
            return Err(MembershipFailure {
                key: (*a, *b, *c),
                coefficient: converted.to_string(),
                reason: "coefficient not in Z[q, q^-1]".to_string(),
            });
        }
    }
    Ok(())
}

/// Boolean membership test; see [`membership_report`] for diagnostics.
pub fn membership(x: &AlgebraElement, form: IntegralForm) -> bool {
    membership_report(x, form).is_ok()
}

/// Expansion of `[H; s]` as pairs `(Cartan exponent, coefficient)`.
///
/// `[H; s] = prod_{t=0}^{s-1} (q^-t K^2 - 1) / {s}_q!`; the product is
/// expanded exactly and divided by `{s}_q!`.
pub fn hs_expansion(s: u32) -> Vec<(i64, RationalScalar)> {
    // Polynomial in x = K^2, dense coefficients by degree.
    let mut poly = vec![RationalScalar::one()];
    for t in 0..s as i64 {
        let mut next = vec![RationalScalar::zero(); poly.len() + 1];
        for (d, coeff) in poly.iter().enumerate() {
            // (q^-t x - 1) * coeff x^d
            next[d + 1] = next[d + 1].add(&coeff.mul(&RationalScalar::q_pow(-t)));
            next[d] = next[d].sub(coeff);
        }
        poly = next;
    }
    let fact = RationalScalar::from_laurent(q_brace_factorial(s));
    poly.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(d, c)| (2 * d as i64, c.div(&fact)))
        .collect()
}

/// One monomial of an even-Cartan integral certificate:
/// `coeff * Fdiv(a) K^(2 j) [H; s] Ediv(c)`.
#[derive(Clone, Debug)]
pub struct WitnessTerm {
    /// `Fdiv` exponent.
    pub a: u32,
    /// Half the plain Cartan exponent: the monomial carries `K^(2j)`.
    pub j: i64,
    /// The `[H; s]` index.
    pub s: u32,
    /// `Ediv` exponent.
    pub c: u32,
    /// Coefficient; must lie in Z[q, q^-1] for a valid certificate.
    pub coeff: RationalScalar,
}

/// A full certificate: a sum of witness monomials.
#[derive(Clone, Debug, Default)]
pub struct UzqWitness {
    /// The witness monomials.
    pub terms: Vec<WitnessTerm>,
}

impl UzqWitness {
    /// Expand the witness into the PBW basis.
    pub fn expand(&self) -> AlgebraElement {
        let mut acc = AlgebraElement::zero();
        for t in &self.terms {
            for (kexp, hcoeff) in hs_expansion(t.s) {
                acc = acc.add(&AlgebraElement::pbw_monomial(
                    t.a,
                    2 * t.j + kexp,
                    t.c,
                    t.coeff.mul(&hcoeff),
                ));
            }
        }
        acc
    }

    /// True iff every witness coefficient lies in Z[q, q^-1].
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_q_polynomial())
    }
}

/// Check a supplied certificate: all witness coefficients must lie in
/// Z[q, q^-1] and the expansion must equal `x` exactly.
pub fn uzq_certificate(x: &AlgebraElement, witness: &UzqWitness) -> bool {
    witness.is_integral() && witness.expand() == *x
}

/// Why automatic certification failed.
#[derive(Clone, Debug, thiserror::Error)]
pub enum CertificateError {
    /// The element has a term with odd Cartan exponent, outside the even
    /// subalgebra spanned by the certificate basis.
    #[error("term Fdiv({a}) K^{b} Ediv({c}) has odd Cartan exponent")]
    OddCartanExponent {
        /// `Fdiv` exponent of the offending term.
        a: u32,
        /// The odd Cartan exponent.
        b: i64,
        /// `Ediv` exponent of the offending term.
        c: u32,
    },
    /// The divided-difference coefficient at `(a, c, s)` is not integral,
    /// so the unique certificate in this basis fails integrality.
    #[error("witness coefficient at Fdiv({a}) [H;{s}] Ediv({c}) is {coeff}, not in Z[q, q^-1]")]
    NonIntegralCoefficient {
        /// `Fdiv` exponent.
        a: u32,
        /// `[H; s]` index.
        s: u32,
        /// `Ediv` exponent.
        c: u32,
        /// The offending coefficient, as text.
        coeff: String,
    },
}

/// Automatically certify an element against the even-Cartan integral form.
///
/// For each `(Fdiv, Ediv)`-bidegree the Cartan part is a Laurent polynomial
/// `f` in `x = K^2`; after shifting out `x^J0` (`J0` the minimal power), the
/// Newton divided differences of `f` at the nodes `q^0, q^1, q^2, ...` give
/// the unique expansion `f = x^J0 * sum_s c_s {s}_q! [H; s]`, and the
/// certificate succeeds iff every `c_s {s}_q!` lies in Z[q, q^-1].
///
/// # Returns
/// The witness on success; the first obstruction otherwise.
pub fn uzq_auto_certificate(x: &AlgebraElement) -> Result<UzqWitness, CertificateError> {
    // Group the Cartan polynomial by (a, c) bidegree.
    let mut groups: std::collections::BTreeMap<(u32, u32), Vec<(i64, RationalScalar)>> =
        std::collections::BTreeMap::new();
    for ((a, b, c), coeff) in x.terms() {
        if b.rem_euclid(2) != 0 {
            return Err(CertificateError::OddCartanExponent {
                a: *a,
                b: *b,
                c: *c,
            });
        }
        groups.entry((*a, *c)).or_default().push((b / 2, coeff.clone()));
    }
    let mut witness = UzqWitness::default();
    for ((a, c), powers) in groups {
        let j0 = powers.iter().map(|(j, _)| *j).min().unwrap();
        let deg = powers.iter().map(|(j, _)| *j).max().unwrap() - j0;
        let mut poly = vec![RationalScalar::zero(); deg as usize + 1];
        for (j, coeff) in powers {
            poly[(j - j0) as usize] = coeff;
        }
        // Newton divided differences at nodes q^s against the basis
        // prod_{t<s} (q^-t x - 1).
        let mut s = 0u32;
        while poly.iter().any(|c| !c.is_zero()) {
            let node = RationalScalar::q_pow(s as i64);
            // Evaluate poly at x = q^s by Horner.
            let mut val = RationalScalar::zero();
            for coeff in poly.iter().rev() {
                val = val.mul(&node).add(coeff);
            }
            let wcoeff = val.mul(&RationalScalar::from_laurent(q_brace_factorial(s)));
            if !wcoeff.is_q_polynomial() {
                return Err(CertificateError::NonIntegralCoefficient {
                    a,
                    s,
                    c,
                    coeff: wcoeff.to_string(),
                });
            }
            if !wcoeff.is_zero() {
                witness.terms.push(WitnessTerm {
                    a,
                    j: j0,
                    s,
                    c,
                    coeff: wcoeff,
                });
            }
            // poly <- (poly - val) / (q^-s x - 1), exact by construction.
            poly[0] = poly[0].sub(&val);
            let dd = poly.len() - 1;
            if dd == 0 {
                debug_assert!(poly[0].is_zero());
                break;
            }
            let qs = RationalScalar::q_pow(s as i64);
            let mut h = vec![RationalScalar::zero(); dd];
            h[dd - 1] = qs.mul(&poly[dd]);
            for d in (1..dd).rev() {
                h[d - 1] = qs.mul(&poly[d].add(&h[d]));
            }
            debug_assert!(poly[0].add(&h[0]).is_zero(), "nonzero Newton remainder");
            poly = h;
            s += 1;
        }
    }
    Ok(witness)
}
