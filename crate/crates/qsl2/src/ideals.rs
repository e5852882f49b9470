//! Cyclotomic ideal arithmetic in Z[q, q^-1] and divisibility certificates
//! for colored Jones values.
//!
//! The ideals of interest are fractional principal ideals
//!
//! ```text
//! gamma * Z[q, q^-1],      gamma = unit * extra * prod_m Phi_m^(e_m) / denominator,
//! ```
//!
//! stored in factored form by a [`FactoredIdeal`]: a unit `+-u^k`, a finite
//! exponent map `m -> e_m` over cyclotomic polynomials `Phi_m(q)`, an extra
//! polynomial cofactor, and a denominator.  Membership `x in gamma*Z[q,q^-1]`
//! is decided by one exact division:
//!
//! ```text
//! x * denominator  is exactly divisible by  extra * prod_m Phi_m^(e_m)
//! ```
//!
//! with a quotient in Z[q, q^-1]; [`certify_membership`] returns the quotient
//! as a checkable certificate, or the reduced non-polynomial ratio as a
//! refusal witness.
//!
//! Four families of ideals are provided.
//!
//! * [`ideal_i`]: `I_l`, generated by `{l-k}_q! {k}_q!` for `0 <= k <= l`;
//!   principal with generator `g_l = prod_m Phi_m^(t_(l,m))` where
//!   `t_(l,m) = floor((l+1)/m) - 1` for `1 <= m <= l`.  The constructor
//!   cross-checks `gcd(generators) = g_l` up to a unit.
//! * [`ideal_za`]: `Z_a = ({2l_max+1}_(q,l_max+1) / {1}_q) * Z[q, q^-1]`,
//!   the target lattice for algebraically-split links.
//! * [`ideal_zrb`]: `Z_rb = (prod_(i != i_M) I_(l_i)) * Z_a`, the refinement
//!   for ribbon or boundary links (`i_M` an index attaining `l_max`).
//! * [`ideal_zbr`] / [`ideal_zbr_tilde`]: the Brunnian lattice
//!   `Z_Br = ({2l_max+1}_(q,l_max+1) / ({1}_q {l_min}_q!)) * prod_(i != i_M, i_m) I_(l_i)`
//!   and the intersection `Z~_Br = Z_a ∩ Z_Br`, computed as the lcm of the
//!   two generators.
//!
//! Because `{j}_q = q^j - 1 = prod_(d | j) Phi_d(q)` exactly, every brace
//! product above factors into cyclotomics by divisor bookkeeping alone, so
//! all four lattices are stored fully factored; inclusion checks reduce to
//! exponent comparison and membership to a single exact division.

use crate::scalars::{
    cyclotomic, divisors, gcd, q_brace_factorial, LaurentScalar, RationalScalar,
};
use num_traits::Signed;
use std::collections::BTreeMap;
use std::fmt;

/// Errors raised by ideal constructors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    /// A lattice that requires a minimum number of colors got fewer.
    #[error("{ideal} requires at least {min} colors, got {got}")]
    TooFewColors {
        /// Which lattice was requested.
        ideal: &'static str,
        /// Minimum number of colors required.
        min: usize,
        /// Number of colors supplied.
        got: usize,
    },
}

// ---------------------------------------------------------------------------
// FactoredIdeal
// ---------------------------------------------------------------------------

/// A fractional principal ideal of Z[q, q^-1] in factored form.
///
/// Represents `gamma * Z[q, q^-1]` with
/// `gamma = unit * extra * prod_m Phi_m^(e_m) / denominator`.  The unit plays
/// no role in membership; it is kept so that generators constructed from
/// brace products can be reported exactly as built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredIdeal {
    /// Unit factor `+-u^k` of the generator.
    pub unit: LaurentScalar,
    /// Cyclotomic exponents `m -> e_m` (absent keys mean exponent 0).
    pub exponents: BTreeMap<u64, u32>,
    /// Extra polynomial cofactor of the generator (1 when fully factored).
    pub extra: LaurentScalar,
    /// Denominator for fractional ideals (1 for honest ideals).
    pub denominator: LaurentScalar,
    /// Raw generating set, when the ideal was defined by one (`I_l`); empty
    /// for the principal lattices.
    pub generators: Vec<LaurentScalar>,
}

impl FactoredIdeal {
    /// The unit ideal `Z[q, q^-1]` itself.
    pub fn one() -> Self {
        FactoredIdeal {
            unit: LaurentScalar::one(),
            exponents: BTreeMap::new(),
            extra: LaurentScalar::one(),
            denominator: LaurentScalar::one(),
            generators: Vec::new(),
        }
    }

    /// The polynomial part `extra * prod_m Phi_m^(e_m)` that must divide
    /// `x * denominator` for membership.
    pub fn divisor(&self) -> LaurentScalar {
        let mut acc = self.extra.clone();
        for (&m, &e) in &self.exponents {
            acc = acc.mul(&cyclotomic(m).pow(e));
        }
        acc
    }

    /// The principal generator `unit * extra * prod Phi^e / denominator` as
    /// an element of the fraction field.
    pub fn generator(&self) -> RationalScalar {
        RationalScalar::new(self.unit.mul(&self.divisor()), self.denominator.clone())
    }

    /// Product of two factored ideals (exponents add, cofactors multiply).
    pub fn mul(&self, other: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (&m, &e) in &other.exponents {
            *exponents.entry(m).or_insert(0) += e;
        }
        FactoredIdeal {
            unit: self.unit.mul(&other.unit),
            exponents,
            extra: self.extra.mul(&other.extra),
            denominator: self.denominator.mul(&other.denominator),
            generators: Vec::new(),
        }
    }

    /// Multiply the generator by a polynomial scalar (lands in `extra`).
    pub fn scale(&self, s: &LaurentScalar) -> Self {
        let mut out = self.clone();
        out.extra = out.extra.mul(s);
        out.generators = Vec::new();
        out
    }

    /// Intersection of two fully factored ideals: the lcm of the generators,
    /// taken exponentwise.
    ///
    /// # Panics
    /// Panics if either side carries a nontrivial `extra` or `denominator`;
    /// the lcm shortcut is only valid for fully factored integral ideals.
    pub fn lcm(&self, other: &Self) -> Self {
        assert!(
            self.extra.is_one()
                && other.extra.is_one()
                && self.denominator.is_one()
                && other.denominator.is_one(),
            "lcm requires fully factored integral ideals"
        );
        let mut exponents = self.exponents.clone();
        for (&m, &e) in &other.exponents {
            let slot = exponents.entry(m).or_insert(0);
            *slot = (*slot).max(e);
        }
        FactoredIdeal {
            unit: LaurentScalar::one(),
            exponents,
            extra: LaurentScalar::one(),
            denominator: LaurentScalar::one(),
            generators: Vec::new(),
        }
    }

    /// True iff `x` lies in the ideal; see [`certify_membership`] for the
    /// certificate.
    pub fn contains(&self, x: &RationalScalar) -> bool {
        certify_membership(x, self).is_member()
    }

    /// True iff `other` is contained in `self` as ideals, i.e. the generator
    /// of `self` divides the generator of `other`.
    pub fn contains_ideal(&self, other: &Self) -> bool {
        self.contains(&other.generator())
    }

    /// Render as JSON: factored generator plus cofactors.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "unit": self.unit.to_string(),
            "cyclotomic_factors": self
                .exponents
                .iter()
                .map(|(m, e)| serde_json::json!([m, e]))
                .collect::<Vec<_>>(),
            "extra": self.extra.to_string(),
            "denominator": self.denominator.to_string(),
            "generator": self.to_string(),
        })
    }
}

/// Format a Laurent polynomial known to lie in Z[q, q^-1] with exponents in
/// decreasing order, the customary direction for cyclotomic factors.
fn q_poly_descending(p: &LaurentScalar) -> String {
    if p.is_zero() {
        return "0".to_owned();
    }
    if !p.is_q_polynomial() {
        // Fall back to the canonical u-form for mixed exponents.
        return p.to_string();
    }
    let mut out = String::new();
    let mut first = true;
    let terms: Vec<_> = p.terms().collect();
    for (e, c) in terms.into_iter().rev() {
        let exp = e / 4;
        let mag = c.abs();
        if first {
            if c.is_negative() {
                out.push('-');
            }
            first = false;
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        use num_traits::One;
        if exp == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            if exp == 1 {
                out.push('q');
            } else {
                out.push_str(&format!("q^{exp}"));
            }
        } else if exp == 1 {
            out.push_str(&format!("{mag}*q"));
        } else {
            out.push_str(&format!("{mag}*q^{exp}"));
        }
    }
    out
}

impl fmt::Display for FactoredIdeal {
    /// Factored generator, e.g. `(q - 1)^2 (q + 1) (q^2 + 1)`; a trailing
    /// `/ (...)` marks a fractional ideal, and the bare unit ideal prints
    /// as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.unit.is_one() {
            parts.push(self.unit.to_string());
        }
        for (&m, &e) in &self.exponents {
            let base = format!("({})", q_poly_descending(&cyclotomic(m)));
            if e == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{e}"));
            }
        }
        if !self.extra.is_one() {
            parts.push(format!("({})", q_poly_descending(&self.extra)));
        }
        if parts.is_empty() {
            parts.push("1".to_owned());
        }
        write!(f, "{}", parts.join(" "))?;
        if !self.denominator.is_one() {
            write!(f, " / ({})", q_poly_descending(&self.denominator))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// Exponent of `Phi_m` in `g_l`: `floor((l+1)/m) - 1` for `1 <= m <= l`,
/// else 0.
fn t_exponent(l: u32, m: u32) -> u32 {
    if m >= 1 && m <= l {
        (l + 1) / m - 1
    } else {
        0
    }
}

/// Add (sign `+1`) or remove (sign `-1`) the cyclotomic factors of the
/// brace `{j}_q = prod_(d | j) Phi_d` to a signed exponent ledger.
fn add_brace_factors(ledger: &mut BTreeMap<u64, i64>, j: u64, sign: i64) {
    for d in divisors(j) {
        *ledger.entry(d).or_insert(0) += sign;
    }
}

/// Finish a signed exponent ledger: positive entries become cyclotomic
/// exponents, negative entries (impossible for the lattices built here, but
/// handled for robustness) move into the denominator.
fn finish_ledger(ledger: BTreeMap<u64, i64>) -> FactoredIdeal {
    let mut exponents = BTreeMap::new();
    let mut denominator = LaurentScalar::one();
    for (m, e) in ledger {
        match e.cmp(&0) {
            std::cmp::Ordering::Greater => {
                exponents.insert(m, e as u32);
            }
            std::cmp::Ordering::Less => {
                denominator = denominator.mul(&cyclotomic(m).pow((-e) as u32));
            }
            std::cmp::Ordering::Equal => {}
        }
    }
    FactoredIdeal {
        unit: LaurentScalar::one(),
        exponents,
        extra: LaurentScalar::one(),
        denominator,
        generators: Vec::new(),
    }
}

/// The ideal `I_l` generated by `{l-k}_q! {k}_q!` for `0 <= k <= l`, in its
/// principal form `g_l = prod_(1 <= m <= l) Phi_m^(floor((l+1)/m) - 1)`,
/// together with the raw generator list.
///
/// # Panics
/// Panics if the gcd of the generators fails to reproduce `g_l` up to a
/// unit, which would falsify the principal form.
pub fn ideal_i(l: u32) -> FactoredIdeal {
    let generators: Vec<LaurentScalar> = (0..=l)
        .map(|k| q_brace_factorial(l - k).mul(&q_brace_factorial(k)))
        .collect();
    let mut exponents = BTreeMap::new();
    for m in 1..=l {
        let t = t_exponent(l, m);
        if t > 0 {
            exponents.insert(m as u64, t);
        }
    }
    let ideal = FactoredIdeal {
        unit: LaurentScalar::one(),
        exponents,
        extra: LaurentScalar::one(),
        denominator: LaurentScalar::one(),
        generators: generators.clone(),
    };
    let gcd_chain = generators
        .iter()
        .fold(LaurentScalar::zero(), |acc, g| gcd(&acc, g));
    assert_eq!(
        gcd_chain.normalized(),
        ideal.divisor().normalized(),
        "gcd of I_{l} generators must equal g_{l} up to a unit"
    );
    ideal
}

/// Largest color and the smallest index attaining it.
fn max_choice(ls: &[u32]) -> (u32, usize) {
    let lmax = *ls.iter().max().expect("at least one color");
    (lmax, ls.iter().position(|&l| l == lmax).expect("attained"))
}

/// `Z_a`: the principal ideal generated by `{2l_max+1}_(q,l_max+1) / {1}_q`,
/// in factored form.
///
/// # Panics
/// Panics if `ls` is empty.
pub fn ideal_za(ls: &[u32]) -> FactoredIdeal {
    assert!(!ls.is_empty(), "Z_a needs at least one color");
    let (lmax, _) = max_choice(ls);
    let mut ledger = BTreeMap::new();
    for j in lmax + 1..=2 * lmax + 1 {
        add_brace_factors(&mut ledger, j as u64, 1);
    }
    add_brace_factors(&mut ledger, 1, -1);
    finish_ledger(ledger)
}

/// `Z_rb` with an explicit choice of maximal index (tie-breaking is
/// irrelevant to the resulting ideal; the public constructor picks the
/// smallest).
fn ideal_zrb_with_choice(ls: &[u32], i_max: usize) -> FactoredIdeal {
    let mut out = ideal_za(ls);
    for (i, &l) in ls.iter().enumerate() {
        if i == i_max {
            continue;
        }
        for m in 1..=l {
            let t = t_exponent(l, m);
            if t > 0 {
                *out.exponents.entry(m as u64).or_insert(0) += t;
            }
        }
    }
    out
}

/// `Z_rb = (prod_(i != i_M) I_(l_i)) * Z_a`, the ribbon/boundary lattice,
/// in factored form (the `I` factors enter through their principal
/// generators `g_(l_i)`).
///
/// # Panics
/// Panics if `ls` is empty.
pub fn ideal_zrb(ls: &[u32]) -> FactoredIdeal {
    assert!(!ls.is_empty(), "Z_rb needs at least one color");
    let (_, i_max) = max_choice(ls);
    ideal_zrb_with_choice(ls, i_max)
}

/// `Z_Br` with explicit maximal/minimal index choices.
fn ideal_zbr_with_choice(ls: &[u32], i_max: usize, i_min: usize) -> FactoredIdeal {
    let lmin = ls[i_min];
    let mut ledger: BTreeMap<u64, i64> = BTreeMap::new();
    let lmax = ls[i_max];
    for j in lmax + 1..=2 * lmax + 1 {
        add_brace_factors(&mut ledger, j as u64, 1);
    }
    add_brace_factors(&mut ledger, 1, -1);
    for j in 1..=lmin {
        add_brace_factors(&mut ledger, j as u64, -1);
    }
    for (i, &l) in ls.iter().enumerate() {
        if i == i_max || i == i_min {
            continue;
        }
        for m in 1..=l {
            let t = t_exponent(l, m);
            *ledger.entry(m as u64).or_insert(0) += t as i64;
        }
    }
    finish_ledger(ledger)
}

/// `Z_Br = ({2l_max+1}_(q,l_max+1) / ({1}_q {l_min}_q!)) * prod_(i != i_M, i_m) I_(l_i)`,
/// the Brunnian lattice, in factored form.
///
/// # Errors
/// [`IdealError::TooFewColors`] when fewer than three colors are supplied.
pub fn ideal_zbr(ls: &[u32]) -> Result<FactoredIdeal, IdealError> {
    if ls.len() < 3 {
        return Err(IdealError::TooFewColors {
            ideal: "Z_Br",
            min: 3,
            got: ls.len(),
        });
    }
    let (_, i_max) = max_choice(ls);
    let lmin = *ls.iter().min().expect("nonempty");
    let i_min = ls
        .iter()
        .enumerate()
        .position(|(i, &l)| i != i_max && l == lmin)
        .expect("two distinct indices exist for n >= 3");
    Ok(ideal_zbr_with_choice(ls, i_max, i_min))
}

/// `Z~_Br = Z_a ∩ Z_Br`, computed as the exponentwise lcm of the two
/// factored generators.
///
/// # Errors
/// [`IdealError::TooFewColors`] when fewer than three colors are supplied.
pub fn ideal_zbr_tilde(ls: &[u32]) -> Result<FactoredIdeal, IdealError> {
    let zbr = ideal_zbr(ls)?;
    Ok(ideal_za(ls).lcm(&zbr))
}

// ---------------------------------------------------------------------------
// Membership certificates
// ---------------------------------------------------------------------------

/// Outcome of a membership test against a [`FactoredIdeal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `x` lies in the ideal; `quotient = x * denominator / divisor` is the
    /// certificate, an element of Z[q, q^-1] that multiplies back exactly.
    Certified {
        /// The exact quotient.
        quotient: LaurentScalar,
    },
    /// `x` does not lie in the ideal; the witness is the reduced ratio
    /// `x * denominator / divisor`, which fails the Z[q, q^-1] predicate.
    Refused {
        /// The non-polynomial ratio.
        witness: RationalScalar,
    },
}

impl Membership {
    /// True for [`Membership::Certified`].
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Certified { .. })
    }

    /// The certificate quotient, when membership holds.
    pub fn quotient(&self) -> Option<&LaurentScalar> {
        match self {
            Membership::Certified { quotient } => Some(quotient),
            Membership::Refused { .. } => None,
        }
    }

    /// Render as JSON: `{member, quotient}` or `{member, witness}`.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Membership::Certified { quotient } => serde_json::json!({
                "member": true,
                "quotient": quotient.to_string(),
            }),
            Membership::Refused { witness } => serde_json::json!({
                "member": false,
                "witness": witness.to_string(),
            }),
        }
    }
}

/// Decide `x in ideal` by exact division.
///
/// Computes `x * denominator / (extra * prod Phi^e)`.  When the division is
/// exact in Z[u, u^-1] and the quotient lies in Z[q, q^-1], the quotient is
/// returned as a certificate; otherwise the reduced ratio is returned as a
/// refusal witness.
///
/// # Arguments
/// * `x` — the scalar to test (typically a colored Jones value).
/// * `ideal` — the factored ideal.
pub fn certify_membership(x: &RationalScalar, ideal: &FactoredIdeal) -> Membership {
    let divisor = ideal.divisor();
    let scaled = x.mul(&RationalScalar::from_laurent(ideal.denominator.clone()));
    if let Some(numerator) = scaled.as_laurent() {
        if let Some(quotient) = numerator.exact_div(&divisor) {
            if quotient.is_q_polynomial() {
                return Membership::Certified { quotient };
            }
        }
    }
    Membership::Refused {
        witness: scaled.div(&RationalScalar::from_laurent(divisor)),
    }
}
