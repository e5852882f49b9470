//! Exact scalar arithmetic in the Laurent polynomial ring Z[u, u^-1] with
//! u = q^(1/4), its fraction field, and q-combinatorics.
//!
//! All computation in this crate bottoms out here.  A [`LaurentScalar`] is a
//! finitely supported map from integer u-exponents to arbitrary-precision
//! integer coefficients; `q` is represented by `u^4` and `q^(1/2)` by `u^2`,
//! so exponent residues mod 4 encode which root of q a term involves.
//! A [`RationalScalar`] is a reduced fraction of two `LaurentScalar`s with a
//! canonically normalized denominator.
//!
//! The q-combinatorial helpers follow the unbalanced conventions
//!
//! ```text
//! {i}_q = q^i - 1            {i}_{q,n} = {i}_q {i-1}_q ... {i-n+1}_q
//! {n}_q! = {n}_{q,n}         [i]_q = {i}_q / {1}_q
//! [i; n]_q = {i}_{q,n} / {n}_q!        (q-binomial)
//! ```
//!
//! together with cyclotomic polynomials `Phi_m(q)` and gcds in Z[u, u^-1].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Errors raised by scalar arithmetic.
#[derive(Debug, thiserror::Error)]
pub enum ScalarError {
    /// Attempted to construct a fraction with zero denominator.
    #[error("zero denominator in rational scalar")]
    ZeroDenominator,
    /// An exact division had a nonzero remainder.
    #[error("inexact division: {0} does not divide {1}")]
    InexactDivision(String, String),
}

// ---------------------------------------------------------------------------
// LaurentScalar
// ---------------------------------------------------------------------------

/// An element of Z[u, u^-1], u = q^(1/4), as a sparse exponent map.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentScalar {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentScalar {
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// A constant integer polynomial.
    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, BigInt::from(n))
    }

    /// The monomial `coeff * u^exp`.
    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentScalar { coeffs }
    }

    /// `u^k`.
    pub fn u_pow(k: i64) -> Self {
        Self::monomial(k, BigInt::one())
    }

    /// `v^k = q^(k/2) = u^(2k)`.
    pub fn v_pow(k: i64) -> Self {
        Self::u_pow(2 * k)
    }

    /// `q^k = u^(4k)`.
    pub fn q_pow(k: i64) -> Self {
        Self::u_pow(4 * k)
    }

    /// True iff this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True iff this equals the constant 1.
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self
                .coeffs
                .get(&0)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// True iff this is a unit of Z[u, u^-1], i.e. `±u^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.values().next().unwrap().abs().is_one()
    }

    /// Iterator over `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    /// Lowest exponent with nonzero coefficient, if any.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent with nonzero coefficient, if any.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of `u^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of the highest-exponent term (zero polynomial gives 0).
    pub fn leading_coeff(&self) -> BigInt {
        self.max_exp().map(|e| self.coeff(e)).unwrap_or_else(BigInt::zero)
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// True iff every exponent is divisible by 4, i.e. the element lies in
    /// the subring Z[q, q^-1].
    pub fn is_q_polynomial(&self) -> bool {
        self.coeffs.keys().all(|e| e.rem_euclid(4) == 0)
    }

    /// True iff every exponent is divisible by 2, i.e. the element lies in
    /// Z[v, v^-1] with v = q^(1/2).
    pub fn is_v_polynomial(&self) -> bool {
        self.coeffs.keys().all(|e| e.rem_euclid(2) == 0)
    }

    /// Multiply by `u^k` in place.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        LaurentScalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    fn insert_add(coeffs: &mut BTreeMap<i64, BigInt>, exp: i64, add: &BigInt) {
        if add.is_zero() {
            return;
        }
        let entry = coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += add;
        if entry.is_zero() {
            coeffs.remove(&exp);
        }
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            Self::insert_add(&mut coeffs, *e, c);
        }
        LaurentScalar { coeffs }
    }

    /// Difference of two polynomials.
    pub fn sub(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            Self::insert_add(&mut coeffs, *e, &(-c));
        }
        LaurentScalar { coeffs }
    }

    /// Additive inverse.
    pub fn neg(&self) -> Self {
        LaurentScalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                Self::insert_add(&mut coeffs, e1 + e2, &(c1 * c2));
            }
        }
        LaurentScalar { coeffs }
    }

    /// Integer power (exponent >= 0).
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by an integer.
    pub fn scale(&self, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        LaurentScalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * n)).collect(),
        }
    }

    /// Exact division: returns `Some(self / div)` iff `div` divides `self`
    /// exactly in Z[u, u^-1]; otherwise `None`.
    ///
    /// Works by shifting both operands to lowest exponent 0 and running
    /// integer polynomial long division from the top, demanding exact
    /// integer division of the leading coefficients at every step.
    pub fn exact_div(&self, div: &Self) -> Option<Self> {
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let la = self.min_exp().unwrap();
        let lb = div.min_exp().unwrap();
        let mut rem = self.shift(-la);
        let b = div.shift(-lb);
        let b_deg = b.max_exp().unwrap();
        let b_lead = b.leading_coeff();
        let mut quot = BTreeMap::new();
        while !rem.is_zero() {
            let r_deg = rem.max_exp().unwrap();
            if r_deg < b_deg {
                return None;
            }
            let r_lead = rem.leading_coeff();
            let (qc, qr) = r_lead.div_rem(&b_lead);
            if !qr.is_zero() {
                return None;
            }
            let shift = r_deg - b_deg;
            Self::insert_add(&mut quot, shift, &qc);
            let sub = b.shift(shift).scale(&qc);
            rem = rem.sub(&sub);
            if !rem.is_zero() && rem.max_exp().unwrap() >= r_deg {
                // No progress: cannot happen, but guard against loops.
                return None;
            }
        }
        Some(LaurentScalar { coeffs: quot }.shift(la - lb))
    }

    /// Content: gcd of the integer coefficients (nonnegative; 0 for zero).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Primitive part: content divided out, lowest exponent shifted to 0,
    /// leading (highest-exponent) coefficient positive.  Zero maps to zero.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let r = self.shift(-self.min_exp().unwrap());
        let mut cont = r.content();
        if r.leading_coeff().is_negative() {
            cont = -cont;
        }
        LaurentScalar {
            coeffs: r.coeffs.iter().map(|(e, c)| (*e, c / &cont)).collect(),
        }
    }

    /// Normalization up to units of Z[u, u^-1]: lowest exponent shifted to 0
    /// and leading coefficient made positive; the integer content is kept
    /// (only `±u^k` is factored out).  Zero maps to zero.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let r = self.shift(-self.min_exp().unwrap());
        if r.leading_coeff().is_negative() {
            r.neg()
        } else {
            r
        }
    }

    /// Greatest common divisor in Z[u, u^-1], returned in the canonical
    /// form of [`LaurentScalar::normalized`] (lowest exponent 0, positive
    /// leading coefficient).
    ///
    /// Computed as the integer gcd of contents times the primitive
    /// pseudo-remainder-sequence gcd of the primitive parts.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let cg = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        // Ensure deg a >= deg b.
        if a.max_exp().unwrap() < b.max_exp().unwrap() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part().scale(&cg)
    }

    /// Pseudo-remainder of `self` by `div` (both shifted to lowest exp 0
    /// internally); result well defined up to units, which is all the gcd
    /// loop needs.
    fn pseudo_rem(&self, div: &Self) -> Self {
        let mut rem = self.shift(-self.min_exp().unwrap());
        let b = div.shift(-div.min_exp().unwrap());
        let b_deg = b.max_exp().unwrap();
        let b_lead = b.leading_coeff();
        loop {
            if rem.is_zero() {
                return rem;
            }
            let r_deg = rem.max_exp().unwrap();
            if r_deg < b_deg {
                return rem;
            }
            let r_lead = rem.leading_coeff();
            // rem <- b_lead * rem - r_lead * u^(r_deg - b_deg) * b
            rem = rem.scale(&b_lead).sub(&b.shift(r_deg - b_deg).scale(&r_lead));
        }
    }

    /// Substitute `u -> u^k` (used to build cyclotomics from q-braces).
    pub fn inflate(&self, k: i64) -> Self {
        LaurentScalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Render as JSON: a list of `[exponent, coefficient-string]` pairs in
    /// increasing exponent order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|(e, c)| {
                    serde_json::Value::Array(vec![
                        serde_json::Value::from(*e),
                        serde_json::Value::from(c.to_string()),
                    ])
                })
                .collect(),
        )
    }
}

impl fmt::Display for LaurentScalar {
    /// Canonical text form: terms sorted by increasing exponent, written as
    /// `c*u^k`.  When every exponent is divisible by 4 the element lies in
    /// Z[q, q^-1] and is printed in powers of `q` instead.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let in_q = self.is_q_polynomial();
        let mut first = true;
        for (e, c) in &self.coeffs {
            let (var, exp) = if in_q { ("q", e / 4) } else { ("u", *e) };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if exp == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                if exp == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{exp}")?;
                }
            } else if exp == 1 {
                write!(f, "{mag}*{var}")?;
            } else {
                write!(f, "{mag}*{var}^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! laurent_binops {
    ($t:ty) => {
        impl std::ops::Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                <$t>::add(self, rhs)
            }
        }
        impl std::ops::Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                <$t>::sub(self, rhs)
            }
        }
        impl std::ops::Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                <$t>::mul(self, rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::neg(self)
            }
        }
    };
}

laurent_binops!(LaurentScalar);

// ---------------------------------------------------------------------------
// RationalScalar
// ---------------------------------------------------------------------------

/// A reduced fraction of Laurent polynomials in u.
///
/// Invariants: the denominator is nonzero; numerator and denominator share no
/// non-unit common divisor; the denominator is in canonical form (primitive,
/// lowest exponent 0, positive leading coefficient).  In particular an
/// element of Z[u, u^-1] always has denominator exactly 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalScalar {
    num: LaurentScalar,
    den: LaurentScalar,
}

impl RationalScalar {
    /// Construct and reduce a fraction.
    ///
    /// # Panics
    /// Panics if `den` is zero.
    pub fn new(num: LaurentScalar, den: LaurentScalar) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational scalar");
        let mut r = RationalScalar { num, den };
        r.reduce();
        r
    }

    /// Embed a Laurent polynomial.
    pub fn from_laurent(num: LaurentScalar) -> Self {
        RationalScalar {
            num,
            den: LaurentScalar::one(),
        }
    }

    /// The zero element.
    pub fn zero() -> Self {
        Self::from_laurent(LaurentScalar::zero())
    }

    /// The unit element.
    pub fn one() -> Self {
        Self::from_laurent(LaurentScalar::one())
    }

    /// Constant integer.
    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentScalar::from_int(n))
    }

    /// `u^k`.
    pub fn u_pow(k: i64) -> Self {
        Self::from_laurent(LaurentScalar::u_pow(k))
    }

    /// `v^k = u^(2k)`.
    pub fn v_pow(k: i64) -> Self {
        Self::from_laurent(LaurentScalar::v_pow(k))
    }

    /// `q^k = u^(4k)`.
    pub fn q_pow(k: i64) -> Self {
        Self::from_laurent(LaurentScalar::q_pow(k))
    }

    /// Numerator of the reduced form.
    pub fn numer(&self) -> &LaurentScalar {
        &self.num
    }

    /// Denominator of the reduced form.
    pub fn denom(&self) -> &LaurentScalar {
        &self.den
    }

    /// True iff zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True iff one.
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True iff the reduced form is a Laurent polynomial (unit denominator).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// True iff the reduced form lies in Z[q, q^-1]: unit denominator and all
    /// numerator exponents divisible by 4.
    pub fn is_q_polynomial(&self) -> bool {
        self.den.is_one() && self.num.is_q_polynomial()
    }

    /// Extract the Laurent numerator if the denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentScalar> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentScalar::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_one() {
            self.num = self.num.exact_div(&g).expect("gcd divides numerator");
            self.den = self.den.exact_div(&g).expect("gcd divides denominator");
        }
        // Normalize the denominator to canonical form and absorb the unit
        // into the numerator: den = unit * den_norm  =>  num/den = (num/unit)/den_norm.
        let dnorm = self.den.normalized();
        let unit = self
            .den
            .exact_div(&dnorm)
            .expect("denominator divisible by its normalization");
        debug_assert!(unit.is_unit());
        let k = unit.min_exp().unwrap();
        let s = unit.leading_coeff(); // ±1
        let mut num = self.num.shift(-k);
        if s.is_negative() {
            num = num.neg();
        }
        self.num = num;
        self.den = dnorm;
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.num.mul(&other.den) + &other.num.mul(&self.den),
            self.den.mul(&other.den),
        )
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            &self.num.mul(&other.den) - &other.num.mul(&self.den),
            self.den.mul(&other.den),
        )
    }

    /// Product.
    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        RationalScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics if `self` is zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero rational scalar");
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Quotient.
    ///
    /// # Panics
    /// Panics if `other` is zero.
    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Render as JSON with separate numerator and denominator term lists.
    pub fn to_json(&self) -> serde_json::Value {
        if self.den.is_one() {
            self.num.to_json()
        } else {
            serde_json::json!({
                "num": self.num.to_json(),
                "den": self.den.to_json(),
            })
        }
    }
}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

laurent_binops!(RationalScalar);

// ---------------------------------------------------------------------------
// q-combinatorics
// ---------------------------------------------------------------------------

/// `{i}_q = q^i - 1` (any integer i).
pub fn q_brace(i: i64) -> LaurentScalar {
    &LaurentScalar::q_pow(i) - &LaurentScalar::one()
}

/// Falling product `{i}_{q,n} = {i}_q {i-1}_q ... {i-n+1}_q`.
pub fn q_brace_falling(i: i64, n: u32) -> LaurentScalar {
    let mut acc = LaurentScalar::one();
    for t in 0..n as i64 {
        acc = acc.mul(&q_brace(i - t));
    }
    acc
}

/// `{n}_q! = {n}_{q,n}`.
pub fn q_brace_factorial(n: u32) -> LaurentScalar {
    q_brace_falling(n as i64, n)
}

/// Balanced q-integer `[i]_q = {i}_q / {1}_q = 1 + q + ... + q^(i-1)` for
/// i >= 0, extended to all integers by exact division.
pub fn q_int(i: i64) -> LaurentScalar {
    q_brace(i)
        .exact_div(&q_brace(1))
        .expect("{1}_q divides {i}_q")
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_int_factorial(n: u32) -> LaurentScalar {
    let mut acc = LaurentScalar::one();
    for t in 1..=n as i64 {
        acc = acc.mul(&q_int(t));
    }
    acc
}

/// q-binomial `[i; n]_q = {i}_{q,n} / {n}_q!` (any integer i, n >= 0).
pub fn q_binom(i: i64, n: u32) -> LaurentScalar {
    q_brace_falling(i, n)
        .exact_div(&q_brace_factorial(n))
        .expect("q-binomial is a Laurent polynomial")
}

/// Prime factorization by trial division (small inputs).
fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Möbius function.
fn moebius(m: u64) -> i64 {
    let f = factorize(m);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All positive divisors of `m`.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(m) {
        let mut next = Vec::new();
        for d in &ds {
            let mut pe = 1u64;
            for _ in 0..=e {
                next.push(d * pe);
                pe *= p;
            }
        }
        ds = next;
    }
    ds.sort_unstable();
    ds
}

/// Euler totient.
pub fn euler_phi(m: u64) -> u64 {
    let mut phi = m;
    for (p, _) in factorize(m) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// The m-th cyclotomic polynomial in q, computed by the Möbius product
/// `Phi_m(q) = prod_{d | m} (q^d - 1)^{mu(m/d)}` with exact division.
///
/// # Panics
/// Panics if `m == 0`.
pub fn cyclotomic(m: u64) -> LaurentScalar {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut num = LaurentScalar::one();
    let mut den = LaurentScalar::one();
    for d in divisors(m) {
        match moebius(m / d) {
            1 => num = num.mul(&q_brace(d as i64)),
            -1 => den = den.mul(&q_brace(d as i64)),
            _ => {}
        }
    }
    num.exact_div(&den).expect("cyclotomic polynomial is exact")
}

/// Greatest common divisor in Z[u, u^-1] in canonical normalized form.
pub fn gcd(a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentScalar {
        LaurentScalar::q_pow(1)
    }

    #[test]
    fn brace_examples() {
        // {1}_q = q - 1
        assert_eq!(q_brace(1), &q() - &LaurentScalar::one());
        // {3}_q! = (q^3-1)(q^2-1)(q-1)
        let expect = q_brace(3).mul(&q_brace(2)).mul(&q_brace(1));
        assert_eq!(q_brace_factorial(3), expect);
        // {0}_q! = 1, empty product
        assert_eq!(q_brace_factorial(0), LaurentScalar::one());
        // [0; 1]_q = {0}_q / {1}_q = 0
        assert_eq!(q_binom(0, 1), LaurentScalar::zero());
    }

    #[test]
    fn binom_times_factorial_is_falling() {
        for i in 0..=8i64 {
            for n in 0..=i as u32 {
                let lhs = q_binom(i, n).mul(&q_brace_factorial(n));
                assert_eq!(lhs, q_brace_falling(i, n), "i={i} n={n}");
            }
        }
    }

    #[test]
    fn falling_brace_expansion_identity() {
        // {k}_{q,n} = sum_{r=0}^n (-1)^(n-r) q^(r(r+1)/2 + r(k-n)) [n; r]_q
        // checked at (k, n) = (3, 2).
        let (k, n) = (3i64, 2u32);
        let mut sum = LaurentScalar::zero();
        for r in 0..=n as i64 {
            let sign = if (n as i64 - r) % 2 == 0 { 1 } else { -1 };
            let pow = LaurentScalar::q_pow(r * (r + 1) / 2 + r * (k - n as i64));
            let term = pow.mul(&q_binom(n as i64, r as u32)).scale(&BigInt::from(sign));
            sum = sum.add(&term);
        }
        assert_eq!(sum, q_brace_falling(k, n));
    }

    #[test]
    fn negative_index_q_int() {
        // [-1]_q = (q^-1 - 1)/(q - 1) = -q^-1
        assert_eq!(
            q_int(-1),
            LaurentScalar::q_pow(-1).neg()
        );
    }

    #[test]
    fn cyclotomic_small_values() {
        assert_eq!(cyclotomic(1), q_brace(1)); // q - 1
        assert_eq!(cyclotomic(2), &q() + &LaurentScalar::one()); // q + 1
        // Phi_6 = q^2 - q + 1
        let expect = &(&LaurentScalar::q_pow(2) - &q()) + &LaurentScalar::one();
        assert_eq!(cyclotomic(6), expect);
    }

    #[test]
    fn cyclotomic_product_and_degree() {
        for m in 1..=30u64 {
            let phi = cyclotomic(m);
            // Integer coefficients are automatic; check degree = phi(m) and
            // lowest exponent 0.
            assert_eq!(phi.min_exp().unwrap(), 0, "m={m}");
            assert_eq!(phi.max_exp().unwrap(), 4 * euler_phi(m) as i64, "m={m}");
            // prod_{d|m} Phi_d = q^m - 1
            let mut prod = LaurentScalar::one();
            for d in divisors(m) {
                prod = prod.mul(&cyclotomic(d));
            }
            assert_eq!(prod, q_brace(m as i64), "m={m}");
        }
    }

    #[test]
    fn gcd_examples() {
        let q1 = q_brace(1); // q-1
        let a = q1.pow(2);
        let b = q1.pow(2).mul(&cyclotomic(2));
        assert_eq!(gcd(&a, &b), q1.pow(2));
        assert_eq!(gcd(&q1, &cyclotomic(2)), LaurentScalar::one());
        // gcd with zero returns the normalized other argument.
        let x = LaurentScalar::monomial(-3, BigInt::from(-2)).mul(&q1);
        assert_eq!(gcd(&x, &LaurentScalar::zero()), x.normalized());
        assert_eq!(x.normalized().leading_coeff(), BigInt::from(2));
        assert_eq!(x.normalized().min_exp(), Some(0));
    }

    #[test]
    fn exact_division_reports_failure() {
        let a = q_brace(2);
        let b = q_brace(3);
        assert!(a.exact_div(&b).is_none());
        assert!(b.exact_div(&a).is_none());
        assert_eq!(
            q_brace_falling(5, 2).exact_div(&q_brace(4)).unwrap(),
            q_brace(5)
        );
    }

    #[test]
    fn q_poly_quotients_stay_in_q() {
        // A quotient of two q-polynomials that divides exactly is again a
        // q-polynomial.
        let a = q_brace_factorial(4);
        let b = q_brace_factorial(2);
        let c = a.exact_div(&b).unwrap();
        assert!(c.is_q_polynomial());
        assert_eq!(c, q_brace_falling(4, 2));
    }

    #[test]
    fn rational_invariants() {
        // (q-1)^2 / ((q-1)(q+1)) reduces to (q-1)/(q+1) with canonical den.
        let r = RationalScalar::new(
            q_brace(1).pow(2),
            q_brace(1).mul(&cyclotomic(2)),
        );
        assert_eq!(r.numer(), &q_brace(1));
        assert_eq!(r.denom(), &cyclotomic(2));
        // Denominator canonicalization: (q - q^2) in the denominator flips
        // sign and shifts so the den has lowest exponent 0, positive lead.
        let r2 = RationalScalar::new(
            LaurentScalar::one(),
            &LaurentScalar::q_pow(1) - &LaurentScalar::q_pow(2),
        );
        assert_eq!(r2.denom(), &q_brace(1));
        assert_eq!(r2.numer(), &LaurentScalar::q_pow(-1).neg());
    }

    #[test]
    fn rational_round_trip_division() {
        let a = RationalScalar::new(q_brace(3), q_brace_factorial(2));
        let b = RationalScalar::new(cyclotomic(4), q_brace(1));
        let q = a.div(&b);
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn display_forms() {
        assert_eq!(format!("{}", q_brace(1)), "-1 + q");
        assert_eq!(format!("{}", LaurentScalar::u_pow(-2)), "u^-2");
        let mixed = &LaurentScalar::u_pow(2) + &LaurentScalar::from_int(3);
        assert_eq!(format!("{mixed}"), "3 + u^2");
        assert_eq!(format!("{}", LaurentScalar::zero()), "0");
    }

    // Ring axioms on deterministic pseudo-random triples.
    fn pseudo_random_scalar(seed: u64) -> LaurentScalar {
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut out = LaurentScalar::zero();
        for _ in 0..4 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let exp = ((s >> 33) % 13) as i64 - 6;
            let coeff = ((s >> 13) % 9) as i64 - 4;
            out = out.add(&LaurentScalar::monomial(exp, BigInt::from(coeff)));
        }
        out
    }

    #[test]
    fn ring_axioms_random_triples() {
        for seed in 0..40u64 {
            let a = pseudo_random_scalar(seed * 3 + 1);
            let b = pseudo_random_scalar(seed * 3 + 2);
            let c = pseudo_random_scalar(seed * 3 + 3);
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.sub(&a), LaurentScalar::zero());
            assert_eq!(a.mul(&LaurentScalar::one()), a);
            // (a/b) * b = a in the fraction field when b != 0.
            if !b.is_zero() {
                let fa = RationalScalar::from_laurent(a.clone());
                let fb = RationalScalar::from_laurent(b.clone());
                assert_eq!(fa.div(&fb).mul(&fb), fa);
            }
        }
    }
}
