//! Quantum traces, the closed Habiro trace formula, and Casimir tools.
//!
//! The quantum trace of `x` in the irreducible `V_m` is
//! `tr_q^(V_m)(x) = tr(K^-1 rho_m(x))`, extended linearly to colors.
//! Monomial traces are memoized globally since the state sum evaluates the
//! same PBW monomials in the same colors many times.
//!
//! The Habiro trace formula gives, for `0 <= i <= l`,
//!
//! ```text
//! tr_q^(P_l)(Fdiv(i) K^(2j) e^i)
//!   = q^(l/2 - l j + 2 i j + i^2 - i l) {l}_q! {l-i}_q!
//!     [j+l-1; l-i]_q [j-1; l-i]_q
//! ```
//!
//! and `0` for `i > l`.  The Casimir element and the interpolation products
//! `sigma(p)` drive the central-value tests.

use super::color::Color;
use super::rep::rep;
use crate::scalars::{q_binom, q_brace_factorial, LaurentScalar, RationalScalar};
use crate::uqalg::atoms::Atom;
use crate::uqalg::elem::{normal_order, AlgebraElement};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Memoized quantum trace of a PBW monomial in `V_m`.
fn monomial_qtrace(m: u32, key: (u32, i64, u32)) -> RationalScalar {
    static MEMO: Lazy<Mutex<HashMap<(u32, (u32, i64, u32)), RationalScalar>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(hit) = MEMO.lock().unwrap().get(&(m, key)) {
        return hit.clone();
    }
    let r = rep(m);
    let val = r.kinv.mul(&r.pbw_matrix(key.0, key.1, key.2)).trace();
    MEMO.lock()
        .unwrap()
        .entry((m, key))
        .or_insert_with(|| val.clone());
    val
}

/// Quantum trace of `x` against a color: the `K^-1`-weighted trace in each
/// irreducible, combined linearly.
pub fn qtrace(color: &Color, x: &AlgebraElement) -> RationalScalar {
    let mut acc = RationalScalar::zero();
    for (m, cm) in color.terms() {
        let mut per = RationalScalar::zero();
        for (key, coeff) in x.terms() {
            per = per.add(&coeff.mul(&monomial_qtrace(*m, *key)));
        }
        acc = acc.add(&cm.mul(&per));
    }
    acc
}

/// Closed form for `tr_q^(P_l)(Fdiv(i) K^(2j) e^i)`.
pub fn habiro_trace(l: u32, i: u32, j: i64) -> RationalScalar {
    if i > l {
        return RationalScalar::zero();
    }
    let (li, ii) = (l as i64, i as i64);
    let half = LaurentScalar::v_pow(li); // q^(l/2)
    let qexp = LaurentScalar::q_pow(-li * j + 2 * ii * j + ii * ii - ii * li);
    let val = half
        .mul(&qexp)
        .mul(&q_brace_factorial(l))
        .mul(&q_brace_factorial(l - i))
        .mul(&q_binom(j + li - 1, l - i))
        .mul(&q_binom(j - 1, l - i));
    RationalScalar::from_laurent(val)
}

/// The `Fdiv(i) K^(2j) e^i` basis element whose traces the closed formula
/// covers.
pub fn habiro_basis_element(i: u32, j: i64) -> AlgebraElement {
    let mut word = vec![Atom::Fdiv(i), Atom::K(2 * j)];
    word.extend(std::iter::repeat(Atom::SmallE).take(i as usize));
    normal_order(&word)
}

/// The Casimir element `C = (v - v^-1)^2 F E + v K + v^-1 K^-1`.
pub fn casimir() -> AlgebraElement {
    let vdiff = &LaurentScalar::u_pow(2) - &LaurentScalar::u_pow(-2);
    let fe = normal_order(&[Atom::F, Atom::E])
        .scale(&RationalScalar::from_laurent(vdiff.mul(&vdiff)));
    let vk = AlgebraElement::pbw_monomial(0, 1, 0, RationalScalar::v_pow(1));
    let vkinv = AlgebraElement::pbw_monomial(0, -1, 0, RationalScalar::v_pow(-1));
    fe.add(&vk).add(&vkinv)
}

/// The interpolation product
/// `sigma(p) = prod_{i=1}^p (C^2 - (q^i + 2 + q^-i))`.
pub fn sigma(p: u32) -> AlgebraElement {
    let c2 = casimir().mul(&casimir());
    let mut acc = AlgebraElement::one();
    for i in 1..=p as i64 {
        let shift = RationalScalar::from_laurent(
            &(&LaurentScalar::q_pow(i) + &LaurentScalar::from_int(2)) + &LaurentScalar::q_pow(-i),
        );
        acc = acc.mul(&c2.sub(&AlgebraElement::scalar(shift)));
    }
    acc
}
