//! Colored Jones values by two independent routes.
//!
//! The universal route closes the truncated universal invariant with
//! quantum traces: each state contributes the product of the per-strand
//! traces `tr(K^-1 rho(x_i))`, coupled through the diagonal ledger weight
//! `u^(sum_ij L_ij lambda_i lambda_j)` when linking numbers or framings
//! are nonzero.
//!
//! The matrix route evaluates the diagram bottom-to-top as a sparse
//! linear map on weight-basis column vectors, seeding the bottom with
//! closure arcs and contracting caps, cups and crossing tensors cell by
//! cell.  Columns are typed by strand orientation; turn tensors are
//! diagonal, and each crossing tensor realises the same R-matrix
//! half-labels the universal route places on the strands, with matrix
//! elements taken along strand orientation and the Cartan pair read at
//! the positions of its legs.  Agreement of the two routes is a strong
//! end-to-end check: beyond the shared representation matrices, the
//! universal route also exercises the word algebra and ledger pushing
//! that the matrix route bypasses.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::reptheory::{rep, Color, Rep};
use crate::scalars::RationalScalar;
use crate::tangle::{Cell, Diagram, Traversal};
use crate::uqalg::{normal_order, push_d_left, rmatrix_term, DLedger};

use super::labels::{labeled_state, state_space, truncation_ranges, StateSumError};
use super::memo::{Cached, OrderCache};

/// Evaluate the colored Jones value through the universal invariant.
///
/// # Arguments
/// * `d` - the diagram.
/// * `colors` - one color per component; the state sum is truncated at
///   each crossing by the smaller of the two participating dimensions,
///   which is exact because higher divided powers act as zero.
///
/// # Returns
/// The exact value in the fraction field of Z[u, u^-1].
pub fn colored_jones_universal(
    d: &Diagram,
    colors: &[Color],
) -> Result<RationalScalar, StateSumError> {
    let values = colored_jones_universal_many(d, std::slice::from_ref(&colors.to_vec()))?;
    Ok(values.into_iter().next().expect("one tuple in, one value out"))
}

/// Evaluate the universal-route colored Jones value for several color
/// tuples in a single pass over the state space.
///
/// The per-state algebra (labeling, ledger pushing, normal ordering) is
/// independent of the colors and dominates the cost, so sharing it
/// across tuples is far cheaper than one call per tuple.  Truncation
/// ranges use the componentwise maximum dimension over all tuples; this
/// stays exact because divided powers beyond a color's dimension act as
/// zero on it.
///
/// # Arguments
/// * `d` - the diagram.
/// * `tuples` - color tuples, each with one color per component.
///
/// # Returns
/// One exact value per tuple, in input order.
pub fn colored_jones_universal_many(
    d: &Diagram,
    tuples: &[Vec<Color>],
) -> Result<Vec<RationalScalar>, StateSumError> {
    for colors in tuples {
        if colors.len() != d.components {
            return Err(StateSumError::ColorCount {
                expected: d.components,
                got: colors.len(),
            });
        }
    }
    if tuples.is_empty() {
        return Ok(Vec::new());
    }
    let t = d.traverse()?;
    let mut dims = vec![0u32; d.components];
    for colors in tuples {
        for (i, c) in colors.iter().enumerate() {
            dims[i] = dims[i].max(c.max_dimension());
        }
    }
    let zeros = vec![RationalScalar::zero(); tuples.len()];
    if dims.iter().any(|&m| m == 0) {
        return Ok(zeros);
    }
    let ranges = truncation_ranges(&t, &dims);
    let states = state_space(&ranges);
    // Strand words recur heavily across states, so normal orderings and
    // the traces derived from them are shared through a pass-wide memo.
    let memo = OrderCache::new();
    let totals = states
        .par_iter()
        .map(|state| {
            let labels = labeled_state(&t, d.components, state);
            let pushed = push_d_left(&labels.strands);
            let strands: Vec<Cached> =
                pushed.words.iter().map(|w| memo.ordered(w)).collect();
            tuples
                .iter()
                .map(|colors| {
                    let val = if pushed.ledger.is_trivial() {
                        let mut acc = RationalScalar::one();
                        for (i, c) in colors.iter().enumerate() {
                            let mut part = RationalScalar::zero();
                            for (&m, coeff) in c.terms() {
                                if m == 0 {
                                    continue;
                                }
                                let tr = memo.qtrace(&strands[i], m);
                                part = part.add(&tr.mul(coeff));
                            }
                            acc = acc.mul(&part);
                        }
                        acc
                    } else {
                        coupled_closure(&pushed.ledger, colors, &strands)
                    };
                    val.mul(&labels.scalar)
                })
                .collect::<Vec<_>>()
        })
        .reduce(
            || zeros.clone(),
            |a, b| {
                a.iter()
                    .zip(&b)
                    .map(|(x, y)| x.add(y))
                    .collect::<Vec<_>>()
            },
        );
    Ok(totals)
}

/// Closure of a pure tensor under a nontrivial ledger: the diagonal
/// weight couples the strand traces, so sum over weight-basis tuples.
fn coupled_closure(
    ledger: &DLedger,
    colors: &[Color],
    strands: &[Cached],
) -> RationalScalar {
    let supports: Vec<Vec<(u32, RationalScalar)>> = colors
        .iter()
        .map(|c| c.terms().map(|(m, co)| (*m, co.clone())).collect())
        .collect();
    let mut total = RationalScalar::zero();
    for (ms, coeff) in cartesian(&supports) {
        if ms.iter().any(|&m| m == 0) {
            continue;
        }
        total = total.add(&coeff.mul(&coupled_irrep_closure(ledger, &ms, strands)));
    }
    total
}

fn coupled_irrep_closure(
    ledger: &DLedger,
    ms: &[u32],
    strands: &[Cached],
) -> RationalScalar {
    let diags: Vec<Vec<RationalScalar>> = ms
        .iter()
        .zip(strands)
        .map(|(&m, x)| {
            let rm = rep(m);
            let mat = rm.k_pow(-1).mul(&rm.eval(&x.elem));
            (0..m as usize).map(|j| mat.rows[j][j].clone()).collect()
        })
        .collect();
    let lambda = |m: u32, j: usize| m as i64 - 1 - 2 * j as i64;
    let mut total = RationalScalar::zero();
    let mut idx = vec![0usize; ms.len()];
    'outer: loop {
        let lams: Vec<i64> = idx
            .iter()
            .zip(ms)
            .map(|(&j, &m)| lambda(m, j))
            .collect();
        let mut uexp = 0i64;
        for i in 0..ms.len() {
            uexp += ledger.exponents[i][i] * lams[i] * lams[i];
            for j in (i + 1)..ms.len() {
                uexp += ledger.exponents[i][j] * lams[i] * lams[j];
            }
        }
        let mut term = RationalScalar::u_pow(uexp);
        for (i, &j) in idx.iter().enumerate() {
            term = term.mul(&diags[i][j]);
        }
        total = total.add(&term);
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < ms[k] as usize {
                continue 'outer;
            }
            idx[k] = 0;
        }
        return total;
    }
}

/// All irreducible tuples in the support of the colors, with the product
/// coefficient of each.
fn cartesian(supports: &[Vec<(u32, RationalScalar)>]) -> Vec<(Vec<u32>, RationalScalar)> {
    let mut acc: Vec<(Vec<u32>, RationalScalar)> = vec![(Vec::new(), RationalScalar::one())];
    for level in supports {
        let mut next = Vec::with_capacity(acc.len() * level.len());
        for (ms, coeff) in &acc {
            for (m, c) in level {
                let mut v = ms.clone();
                v.push(*m);
                next.push((v, coeff.mul(c)));
            }
        }
        acc = next;
    }
    acc
}

/// Evaluate the colored Jones value by direct matrix contraction.
///
/// # Arguments
/// * `d` - the diagram.
/// * `colors` - one color per component, expanded multilinearly into
///   irreducible summands.
///
/// # Returns
/// The exact value; agrees with [`colored_jones_universal`] on every
/// diagram.
pub fn colored_jones_matrix(
    d: &Diagram,
    colors: &[Color],
) -> Result<RationalScalar, StateSumError> {
    if colors.len() != d.components {
        return Err(StateSumError::ColorCount {
            expected: d.components,
            got: colors.len(),
        });
    }
    let t = d.traverse()?;
    let supports: Vec<Vec<(u32, RationalScalar)>> = colors
        .iter()
        .map(|c| c.terms().map(|(m, co)| (*m, co.clone())).collect())
        .collect();
    let tuples = cartesian(&supports);
    let total = tuples
        .par_iter()
        .map(|(ms, coeff)| {
            if ms.iter().any(|&m| m == 0) {
                RationalScalar::zero()
            } else {
                rt_closure(d, &t, ms).mul(coeff)
            }
        })
        .reduce(RationalScalar::zero, |a, b| a.add(&b));
    Ok(total)
}

/// Contract the closed diagram with every component colored by the
/// irreducible of dimension `ms[i]`.
fn rt_closure(d: &Diagram, t: &Traversal, ms: &[u32]) -> RationalScalar {
    let reps: Vec<Rep> = ms.iter().map(|&m| rep(m)).collect();
    // Seed below the bottom row: one closure arc per component joining
    // its two endpoints.  The arc carries the K^-1 of the quantum
    // trace, so the paired index `j` is weighted by `v^(-lambda_j)`.
    let mut state: BTreeMap<Vec<u8>, RationalScalar> = BTreeMap::new();
    let mut seed: Vec<(Vec<u8>, RationalScalar)> = vec![(Vec::new(), RationalScalar::one())];
    for comp in 0..d.components {
        let m = ms[comp];
        let mut next = Vec::with_capacity(seed.len() * m as usize);
        for (key, coeff) in &seed {
            for j in 0..m {
                let lam = m as i64 - 1 - 2 * j as i64;
                let mut nk = key.clone();
                nk.push(j as u8);
                nk.push(j as u8);
                next.push((nk, coeff.mul(&RationalScalar::v_pow(-lam))));
            }
        }
        seed = next;
    }
    for (k, c) in seed {
        state.insert(k, c);
    }
    for r in 0..d.rows.len() {
        state = apply_row(d, t, r, &reps, ms, &state);
        if state.is_empty() {
            return RationalScalar::zero();
        }
    }
    state
        .get(&Vec::new())
        .cloned()
        .unwrap_or_else(RationalScalar::zero)
}

fn add_term(
    map: &mut BTreeMap<Vec<u8>, RationalScalar>,
    key: Vec<u8>,
    coeff: RationalScalar,
) {
    let entry = map.entry(key).or_insert_with(RationalScalar::zero);
    *entry = entry.add(&coeff);
}

fn apply_row(
    d: &Diagram,
    t: &Traversal,
    r: usize,
    reps: &[Rep],
    ms: &[u32],
    state: &BTreeMap<Vec<u8>, RationalScalar>,
) -> BTreeMap<Vec<u8>, RationalScalar> {
    // Column orientation: the walk runs against the strand orientation,
    // so a downward-walked edge is upward-oriented.
    let types_in = &t.edges[r];
    let types_out = &t.edges[r + 1];
    let mut cur = state.clone();
    let mut pos = 0usize;
    let mut in_col = 0usize;
    let mut out_col = 0usize;
    for cell in &d.rows[r].cells {
        match cell {
            Cell::Vertical => {
                pos += 1;
                in_col += 1;
                out_col += 1;
            }
            Cell::Cap => {
                let (c0, up0) = types_in[in_col];
                let (_c1, up1) = types_in[in_col + 1];
                let m = ms[c0];
                let mut next = BTreeMap::new();
                for (key, coeff) in &cur {
                    let j = key[pos];
                    if j != key[pos + 1] {
                        continue;
                    }
                    let extra = match (up0, up1) {
                        (false, true) => RationalScalar::one(),
                        (true, false) => {
                            RationalScalar::v_pow(-(m as i64 - 1 - 2 * j as i64))
                        }
                        _ => unreachable!("cap joins one upward and one downward strand"),
                    };
                    let mut nk = key.clone();
                    nk.drain(pos..pos + 2);
                    add_term(&mut next, nk, coeff.mul(&extra));
                }
                cur = next;
                in_col += 2;
            }
            Cell::Cup => {
                let (c0, up0) = types_out[out_col];
                let (_c1, up1) = types_out[out_col + 1];
                let m = ms[c0];
                let mut next = BTreeMap::new();
                for (key, coeff) in &cur {
                    for j in 0..m {
                        let lam = m as i64 - 1 - 2 * j as i64;
                        let extra = match (up0, up1) {
                            (false, true) => RationalScalar::v_pow(lam),
                            (true, false) => RationalScalar::one(),
                            _ => unreachable!("cup emits one upward and one downward strand"),
                        };
                        let mut nk = key.clone();
                        nk.insert(pos, j as u8);
                        nk.insert(pos + 1, j as u8);
                        add_term(&mut next, nk, coeff.mul(&extra));
                    }
                }
                cur = next;
                pos += 2;
                out_col += 2;
            }
            Cell::PositiveCrossing | Cell::NegativeCrossing => {
                let sigma = if matches!(cell, Cell::PositiveCrossing) {
                    1
                } else {
                    -1
                };
                let (ca, up_a) = types_in[in_col];
                let (cb, up_b) = types_in[in_col + 1];
                let entries =
                    crossing_entries(&reps[ca], ms[ca], up_a, &reps[cb], ms[cb], up_b, sigma);
                let mut next = BTreeMap::new();
                for (key, coeff) in &cur {
                    let pair = (key[pos], key[pos + 1]);
                    if let Some(outs) = entries.get(&pair) {
                        for (o0, o1, c) in outs {
                            let mut nk = key.clone();
                            nk[pos] = *o0;
                            nk[pos + 1] = *o1;
                            add_term(&mut next, nk, coeff.mul(c));
                        }
                    }
                }
                next.retain(|_, v| !v.is_zero());
                cur = next;
                pos += 2;
                in_col += 2;
                out_col += 2;
            }
        }
    }
    cur.retain(|_, v| !v.is_zero());
    cur
}

/// Sparse entries of the crossing tensor on two adjacent columns, keyed
/// by the input index pair; values are `(out_left, out_right, coeff)`.
///
/// The tensor realises, in the weight basis, exactly the labels the
/// state sum places on the strands: the `n`-th summand of the cell-sign
/// R-series puts its `beta` half on the over-strand and its `alpha` half
/// on the under-strand, and a half whose pass is walked downward (the
/// strand is oriented upward there) is replaced by its antipode image,
/// flipping the Cartan pair sign once per application.  A strand flowing
/// upward through the cell contributes the matrix element
/// `[rho(w)]_(top, bottom)` of its word, one flowing downward contributes
/// `[rho(w)]_(bottom, top)`.  The Cartan pair weighs the two strands by
/// `u^(eps lambda_a lambda_b)` with each weight read at the point of the
/// strand where that half's leg sits: at the flow-out index when the leg
/// precedes the atoms, at the flow-in index when the antipode has moved
/// it behind them.
fn crossing_entries(
    ra: &Rep,
    ma: u32,
    up_a: bool,
    rb: &Rep,
    mb: u32,
    up_b: bool,
    sigma: i64,
) -> BTreeMap<(u8, u8), Vec<(u8, u8, RationalScalar)>> {
    let mut acc: BTreeMap<(u8, u8, u8, u8), RationalScalar> = BTreeMap::new();
    for n in 0..ma.min(mb) {
        let term = rmatrix_term(n, sigma);
        // The positive cell's over-strand runs bottom-left to top-right.
        let (mut half_a, mut half_b) = if sigma == 1 {
            (term.beta, term.alpha)
        } else {
            (term.alpha, term.beta)
        };
        let mut flips = 0u32;
        if up_a {
            half_a = half_a.antipode();
            flips += 1;
        }
        if up_b {
            half_b = half_b.antipode();
            flips += 1;
        }
        let eps = if flips % 2 == 0 { sigma } else { -sigma };
        let scal = half_a.scalar.mul(&half_b.scalar);
        let mat_a = ra.eval(&normal_order(&half_a.atoms));
        let mat_b = rb.eval(&normal_order(&half_b.atoms));
        for i0 in 0..ma as usize {
            for o1 in 0..ma as usize {
                let av = if up_a {
                    &mat_a.rows[o1][i0]
                } else {
                    &mat_a.rows[i0][o1]
                };
                if av.is_zero() {
                    continue;
                }
                let (a_in, a_out) = if up_a { (i0, o1) } else { (o1, i0) };
                let leg_a = if half_a.leg_first { a_out } else { a_in };
                let lam_a = ma as i64 - 1 - 2 * leg_a as i64;
                for i1 in 0..mb as usize {
                    for o0 in 0..mb as usize {
                        let bv = if up_b {
                            &mat_b.rows[o0][i1]
                        } else {
                            &mat_b.rows[i1][o0]
                        };
                        if bv.is_zero() {
                            continue;
                        }
                        let (b_in, b_out) = if up_b { (i1, o0) } else { (o0, i1) };
                        let leg_b = if half_b.leg_first { b_out } else { b_in };
                        let lam_b = mb as i64 - 1 - 2 * leg_b as i64;
                        let coeff = scal
                            .mul(&RationalScalar::u_pow(eps * lam_a * lam_b))
                            .mul(av)
                            .mul(bv);
                        let entry = acc
                            .entry((i0 as u8, i1 as u8, o0 as u8, o1 as u8))
                            .or_insert_with(RationalScalar::zero);
                        *entry = entry.add(&coeff);
                    }
                }
            }
        }
    }
    let mut map: BTreeMap<(u8, u8), Vec<(u8, u8, RationalScalar)>> = BTreeMap::new();
    for ((i0, i1, o0, o1), c) in acc {
        if !c.is_zero() {
            map.entry((i0, i1)).or_default().push((o0, o1, c));
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reptheory::rep;

    type State = BTreeMap<Vec<u8>, RationalScalar>;

    /// Apply a crossing-entry map to the two columns at `pos`.
    fn apply_entries(
        entries: &BTreeMap<(u8, u8), Vec<(u8, u8, RationalScalar)>>,
        pos: usize,
        state: &State,
    ) -> State {
        let mut next = State::new();
        for (key, coeff) in state {
            let pair = (key[pos], key[pos + 1]);
            if let Some(outs) = entries.get(&pair) {
                for (o0, o1, c) in outs {
                    let mut nk = key.clone();
                    nk[pos] = *o0;
                    nk[pos + 1] = *o1;
                    let entry = nk.clone();
                    let add = coeff.mul(c);
                    let slot = next.entry(entry).or_insert_with(RationalScalar::zero);
                    *slot = slot.add(&add);
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        next
    }

    fn basis2(ma: u32, mb: u32) -> Vec<Vec<u8>> {
        let mut keys = Vec::new();
        for i in 0..ma as u8 {
            for j in 0..mb as u8 {
                keys.push(vec![i, j]);
            }
        }
        keys
    }

    /// Check that stacking `first` then `second` acts as the identity.
    fn assert_r2(
        name: &str,
        ma: u32,
        mb: u32,
        first: &BTreeMap<(u8, u8), Vec<(u8, u8, RationalScalar)>>,
        second: &BTreeMap<(u8, u8), Vec<(u8, u8, RationalScalar)>>,
    ) {
        for key in basis2(ma, mb) {
            let mut state = State::new();
            state.insert(key.clone(), RationalScalar::one());
            let out = apply_entries(second, 0, &apply_entries(first, 0, &state));
            let mut want = State::new();
            want.insert(key.clone(), RationalScalar::one());
            assert_eq!(out, want, "{name} ({ma},{mb}): R2 failed on input {key:?}");
        }
    }

    #[test]
    fn reidemeister_two_holds_for_each_orientation_case() {
        for (ma, mb) in [(2u32, 2u32), (2, 3), (3, 2), (3, 3)] {
            let ra = rep(ma);
            let rb = rep(mb);
            for sigma in [1i64, -1] {
                // Both upward.
                let c1 = crossing_entries(&ra, ma, true, &rb, mb, true, sigma);
                let c2 = crossing_entries(&rb, mb, true, &ra, ma, true, -sigma);
                assert_r2(&format!("up-up s={sigma}"), ma, mb, &c1, &c2);
                // Left downward.
                let c1 = crossing_entries(&ra, ma, false, &rb, mb, true, sigma);
                let c2 = crossing_entries(&rb, mb, true, &ra, ma, false, -sigma);
                assert_r2(&format!("down-up s={sigma}"), ma, mb, &c1, &c2);
                // Right downward.
                let c1 = crossing_entries(&ra, ma, true, &rb, mb, false, sigma);
                let c2 = crossing_entries(&rb, mb, false, &ra, ma, true, -sigma);
                assert_r2(&format!("up-down s={sigma}"), ma, mb, &c1, &c2);
                // Both downward.
                let c1 = crossing_entries(&ra, ma, false, &rb, mb, false, sigma);
                let c2 = crossing_entries(&rb, mb, false, &ra, ma, false, -sigma);
                assert_r2(&format!("down-down s={sigma}"), ma, mb, &c1, &c2);
            }
        }
    }

    #[test]
    fn yang_baxter_holds_for_upward_columns() {
        for (ma, mb, mc) in [(2u32, 2u32, 2u32), (2, 2, 3), (2, 3, 2), (3, 2, 2)] {
            let (ra, rb, rc) = (rep(ma), rep(mb), rep(mc));
            for sigma in [1i64, -1] {
                let mut keys = Vec::new();
                for i in 0..ma as u8 {
                    for j in 0..mb as u8 {
                        for k in 0..mc as u8 {
                            keys.push(vec![i, j, k]);
                        }
                    }
                }
                let cab = crossing_entries(&ra, ma, true, &rb, mb, true, sigma);
                let cac = crossing_entries(&ra, ma, true, &rc, mc, true, sigma);
                let cbc = crossing_entries(&rb, mb, true, &rc, mc, true, sigma);
                for key in keys {
                    let mut state = State::new();
                    state.insert(key.clone(), RationalScalar::one());
                    // (a b c) -> (b a c) -> (b c a) -> (c b a).
                    let lhs = apply_entries(
                        &cbc,
                        0,
                        &apply_entries(&cac, 1, &apply_entries(&cab, 0, &state)),
                    );
                    // (a b c) -> (a c b) -> (c a b) -> (c b a).
                    let rhs = apply_entries(
                        &cab,
                        1,
                        &apply_entries(&cac, 0, &apply_entries(&cbc, 1, &state)),
                    );
                    assert_eq!(lhs, rhs, "YBE failed on {key:?} sigma {sigma}");
                }
            }
        }
    }
}

