//! R-matrix state sum: universal invariants and colored Jones values.
//!
//! The pipeline has four steps.  First, a state assigns one index to each
//! crossing and the R-matrix summand of that index is split into its two
//! half-labels, placed on the under- and over-strand with antipodes for
//! downward-walked passes and Cartan labels on leftward turns.  Second,
//! the diagonal `D`-pairs are pushed to a global ledger, which is a
//! state-independent record of linking numbers and framings.  Third, the
//! remaining strand words are normal ordered, giving one pure tensor of
//! algebra elements per state.  Fourth, the tensors are summed over all
//! states below a truncation bound; quantum traces in chosen colors then
//! collapse the sum to a colored Jones value, and an independent
//! matrix-valued evaluation of the same diagram cross-checks it.

mod brunnian;
mod invariant;
mod jones;
mod labels;
mod memo;

pub use brunnian::{verify_brunnian_membership, BrunnianReport, StrandVerdict};
pub use invariant::{state_term, universal_invariant, StateTerm, TensorElement, UniversalInvariant};
pub use jones::{colored_jones_matrix, colored_jones_universal, colored_jones_universal_many};
pub use labels::{labeled_state, state_space, truncation_ranges, StateLabels, StateSumError};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reptheory::{balanced_int, Color};
    use crate::scalars::RationalScalar;
    use crate::tangle;
    use crate::uqalg::{normal_order, AlgebraElement, Atom};

    fn word(atoms: &[Atom]) -> AlgebraElement {
        normal_order(atoms)
    }

    fn sign_pow(n: u32) -> RationalScalar {
        RationalScalar::from_int(if n % 2 == 0 { 1 } else { -1 })
    }

    /// Closed form for the clasp diagram: with upper-crossing index `m`
    /// and lower index `n`, the state contributes the pure tensor
    /// `(-1)^(m+n) q^(-n+2mn) (Fdiv(m) K^(-2n) e^n) (x) (Fdiv(n) K^(-2m) e^m)`
    /// under a ledger with both off-diagonal entries `-2`.  The per-strand
    /// factors are compared as a tensor because only the product of their
    /// scalars is canonical.
    #[test]
    fn clasp_state_terms_match_closed_form() {
        let d = tangle::clasp_b();
        for m in 0..=3u32 {
            for n in 0..=3u32 {
                let got = state_term(&d, &[m, n]).expect("valid state");
                assert_eq!(got.ledger.exponents, vec![vec![0, -2], vec![-2, 0]]);
                let mi = m as i64;
                let ni = n as i64;
                let scalar = sign_pow(m + n).mul(&RationalScalar::q_pow(-ni + 2 * mi * ni));
                let mut w0 = vec![Atom::Fdiv(m), Atom::K(-2 * ni)];
                w0.extend(std::iter::repeat(Atom::SmallE).take(n as usize));
                let mut w1 = vec![Atom::Fdiv(n), Atom::K(-2 * mi)];
                w1.extend(std::iter::repeat(Atom::SmallE).take(m as usize));
                let mut want = TensorElement::zero(2);
                want.add_pure(&[word(&w0).scale(&scalar), word(&w1)]);
                let mut have = TensorElement::zero(2);
                have.add_pure(&got.strands);
                assert_eq!(have, want, "state m={m} n={n}");
            }
        }
    }

    /// Closed form for the six-crossing Borromean diagram: the truncated
    /// invariant is the sextuple sum over indices `m_i, n_i` of
    ///
    /// ```text
    /// q^(m3+n3) (-1)^(n1+n2+n3) q^(sum_i -m_i(m_i+1)/2 - n_i + m_i m_(i+1) - 2 m_i n_(i-1))
    ///   Fdiv(n3) e^m1 Fdiv(m3) e^n1 K^-2m2
    ///   (x) Fdiv(n1) e^m2 Fdiv(m1) e^n2 K^-2m3
    ///   (x) Fdiv(n2) e^m3 Fdiv(m2) e^n3 K^-2m1
    /// ```
    ///
    /// with subscripts mod 3, and the ledger is trivial.  The sum over
    /// all crossing states below a cutoff equals the formula restricted
    /// to indices below the same bound, because each formula index is
    /// one crossing index.
    #[test]
    fn borromean_tb_invariant_matches_closed_form() {
        let tb = tangle::borromean_tb();
        let inv = universal_invariant(&tb, 3).expect("valid");
        assert!(inv.ledger.is_trivial());
        let mut want = TensorElement::zero(3);
        let idx = [0u32, 1, 2];
        for m1 in idx {
            for m2 in idx {
                for m3 in idx {
                    for n1 in idx {
                        for n2 in idx {
                            for n3 in idx {
                                let ms = [m1 as i64, m2 as i64, m3 as i64];
                                let ns = [n1 as i64, n2 as i64, n3 as i64];
                                let mut vexp = 2 * (ms[2] + ns[2]);
                                for i in 0..3 {
                                    let ip = (i + 1) % 3;
                                    let im = (i + 2) % 3;
                                    vexp += -ms[i] * (ms[i] + 1) - 2 * ns[i]
                                        + 2 * ms[i] * ms[ip]
                                        - 4 * ms[i] * ns[im];
                                }
                                let scalar =
                                    sign_pow(n1 + n2 + n3).mul(&RationalScalar::v_pow(vexp));
                                let factor = |np: u32, me: u32, mp: u32, ne: u32, mn: i64| {
                                    let mut w = vec![Atom::Fdiv(np)];
                                    w.extend(std::iter::repeat(Atom::SmallE).take(me as usize));
                                    w.push(Atom::Fdiv(mp));
                                    w.extend(std::iter::repeat(Atom::SmallE).take(ne as usize));
                                    w.push(Atom::K(-2 * mn));
                                    word(&w)
                                };
                                let x1 = factor(n3, m1, m3, n1, ms[1]);
                                let x2 = factor(n1, m2, m1, n2, ms[2]);
                                let x3 = factor(n2, m3, m2, n3, ms[0]);
                                want.add_pure(&[x1.scale(&scalar), x2, x3]);
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(inv.tensor, want);
    }

    #[test]
    fn trivial_tangle_invariant_is_one() {
        let d = tangle::trivial(2);
        let inv = universal_invariant(&d, 5).expect("valid");
        assert!(inv.ledger.is_trivial());
        assert_eq!(inv.tensor.terms.len(), 1);
        let coeff = inv
            .tensor
            .terms
            .get(&vec![(0, 0, 0), (0, 0, 0)])
            .expect("identity term");
        assert!(coeff.is_one());
    }

    #[test]
    fn state_length_is_validated() {
        let d = tangle::clasp_b();
        assert!(matches!(
            state_term(&d, &[0]),
            Err(StateSumError::StateLength {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn both_routes_give_quantum_dimensions_on_unknots() {
        let d = tangle::trivial(1);
        for m in 1..=5u32 {
            let colors = vec![Color::irreducible(m)];
            let qdim = RationalScalar::from_laurent(balanced_int(m));
            let uni = colored_jones_universal(&d, &colors).expect("valid");
            let mat = colored_jones_matrix(&d, &colors).expect("valid");
            assert_eq!(uni, qdim, "universal m={m}");
            assert_eq!(mat, qdim, "matrix m={m}");
        }
    }

    #[test]
    fn matrix_route_handles_zigzags() {
        // A bottom tangle isotopic to the unknot whose diagram walks
        // through an extra cup/cap pair; zigzag cancellation must leave
        // the quantum dimension.
        let d = tangle::parse("tangle zigzag components=1\n| cup |\ncap | |\ncap\n")
            .expect("valid");
        for m in 1..=4u32 {
            let colors = vec![Color::irreducible(m)];
            let qdim = RationalScalar::from_laurent(balanced_int(m));
            assert_eq!(
                colored_jones_matrix(&d, &colors).expect("valid"),
                qdim,
                "matrix m={m}"
            );
            assert_eq!(
                colored_jones_universal(&d, &colors).expect("valid"),
                qdim,
                "universal m={m}"
            );
        }
    }

    #[test]
    fn routes_agree_on_split_diagrams() {
        for n in 2..=3usize {
            let d = tangle::trivial(n);
            let colors: Vec<Color> = (0..n)
                .map(|i| Color::irreducible(1 + ((i as u32) % 3)))
                .collect();
            let uni = colored_jones_universal(&d, &colors).expect("valid");
            let mat = colored_jones_matrix(&d, &colors).expect("valid");
            assert_eq!(uni, mat, "n={n}");
        }
    }

    #[test]
    fn routes_agree_on_the_clasp() {
        // Nonzero linking exercises the coupled diagonal closure on the
        // universal side and the crossing tensors on the matrix side.
        let d = tangle::clasp_b();
        for m1 in 1..=3u32 {
            for m2 in 1..=3u32 {
                let colors = vec![Color::irreducible(m1), Color::irreducible(m2)];
                let uni = colored_jones_universal(&d, &colors).expect("valid");
                let mat = colored_jones_matrix(&d, &colors).expect("valid");
                assert_eq!(uni, mat, "colors ({m1},{m2})");
            }
        }
    }

    #[test]
    fn routes_agree_on_borromean_diagrams() {
        for d in [tangle::borromean_tb(), tangle::borromean_p()] {
            for m1 in 1..=2u32 {
                for m2 in 1..=2u32 {
                    for m3 in 1..=2u32 {
                        let colors = vec![
                            Color::irreducible(m1),
                            Color::irreducible(m2),
                            Color::irreducible(m3),
                        ];
                        let uni = colored_jones_universal(&d, &colors).expect("valid");
                        let mat = colored_jones_matrix(&d, &colors).expect("valid");
                        assert_eq!(uni, mat, "{} colors ({m1},{m2},{m3})", d.name);
                    }
                }
            }
        }
    }

    #[test]
    fn borromean_presentations_share_jones_values() {
        // The six-crossing and ten-crossing presentations are diagrams of
        // the same tangle up to isotopy and so must produce identical
        // values in every coloring.
        let tb = tangle::borromean_tb();
        let p = tangle::borromean_p();
        let tuples: Vec<Vec<Color>> = [(1, 1, 2), (2, 2, 2), (2, 3, 2)]
            .iter()
            .map(|&(m1, m2, m3)| {
                vec![
                    Color::irreducible(m1),
                    Color::irreducible(m2),
                    Color::irreducible(m3),
                ]
            })
            .collect();
        let a = colored_jones_universal_many(&tb, &tuples).expect("valid");
        let b = colored_jones_universal_many(&p, &tuples).expect("valid");
        assert_eq!(a, b);
    }

    #[test]
    fn brunnian_membership_verifies_on_the_brunnian_presentation() {
        // In the ten-crossing presentation the first component carries
        // all divided powers, so every state certifies: strand 1 in the
        // even-Cartan integral form, strands 2 and 3 in the rescaled
        // even form.  Appending a split arc breaks the pattern: the new
        // component is not in Brunnian form and the remaining strands
        // carry divided powers that the rescaled form rejects.
        let p = tangle::borromean_p();
        let report = verify_brunnian_membership(&p, 1, 2).expect("valid");
        assert!(report.brunnian_form);
        assert_eq!(report.states_checked, 1024);
        assert!(report.verified(), "failures: {:?}", report.failures.first());
        assert!(report.witness_terms > 0);

        let arc = tangle::borromean_plus_arc();
        let report = verify_brunnian_membership(&arc, 4, 2).expect("valid");
        assert!(!report.brunnian_form);
        assert!(!report.verified());
    }

    #[test]
    fn routes_agree_on_kinked_unknots() {
        // A single-component diagram with one self-crossing.  The framing
        // contribution exercises the diagonal ledger coupling on the
        // universal side and a crossing flanked by turns on the matrix
        // side.  Opposite kinks carry inverse twists, so their values
        // multiply to the square of the quantum dimension.
        use crate::tangle::{Cell, Diagram, Row};
        let row = |cells: Vec<Cell>| Row { cells };
        let kink = |positive: bool| Diagram {
            name: format!("kink{}", if positive { "+" } else { "-" }),
            components: 1,
            rows: vec![
                row(vec![Cell::Vertical, Cell::Vertical, Cell::Cup]),
                row(vec![
                    Cell::Vertical,
                    if positive {
                        Cell::PositiveCrossing
                    } else {
                        Cell::NegativeCrossing
                    },
                    Cell::Vertical,
                ]),
                row(vec![Cell::Vertical, Cell::Cap, Cell::Vertical]),
                row(vec![Cell::Cap]),
            ],
        };
        for m in 1..=3u32 {
            let colors = vec![Color::irreducible(m)];
            let mut vals = Vec::new();
            for positive in [true, false] {
                let d = kink(positive);
                let u = colored_jones_universal(&d, &colors).expect("valid");
                let r = colored_jones_matrix(&d, &colors).expect("valid");
                assert_eq!(u, r, "kink positive={positive}, m={m}");
                vals.push(u);
            }
            let qdim = RationalScalar::from_laurent(balanced_int(m));
            assert_eq!(vals[0].mul(&vals[1]), qdim.mul(&qdim), "m={m}");
        }
    }

    #[test]
    fn unit_color_collapses_borromean_values() {
        // Coloring any Borromean component with the trivial representation
        // splits the value into the product of the remaining quantum
        // dimensions.
        let tb = tangle::borromean_tb();
        for slot in 0..3usize {
            for m in 1..=3u32 {
                let mut colors = vec![Color::irreducible(m); 3];
                colors[slot] = Color::irreducible(1);
                let got = colored_jones_universal(&tb, &colors).expect("valid");
                let qdim = RationalScalar::from_laurent(balanced_int(m));
                assert_eq!(got, qdim.mul(&qdim), "slot={slot} m={m}");
            }
        }
    }
}
