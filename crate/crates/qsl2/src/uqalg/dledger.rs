//! Cartan `D`-factor bookkeeping for the state sum.
//!
//! Every crossing contributes a two-legged factor `D^eps` with
//! `D = q^(H (x) H / 4)`, one leg on each of the two strand words involved
//! (possibly the same strand).  `D` commutes with Cartan atoms and with
//! other `D`-legs, and moves past a weight-`d` atom at the cost of a Cartan
//! correction on the partner leg:
//!
//! ```text
//! (x (x) 1) D^eps = D^eps (x (x) K^(-eps d)),     d = |x|,
//! (1 (x) y) D^eps = D^eps (K^(-eps d) (x) y).
//! ```
//!
//! [`push_d_left`] moves every leg to the far left of its strand word,
//! depositing the corrections in place, and extracts the accumulated `D`
//! powers into a symmetric integer [`DLedger`].  Corrections have weight 0,
//! so no correction ever spawns another and the process terminates.

use super::atoms::Atom;
use super::elem::{normal_order, AlgebraElement};

/// One item of a strand's label word: a generator atom or one leg of a
/// two-legged `D` factor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StrandItem {
    /// A generator atom.
    Atom(Atom),
    /// One leg of the `D`-pair with the given registry index; `end`
    /// distinguishes the two legs (0 or 1).
    Leg {
        /// Index into the pair registry.
        pair: usize,
        /// Which of the two legs this is.
        end: u8,
    },
}

/// Registry entry for one `D^eps` factor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DPair {
    /// The exponent `eps` (`+1` or `-1` from a single crossing).
    pub eps: i64,
}

/// Labeled strand words before `D`-extraction.
#[derive(Clone, Debug, Default)]
pub struct LabeledStrands {
    /// One word per strand.
    pub strands: Vec<Vec<StrandItem>>,
    /// `D`-pair registry, indexed by the `pair` field of legs.
    pub pairs: Vec<DPair>,
}

/// Accumulated `D` exponents by strand pair.
///
/// The entry `(i, j)` (symmetric) is the total exponent of
/// `q^(H_i H_j / 4)`; diagonal entries arise from pairs with both legs on
/// one strand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DLedger {
    /// Number of strands.
    pub n: usize,
    /// Symmetric exponent matrix, `exponents[i][j] == exponents[j][i]`.
    pub exponents: Vec<Vec<i64>>,
}

impl DLedger {
    /// The trivial ledger on `n` strands.
    pub fn trivial(n: usize) -> Self {
        DLedger {
            n,
            exponents: vec![vec![0; n]; n],
        }
    }

    /// True iff every exponent vanishes.
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|row| row.iter().all(|&e| e == 0))
    }

    fn record(&mut self, i: usize, j: usize, eps: i64) {
        if i == j {
            self.exponents[i][i] += eps;
        } else {
            self.exponents[i][j] += eps;
            self.exponents[j][i] += eps;
        }
    }
}

/// Result of pushing all `D`-legs left: the extracted ledger and the
/// remaining pure atom words, one per strand.
#[derive(Clone, Debug)]
pub struct PushedStrands {
    /// Extracted `D` exponents.
    pub ledger: DLedger,
    /// Remaining atom word per strand, with corrections deposited in place.
    pub words: Vec<Vec<Atom>>,
}

impl PushedStrands {
    /// Normal order every strand word.
    pub fn normal_ordered(&self) -> Vec<AlgebraElement> {
        self.words.iter().map(|w| normal_order(w)).collect()
    }
}

fn find_leg(strands: &[Vec<StrandItem>], pair: usize, end: u8) -> (usize, usize) {
    for (s, word) in strands.iter().enumerate() {
        for (i, item) in word.iter().enumerate() {
            if let StrandItem::Leg { pair: p, end: e } = item {
                if *p == pair && *e == end {
                    return (s, i);
                }
            }
        }
    }
    panic!("leg ({pair}, {end}) not found");
}

/// Move every `D`-leg to the far left of its strand, deposit Cartan
/// corrections next to partner legs, and collect the extracted exponents.
///
/// # Panics
/// Panics if a registered pair's legs are missing from the strand words.
pub fn push_d_left(input: &LabeledStrands) -> PushedStrands {
    let mut strands = input.strands.clone();
    let mut ledger = DLedger::trivial(strands.len());
    for pair in 0..input.pairs.len() {
        let eps = input.pairs[pair].eps;
        for end in 0..2u8 {
            // Walk the leg to index 0 one swap at a time, re-scanning
            // positions after each mutation; strand words are tiny.
            loop {
                let (s, i) = find_leg(&strands, pair, end);
                if i == 0 {
                    break;
                }
                let left = strands[s][i - 1];
                strands[s].swap(i - 1, i);
                if let StrandItem::Atom(a) = left {
                    let d = a.degree();
                    if d != 0 {
                        let (ps, pi) = find_leg(&strands, pair, 1 - end);
                        strands[ps].insert(pi + 1, StrandItem::Atom(Atom::K(-eps * d)));
                    }
                }
            }
        }
        let (s0, _) = find_leg(&strands, pair, 0);
        let (s1, _) = find_leg(&strands, pair, 1);
        for word in &mut strands {
            word.retain(
                |item| !matches!(item, StrandItem::Leg { pair: p, .. } if *p == pair),
            );
        }
        ledger.record(s0, s1, eps);
    }
    let words = strands
        .into_iter()
        .map(|word| {
            word.into_iter()
                .map(|item| match item {
                    StrandItem::Atom(a) => a,
                    StrandItem::Leg { .. } => unreachable!("all legs extracted"),
                })
                .collect()
        })
        .collect();
    PushedStrands { ledger, words }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::RationalScalar;

    fn leg(pair: usize, end: u8) -> StrandItem {
        StrandItem::Leg { pair, end }
    }

    fn at(a: Atom) -> StrandItem {
        StrandItem::Atom(a)
    }

    #[test]
    fn no_legs_is_identity() {
        let input = LabeledStrands {
            strands: vec![vec![at(Atom::E), at(Atom::K(2))], vec![at(Atom::F)]],
            pairs: vec![],
        };
        let out = push_d_left(&input);
        assert!(out.ledger.is_trivial());
        assert_eq!(out.words, vec![vec![Atom::E, Atom::K(2)], vec![Atom::F]]);
    }

    #[test]
    fn single_pair_with_atom_on_one_side() {
        // Strand 0: e then leg; strand 1: leg then f.
        // Moving the strand-0 leg past e (weight 1) deposits K^(-eps) right
        // of the strand-1 leg, i.e. in front of f.
        let input = LabeledStrands {
            strands: vec![
                vec![at(Atom::SmallE), leg(0, 0)],
                vec![leg(0, 1), at(Atom::SmallF)],
            ],
            pairs: vec![DPair { eps: 1 }],
        };
        let out = push_d_left(&input);
        assert_eq!(out.ledger.exponents[0][1], 1);
        assert_eq!(out.words[0], vec![Atom::SmallE]);
        assert_eq!(out.words[1], vec![Atom::K(-1), Atom::SmallF]);
    }

    #[test]
    fn corrections_land_right_of_partner_legs() {
        // Strand 1 word: f, then the leg, then e.  The strand-0 leg passes
        // Fdiv(2) (weight -2, eps -1), so K^(-(-1)(-2)) = K^(-2) lands right
        // of the strand-1 leg: between f and e after extraction.  The
        // strand-1 leg then passes f (weight -1) and deposits K^-1 right of
        // the strand-0 leg, which by then sits at the front.
        let input = LabeledStrands {
            strands: vec![
                vec![at(Atom::Fdiv(2)), leg(0, 0)],
                vec![at(Atom::SmallF), leg(0, 1), at(Atom::SmallE)],
            ],
            pairs: vec![DPair { eps: -1 }],
        };
        let out = push_d_left(&input);
        assert_eq!(out.ledger.exponents[0][1], -1);
        assert_eq!(out.words[0], vec![Atom::K(-1), Atom::Fdiv(2)]);
        assert_eq!(out.words[1], vec![Atom::SmallF, Atom::K(-2), Atom::SmallE]);
    }

    #[test]
    fn self_pair_matches_direct_commutation() {
        // x D = D x q^(-eps d^2) K^(-2 eps d) for a self-pair and a single
        // weight-d atom to the left of both legs.
        for (atom, d) in [(Atom::SmallE, 1i64), (Atom::Fdiv(2), -2i64)] {
            for eps in [1i64, -1] {
                let input = LabeledStrands {
                    strands: vec![vec![at(atom), leg(0, 0), leg(0, 1)]],
                    pairs: vec![DPair { eps }],
                };
                let out = push_d_left(&input);
                assert_eq!(out.ledger.exponents[0][0], eps);
                let got = normal_order(&out.words[0]);
                let expect = normal_order(&[atom, Atom::K(-2 * eps * d)])
                    .scale(&RationalScalar::q_pow(-eps * d * d));
                assert_eq!(got, expect, "atom={atom:?} eps={eps}");
            }
        }
    }

    #[test]
    fn pairs_pass_pairs_freely() {
        // Two interleaved pairs on two strands with no atoms: both extract,
        // leaving empty words.
        let input = LabeledStrands {
            strands: vec![vec![leg(0, 0), leg(1, 0)], vec![leg(1, 1), leg(0, 1)]],
            pairs: vec![DPair { eps: 1 }, DPair { eps: -1 }],
        };
        let out = push_d_left(&input);
        assert_eq!(out.ledger.exponents[0][1], 0);
        assert!(out.words.iter().all(|w| w.is_empty()));
    }

    #[test]
    fn push_is_idempotent_on_output() {
        let input = LabeledStrands {
            strands: vec![
                vec![at(Atom::SmallE), leg(0, 0), at(Atom::Fdiv(1)), leg(1, 0)],
                vec![leg(1, 1), at(Atom::SmallF), leg(0, 1), at(Atom::K(3))],
            ],
            pairs: vec![DPair { eps: 1 }, DPair { eps: -1 }],
        };
        let out = push_d_left(&input);
        let again = push_d_left(&LabeledStrands {
            strands: out
                .words
                .iter()
                .map(|w| w.iter().map(|a| at(*a)).collect())
                .collect(),
            pairs: vec![],
        });
        assert!(again.ledger.is_trivial());
        assert_eq!(again.words, out.words);
    }
}
