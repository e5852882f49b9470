//! Shared memoisation for the state-sum passes.
//!
//! Within one pass over a state space, the atom word of a strand depends
//! only on the indices of the crossings that touch that strand, so the
//! same words recur across states roughly `r^k` times for a diagram with
//! `k` crossings away from the strand and per-crossing range `r`.
//! Normal ordering dominates the per-state cost; caching it by word
//! collapses that redundancy.  Quantum traces of cached elements are
//! memoised alongside, keyed by the entry id and the dimension.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::reptheory::rep;
use crate::scalars::RationalScalar;
use crate::uqalg::{normal_order, AlgebraElement, Atom};

/// A normal-ordered word held by an [`OrderCache`].
///
/// The id is unique per distinct word within the owning cache and is
/// the key under which derived values (traces) are memoised.
#[derive(Clone)]
pub(super) struct Cached {
    /// Cache-unique id of the word.
    pub id: u64,
    /// The normal-ordered element.
    pub elem: Arc<AlgebraElement>,
}

/// Concurrency-safe memo of normal orderings and their quantum traces.
pub(super) struct OrderCache {
    words: Mutex<HashMap<Vec<Atom>, Cached>>,
    traces: Mutex<HashMap<(u64, u32), RationalScalar>>,
}

impl OrderCache {
    /// An empty cache.
    pub fn new() -> Self {
        OrderCache {
            words: Mutex::new(HashMap::new()),
            traces: Mutex::new(HashMap::new()),
        }
    }

    /// Normal order a word, reusing the result of a previous call with
    /// the same word when available.
    pub fn ordered(&self, word: &[Atom]) -> Cached {
        if let Some(hit) = self.words.lock().expect("order cache").get(word) {
            return hit.clone();
        }
        // Compute outside the lock; a racing thread may duplicate the
        // work, but only the first insertion is kept.
        let elem = Arc::new(normal_order(word));
        let mut map = self.words.lock().expect("order cache");
        let id = map.len() as u64;
        map.entry(word.to_vec())
            .or_insert(Cached { id, elem })
            .clone()
    }

    /// Quantum trace of a cached element in the irreducible of dimension
    /// `m`, memoised per (entry, dimension).
    pub fn qtrace(&self, x: &Cached, m: u32) -> RationalScalar {
        let key = (x.id, m);
        if let Some(hit) = self.traces.lock().expect("trace cache").get(&key) {
            return hit.clone();
        }
        let computed = rep(m).qtrace(&x.elem);
        self.traces
            .lock()
            .expect("trace cache")
            .entry(key)
            .or_insert(computed)
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_words_share_one_entry_and_one_trace() {
        let cache = OrderCache::new();
        let word = [Atom::SmallE, Atom::Fdiv(1), Atom::K(2)];
        let a = cache.ordered(&word);
        let b = cache.ordered(&word);
        assert_eq!(a.id, b.id, "same word must hit the same entry");
        assert_eq!(*a.elem, normal_order(&word), "cache must not alter the result");
        let t1 = cache.qtrace(&a, 2);
        let t2 = cache.qtrace(&b, 2);
        assert_eq!(t1, t2, "memoised trace must be stable");
        assert_eq!(t1, rep(2).qtrace(&a.elem), "memoised trace must match a direct evaluation");
    }

    #[test]
    fn distinct_words_get_distinct_ids() {
        let cache = OrderCache::new();
        let a = cache.ordered(&[Atom::SmallE]);
        let b = cache.ordered(&[Atom::Fdiv(1)]);
        assert_ne!(a.id, b.id, "distinct words must not collide");
    }
}
