//! Temporary stage-timing probe for the state-sum pipeline.

use std::collections::HashSet;
use std::time::Instant;

use qsl2::statesum::{labeled_state, state_space};
use qsl2::tangle;
use qsl2::uqalg::push_d_left;

fn main() {
    let d = tangle::borromean_p();
    let t = d.traverse().unwrap();
    let cutoff: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let ranges = vec![cutoff; t.crossings.len()];
    let states = state_space(&ranges);
    println!("states: {}", states.len());

    let mut t_label = 0.0f64;
    let mut t_push = 0.0f64;
    let mut t_hash = 0.0f64;
    let mut distinct: HashSet<Vec<qsl2::uqalg::Atom>> = HashSet::new();
    let mut nonk: Vec<HashSet<Vec<qsl2::uqalg::Atom>>> =
        vec![HashSet::new(); d.components];
    let mut withk: Vec<HashSet<(Vec<qsl2::uqalg::Atom>, i64)>> =
        vec![HashSet::new(); d.components];
    let mut total_items = 0usize;
    for s in &states {
        let i0 = Instant::now();
        let labels = labeled_state(&t, d.components, s);
        t_label += i0.elapsed().as_secs_f64();
        let i1 = Instant::now();
        let pushed = push_d_left(&labels.strands);
        t_push += i1.elapsed().as_secs_f64();
        let i2 = Instant::now();
        for (i, w) in pushed.words.iter().enumerate() {
            total_items += w.len();
            distinct.insert(w.clone());
            let mut bare = Vec::new();
            let mut ktot = 0i64;
            for a in w {
                if let qsl2::uqalg::Atom::K(j) = a {
                    ktot += j;
                } else {
                    bare.push(*a);
                }
            }
            withk[i].insert((bare.clone(), ktot));
            nonk[i].insert(bare);
        }
        t_hash += i2.elapsed().as_secs_f64();
    }
    println!("label: {t_label:.2}s  push: {t_push:.2}s  hash: {t_hash:.2}s");
    println!(
        "distinct words: {}  avg word len: {:.1}",
        distinct.len(),
        total_items as f64 / (3.0 * states.len() as f64)
    );
    for i in 0..d.components {
        println!(
            "strand {}: distinct K-free {}  (K-free, Ktotal) {}",
            i,
            nonk[i].len(),
            withk[i].len()
        );
    }
}
