//! Closed formulas against the literal digraph, exhaustively on small inputs.

use fcrystal_core::digraph::{pair_edges, pair_edges_case_table};
use fcrystal_core::{CircularSeq, LevelDigraph};
use itertools::Itertools;

fn all_sequences(s: usize, lo: i64, hi: i64) -> impl Iterator<Item = Vec<i64>> {
    (0..s).map(|_| lo..=hi).multi_cartesian_product()
}

#[test]
fn formula_matches_oracle_for_short_sequences() {
    let mut checked = 0u64;
    for s in 1..=5 {
        for entries in all_sequences(s, -3, 3) {
            let seq = CircularSeq::new(entries.clone()).unwrap();
            for m in 1..=5 {
                let g = LevelDigraph::build(&seq, m).unwrap().propagate_zeros().unwrap();
                let stats = g.classify_components();
                assert_eq!(stats.free_linear, seq.linear_count(m), "ℓ {entries:?} m={m}");
                assert_eq!(stats.circular, seq.circular_count(m), "c {entries:?} m={m}");
                assert_eq!(stats.circular_edges, stats.circular * s as u64, "w {entries:?} m={m}");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 98_035);
}

#[test]
fn unified_rule_matches_case_table() {
    for m in 1..=6usize {
        let b = m as i64 + 2;
        for x in -b..=b {
            for y in -b..=b {
                assert_eq!(pair_edges(x, y, m), pair_edges_case_table(x, y, m), "({x},{y}) m={m}");
            }
        }
    }
}

#[test]
fn clamping_is_invisible_to_the_oracle() {
    for m in 1..=4usize {
        let c = m as i64 + 1;
        for entries in all_sequences(3, -(c + 3), c + 3) {
            let clamped: Vec<i64> = entries.iter().map(|&e| e.clamp(-c, c)).collect();
            let raw = CircularSeq::new(entries.clone()).unwrap();
            let cl = CircularSeq::new(clamped).unwrap();
            let a = LevelDigraph::build(&raw, m).unwrap().propagate_zeros().unwrap();
            let b = LevelDigraph::build(&cl, m).unwrap().propagate_zeros().unwrap();
            assert_eq!(a.classify_components(), b.classify_components(), "{entries:?} m={m}");
        }
    }
}

#[test]
fn circular_components_have_one_vertex_per_position() {
    for entries in all_sequences(4, -2, 2) {
        let seq = CircularSeq::new(entries).unwrap();
        let g = LevelDigraph::build(&seq, 4).unwrap();
        // every cycle is a zero-weight loop visiting each position once
        let stats = g.clone().propagate_zeros().unwrap().classify_components();
        assert_eq!(stats.circular_edges, stats.circular * 4);
        assert!(g.edge_count() <= g.vertex_count());
    }
}
