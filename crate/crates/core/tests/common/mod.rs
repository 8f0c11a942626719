#![allow(dead_code)]

use proptest::prelude::*;

use esdg_core::{EdgeId, Esdg, TemporalEdge, TemporalGraph32};

/// Graphs with `2..=max_n` vertices and up to `max_m` edges, no self-loops.
pub fn graphs(
    max_n: u32,
    max_m: usize,
    max_t: u32,
    max_lambda: u32,
) -> impl Strategy<Value = TemporalGraph32> {
    (2..=max_n).prop_flat_map(move |n| {
        let edge = (0..n, 1..n, 0..=max_t, 1..=max_lambda)
            .prop_map(move |(u, d, t, l)| TemporalEdge::new(u, (u + d) % n, t, l));
        prop::collection::vec(edge, 0..=max_m)
            .prop_map(move |edges| TemporalGraph32::new(n as usize, edges).unwrap())
    })
}

pub fn corpus_graphs() -> impl Strategy<Value = TemporalGraph32> {
    graphs(50, 500, 100, 10)
}

pub fn small_graphs() -> impl Strategy<Value = TemporalGraph32> {
    graphs(8, 20, 12, 4)
}

/// Arc lists of a built graph, indexed by node id.
pub fn arc_lists<T>(esdg: &Esdg<T>) -> Vec<Vec<EdgeId>>
where
    T: esdg_core::Timestamp,
{
    (0..esdg.node_count() as u32)
        .map(|x| esdg.neighbors(x).to_vec())
        .collect()
}
