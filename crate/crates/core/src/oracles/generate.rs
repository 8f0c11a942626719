//! Seeded instance generators for property tests, acceptance runs and benches.
//!
//! All randomness flows through [`SplitMix64`], so a seed pins an instance on
//! every platform.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
pub use rand_xoshiro::SplitMix64;

use crate::graph::{TemporalEdge, TemporalGraph, VertexId};
use crate::time::Timestamp;

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomGraphSpec {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub min_edges: usize,
    pub max_edges: usize,
    pub max_departure: u32,
    pub max_duration: u32,
    /// Never put two edges with the same departure on one static pair.
    pub distinct_departures: bool,
}

impl RandomGraphSpec {
    /// n in [2, 50], m in [1, 500], t in [0, 100], λ in [1, 10].
    pub fn corpus() -> Self {
        RandomGraphSpec {
            min_vertices: 2,
            max_vertices: 50,
            min_edges: 1,
            max_edges: 500,
            max_departure: 100,
            max_duration: 10,
            distinct_departures: false,
        }
    }

    /// n in [2, 8], m in [1, 20]; small enough for exhaustive path enumeration.
    pub fn small() -> Self {
        RandomGraphSpec {
            max_vertices: 8,
            max_edges: 20,
            ..Self::corpus()
        }
    }

    pub fn with_distinct_departures(self) -> Self {
        RandomGraphSpec {
            distinct_departures: true,
            ..self
        }
    }
}

/// Uniform endpoints without self-loops, uniform departures and durations.
pub fn random_graph<T: Timestamp, R: Rng>(rng: &mut R, spec: &RandomGraphSpec) -> TemporalGraph<T> {
    let n = rng.gen_range(spec.min_vertices.max(2)..=spec.max_vertices.max(2));
    let mut m = rng.gen_range(spec.min_edges..=spec.max_edges);
    if spec.distinct_departures {
        m = m.min(n * (n - 1) * (spec.max_departure as usize + 1));
    }
    let mut used: HashSet<(VertexId, VertexId, u32)> = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.gen_range(0..n) as VertexId;
        let mut v = rng.gen_range(0..n - 1) as VertexId;
        if v >= u {
            v += 1;
        }
        let t = rng.gen_range(0..=spec.max_departure);
        let lambda = rng.gen_range(1..=spec.max_duration);
        if spec.distinct_departures && !used.insert((u, v, t)) {
            continue;
        }
        edges.push(TemporalEdge::new(u, v, time(t), time(lambda)));
    }
    TemporalGraph::new(n, edges).expect("generated edges are valid")
}

/// The seeded corpus: instance `i` is drawn from `seed + i`.
pub fn corpus<T: Timestamp>(
    seed: u64,
    count: usize,
    spec: &RandomGraphSpec,
) -> Vec<TemporalGraph<T>> {
    (0..count as u64)
        .map(|i| random_graph(&mut rng(seed.wrapping_add(i)), spec))
        .collect()
}

/// Timetable made of bus-like lines: every line is a fixed sequence of stops
/// drawn from a shared pool, served by trips at a regular headway.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainSpec {
    pub stops: usize,
    pub lines: usize,
    pub stops_per_line: usize,
    pub trips_per_line: usize,
    pub headway: u32,
    pub max_hop: u32,
}

impl ChainSpec {
    /// A timetable with roughly `target_edges` connections and 20 trips per line.
    pub fn for_edge_count(target_edges: usize) -> Self {
        let stops_per_line = 11;
        let trips_per_line = 20;
        let per_line = (stops_per_line - 1) * trips_per_line;
        let lines = target_edges.div_ceil(per_line).max(1);
        ChainSpec {
            stops: (lines * 4).max(stops_per_line),
            lines,
            stops_per_line,
            trips_per_line,
            headway: 5,
            max_hop: 10,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.lines * self.trips_per_line * (self.stops_per_line - 1)
    }
}

pub fn timetable_chains<T: Timestamp, R: Rng>(rng: &mut R, spec: &ChainSpec) -> TemporalGraph<T> {
    let pool: Vec<VertexId> = (0..spec.stops as VertexId).collect();
    let mut edges = Vec::with_capacity(spec.edge_count());
    for _ in 0..spec.lines {
        let stops: Vec<VertexId> = pool
            .choose_multiple(rng, spec.stops_per_line)
            .copied()
            .collect();
        let hops: Vec<u32> = (1..spec.stops_per_line)
            .map(|_| rng.gen_range(1..=spec.max_hop))
            .collect();
        let dwell: Vec<u32> = (1..spec.stops_per_line)
            .map(|_| rng.gen_range(0..=2))
            .collect();
        let offset = rng.gen_range(0..spec.headway.max(1));
        for trip in 0..spec.trips_per_line as u32 {
            let mut t = offset + trip * spec.headway;
            for (i, pair) in stops.windows(2).enumerate() {
                edges.push(TemporalEdge::new(pair[0], pair[1], time(t), time(hops[i])));
                t += hops[i] + dwell[i];
            }
        }
    }
    TemporalGraph::new(spec.stops, edges).expect("generated timetable is valid")
}

fn time<T: Timestamp>(v: u32) -> T {
    T::from_u64(v as u64).expect("small times fit every width")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let a: Vec<TemporalGraph<u32>> = corpus(11, 5, &RandomGraphSpec::corpus());
        let b: Vec<TemporalGraph<u32>> = corpus(11, 5, &RandomGraphSpec::corpus());
        assert_eq!(a, b);
    }

    #[test]
    fn respects_bounds() {
        let spec = RandomGraphSpec::small().with_distinct_departures();
        for g in corpus::<u32>(3, 50, &spec) {
            assert!((2..=8).contains(&g.vertex_count()));
            assert!((1..=20).contains(&g.edge_count()));
            let mut seen = HashSet::new();
            for e in g.edges() {
                assert_ne!(e.u, e.v);
                assert!(e.t <= 100 && (1..=10).contains(&e.lambda));
                assert!(seen.insert((e.u, e.v, e.t)));
            }
        }
    }

    #[test]
    fn chain_edge_count() {
        let spec = ChainSpec::for_edge_count(10_000);
        let g: TemporalGraph<u32> = timetable_chains(&mut rng(1), &spec);
        assert_eq!(g.edge_count(), spec.edge_count());
        assert!(g.edge_count() >= 10_000 && g.edge_count() < 10_200);
    }
}
