//! Useful dominating paths against the dependency-graph paths, on small
//! graphs where both sides can be enumerated exhaustively.

mod common;

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;

use esdg_core::oracles::generate::{corpus, RandomGraphSpec};
use esdg_core::oracles::{
    eat_fixpoint, enumerate_arc_paths, enumerate_useful_dominating, fpd_by_repeated_eat,
    literal_dependency_arcs, OracleConfig,
};
use esdg_core::paths::{is_dominating, journey_time, TemporalPath};
use esdg_core::{build_esdg, EdgeId, TemporalGraph32};

/// Useful dominating paths from every source. Time strictly increases along
/// a path, so no path is longer than `m`.
fn all_useful_dominating(g: &TemporalGraph32) -> BTreeSet<Vec<EdgeId>> {
    let cfg = OracleConfig::default();
    (0..g.vertex_count() as u32)
        .flat_map(|s| enumerate_useful_dominating(g, s, g.edge_count(), &cfg).unwrap())
        .collect()
}

fn first_edge_dominates(g: &TemporalGraph32, path: &[EdgeId]) -> bool {
    let first = TemporalPath::new(g, vec![path[0]]).unwrap();
    is_dominating(g, &first, &first.route(g)).unwrap()
}

/// First edge, then the (vertex, arrival) reached after every hop.
fn signature(g: &TemporalGraph32, path: &[EdgeId]) -> (EdgeId, Vec<(u32, u32)>) {
    let hops = path.iter().map(|&id| {
        let e = g.edges()[id as usize];
        (e.v, e.arrival())
    });
    (path[0], hops.collect())
}

fn check_literal_correspondence(g: &TemporalGraph32) {
    let ud = all_useful_dominating(g);
    let literal = enumerate_arc_paths(&literal_dependency_arcs(g), g.edge_count());
    for p in &ud {
        assert!(
            literal.contains(p),
            "useful dominating path {p:?} has no literal counterpart"
        );
    }
    for p in &literal {
        assert_eq!(ud.contains(p), first_edge_dominates(g, p), "{p:?}");
    }
}

fn check_built_correspondence(g: &TemporalGraph32) {
    let e = build_esdg(g);
    e.check_invariants(g).unwrap();
    let built = enumerate_arc_paths(&common::arc_lists(&e), g.edge_count());
    let ud = all_useful_dominating(g);
    for p in &built {
        assert_eq!(ud.contains(p), first_edge_dominates(g, p), "{p:?}");
    }
    let built_sigs: BTreeSet<_> = built.iter().map(|p| signature(g, p)).collect();
    for p in &ud {
        assert!(
            built_sigs.contains(&signature(g, p)),
            "{p:?} has no built counterpart"
        );
    }
}

#[test]
fn seeded_distinct_departure_corpus_is_a_bijection() {
    let spec = RandomGraphSpec::small().with_distinct_departures();
    for (i, g) in corpus::<u32>(9100, 40, &spec).iter().enumerate() {
        let ud = all_useful_dominating(g);
        let literal = enumerate_arc_paths(&literal_dependency_arcs(g), g.edge_count());
        assert_eq!(ud, literal, "instance {i}");
        for p in &ud {
            let direct = g.edges()[p[p.len() - 1] as usize].arrival() - g.edges()[p[0] as usize].t;
            assert_eq!(journey_time(g, p).unwrap(), direct);
        }
        check_built_correspondence(g);
    }
}

#[test]
fn nine_stop_paths() {
    let g = esdg_core::fixtures::nine_stop::<u32>();
    check_literal_correspondence(&g);
    check_built_correspondence(&g);
    let ud = all_useful_dominating(&g);
    assert!(ud.contains(esdg_core::fixtures::nine_stop_paths::P.as_slice()));
    // the (v1, v2) edges departing at 3 differ only in duration; only the fastest dominates
    assert!(!ud.iter().any(|p| p[0] == 7 || p[0] == 8));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn literal_graph_matches_useful_dominating_paths(g in common::small_graphs()) {
        check_literal_correspondence(&g);
    }

    #[test]
    fn built_graph_matches_modulo_equal_arrivals(g in common::small_graphs()) {
        check_built_correspondence(&g);
    }

    #[test]
    fn useful_dominating_paths_attain_optimal_times(g in common::small_graphs(), rt in 0u32..=12) {
        let cfg = OracleConfig::default();
        for s in 0..g.vertex_count() as u32 {
            let paths = enumerate_useful_dominating(&g, s, g.edge_count(), &cfg).unwrap();
            let mut best_arrival: HashMap<u32, u32> = HashMap::new();
            let mut best_journey: HashMap<u32, u32> = HashMap::new();
            for p in &paths {
                let first = g.edges()[p[0] as usize];
                let last = g.edges()[p[p.len() - 1] as usize];
                if first.t >= rt {
                    let a = best_arrival.entry(last.v).or_insert(u32::MAX);
                    *a = (*a).min(last.arrival());
                }
                let j = best_journey.entry(last.v).or_insert(u32::MAX);
                *j = (*j).min(last.arrival() - first.t);
            }
            let eat = eat_fixpoint(&g, s, rt).unwrap();
            let fpd = fpd_by_repeated_eat(&g, s).unwrap();
            for z in 0..g.vertex_count() as u32 {
                if z == s {
                    continue;
                }
                prop_assert_eq!(best_arrival.get(&z).copied().unwrap_or(u32::MAX), eat[z as usize]);
                prop_assert_eq!(best_journey.get(&z).copied().unwrap_or(u32::MAX), fpd[z as usize]);
            }
        }
    }

    #[test]
    fn every_feasible_path_has_a_dominating_counterpart(g in common::small_graphs()) {
        // any time-respecting path is matched by a useful dominating one on the same
        // route with the same departure that arrives no later
        let ud: Vec<TemporalPath> =
            all_useful_dominating(&g).into_iter().map(|q| TemporalPath::new(&g, q).unwrap()).collect();
        for s in 0..g.vertex_count() as u32 {
            let mut stack: Vec<Vec<EdgeId>> = g.out_edges(s).iter().map(|&id| vec![id]).collect();
            while let Some(p) = stack.pop() {
                let path = TemporalPath::new(&g, p.clone()).unwrap();
                let (route, dep, arr) = (path.route(&g), path.departure(&g), path.arrival(&g));
                let matched = ud
                    .iter()
                    .any(|q| q.route(&g) == route && q.departure(&g) == dep && q.arrival(&g) <= arr);
                prop_assert!(matched, "{:?}", p);
                if p.len() < 4 {
                    let last = g.edges()[p[p.len() - 1] as usize];
                    for &next in g.out_edges(last.v) {
                        if g.edges()[next as usize].t >= last.arrival() {
                            let mut q = p.clone();
                            q.push(next);
                            stack.push(q);
                        }
                    }
                }
            }
        }
    }
}
