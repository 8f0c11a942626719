//! Slow reference implementations used to validate the engines.
//!
//! Nothing in here touches the ESDG: every function works directly on the
//! temporal graph from the definitions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, TemporalGraph, VertexId};
use crate::paths::{is_useful_dominating_with_cap, TemporalPath, DEFAULT_ENUMERATION_CAP};
use crate::time::Timestamp;

pub mod generate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Cap on fixpoint passes; `None` means `n_vertices + 1`.
    pub max_rounds: Option<usize>,
    pub enumeration_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_rounds: None,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

fn check_source<T: Timestamp>(g: &TemporalGraph<T>, s: VertexId) -> Result<()> {
    if s as usize >= g.vertex_count() {
        return Err(Error::SourceOutOfRange {
            vertex: s as u64,
            n: g.vertex_count(),
        });
    }
    Ok(())
}

/// Earliest arrival by repeated relaxation passes over all edges until nothing changes.
pub fn eat_fixpoint<T: Timestamp>(g: &TemporalGraph<T>, s: VertexId, rt: T) -> Result<Vec<T>> {
    eat_fixpoint_with(g, s, rt, &OracleConfig::default())
}

pub fn eat_fixpoint_with<T: Timestamp>(
    g: &TemporalGraph<T>,
    s: VertexId,
    rt: T,
    cfg: &OracleConfig,
) -> Result<Vec<T>> {
    check_source(g, s)?;
    let rounds = cfg.max_rounds.unwrap_or(g.vertex_count() + 1);
    let mut eat = vec![T::UNREACHABLE; g.vertex_count()];
    eat[s as usize] = rt;
    for _ in 0..rounds {
        let mut changed = false;
        for e in g.edges() {
            let at_tail = eat[e.u as usize];
            if at_tail.is_reachable() && e.t >= at_tail && e.arrival() < eat[e.v as usize] {
                eat[e.v as usize] = e.arrival();
                changed = true;
            }
        }
        if !changed {
            return Ok(eat);
        }
    }
    Err(Error::MaxRoundsExceeded { rounds })
}

/// Earliest arrival from one pass over the edges in departure order.
pub fn eat_edge_stream<T: Timestamp>(g: &TemporalGraph<T>, s: VertexId, rt: T) -> Result<Vec<T>> {
    eat_edge_stream_counted(g, s, rt).map(|(eat, _)| eat)
}

/// [`eat_edge_stream`] plus the number of edges it scanned.
pub fn eat_edge_stream_counted<T: Timestamp>(
    g: &TemporalGraph<T>,
    s: VertexId,
    rt: T,
) -> Result<(Vec<T>, u64)> {
    check_source(g, s)?;
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&i| g.edges()[i].t);
    let mut eat = vec![T::UNREACHABLE; g.vertex_count()];
    eat[s as usize] = rt;
    let mut scanned = 0u64;
    for i in order {
        scanned += 1;
        let e = &g.edges()[i];
        let at_tail = eat[e.u as usize];
        if at_tail.is_reachable() && e.t >= at_tail && e.arrival() < eat[e.v as usize] {
            eat[e.v as usize] = e.arrival();
        }
    }
    Ok((eat, scanned))
}

/// Fastest durations as the minimum over distinct source departures `t` of `eat_t[z] - t`.
pub fn fpd_by_repeated_eat<T: Timestamp>(g: &TemporalGraph<T>, s: VertexId) -> Result<Vec<T>> {
    check_source(g, s)?;
    let departures: BTreeSet<T> = g
        .out_edges(s)
        .iter()
        .map(|&id| g.edges()[id as usize].t)
        .collect();
    let mut journey = vec![T::UNREACHABLE; g.vertex_count()];
    for t in departures {
        let eat = eat_fixpoint(g, s, t)?;
        for (j, a) in journey.iter_mut().zip(eat) {
            if a.is_reachable() && a - t < *j {
                *j = a - t;
            }
        }
    }
    journey[s as usize] = T::zero();
    Ok(journey)
}

/// All time-respecting paths from `s` with at most `max_len` edges that are
/// useful dominating on their own route, as edge-id sequences.
///
/// A path is extended only while it stays useful dominating, since every
/// prefix of a useful dominating path is one too.
pub fn enumerate_useful_dominating<T: Timestamp>(
    g: &TemporalGraph<T>,
    s: VertexId,
    max_len: usize,
    cfg: &OracleConfig,
) -> Result<BTreeSet<Vec<EdgeId>>> {
    check_source(g, s)?;
    let mut found = BTreeSet::new();
    let mut stack: Vec<Vec<EdgeId>> = g.out_edges(s).iter().map(|&id| vec![id]).collect();
    let mut examined = 0usize;
    while let Some(ids) = stack.pop() {
        if ids.len() > max_len {
            continue;
        }
        examined += 1;
        if examined > cfg.enumeration_cap {
            return Err(Error::EnumerationCap {
                cap: cfg.enumeration_cap,
            });
        }
        let path = TemporalPath::new(g, ids)?;
        let route = path.route(g);
        if !is_useful_dominating_with_cap(g, &path, &route, cfg.enumeration_cap)? {
            continue;
        }
        let last = g.edges()[*path.edge_ids().last().unwrap() as usize];
        for &next in g.out_edges(last.v) {
            if g.edges()[next as usize].t >= last.arrival() && path.len() < max_len {
                let mut ids = path.edge_ids().to_vec();
                ids.push(next);
                stack.push(ids);
            }
        }
        found.insert(path.edge_ids().to_vec());
    }
    Ok(found)
}

/// Dependency arcs read literally off the definition, with feasibility made
/// explicit: `e -> f` whenever `f` leaves the head of `e`, departs no earlier
/// than `e` arrives, and no edge on the same pair as `f` that also departs in
/// time arrives strictly earlier. Unlike the built ESDG this keeps every
/// minimum-arrival candidate. Quadratic; test-scale only.
pub fn literal_dependency_arcs<T: Timestamp>(g: &TemporalGraph<T>) -> Vec<Vec<EdgeId>> {
    let edges = g.edges();
    (0..edges.len())
        .map(|i| {
            let e = &edges[i];
            (0..edges.len() as EdgeId)
                .filter(|&j| {
                    let f = &edges[j as usize];
                    f.u == e.v
                        && f.t >= e.arrival()
                        && !edges.iter().any(|h| {
                            h.u == f.u
                                && h.v == f.v
                                && h.t >= e.arrival()
                                && h.arrival() < f.arrival()
                        })
                })
                .collect()
        })
        .collect()
}

/// Every path (as node sequence, length `1..=max_len`) in the graph given by `arcs`.
pub fn enumerate_arc_paths(arcs: &[Vec<EdgeId>], max_len: usize) -> BTreeSet<Vec<EdgeId>> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<EdgeId>> = (0..arcs.len() as EdgeId).map(|x| vec![x]).collect();
    while let Some(path) = stack.pop() {
        if path.len() < max_len {
            for &y in &arcs[*path.last().unwrap() as usize] {
                let mut next = path.clone();
                next.push(y);
                stack.push(next);
            }
        }
        out.insert(path);
    }
    out
}
