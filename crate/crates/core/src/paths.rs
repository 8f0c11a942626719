//! Time-respecting paths, routes and the dominance predicates.
//!
//! The dominance checks enumerate every combination of connections along a
//! route and are exponential in the route length. They exist to validate the
//! engines on test-scale graphs and refuse to run past an enumeration cap.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, TemporalGraph, VertexId};
use crate::time::Timestamp;

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A nonempty, chained, time-respecting sequence of edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TemporalPath {
    edge_ids: Vec<EdgeId>,
}

impl TemporalPath {
    pub fn new<T: Timestamp>(g: &TemporalGraph<T>, edge_ids: Vec<EdgeId>) -> Result<Self> {
        if edge_ids.is_empty() {
            return Err(Error::InvalidArgument(
                "a path needs at least one edge".into(),
            ));
        }
        if !is_time_respecting(g, &edge_ids)? {
            return Err(Error::NotTimeRespecting);
        }
        Ok(TemporalPath { edge_ids })
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn departure<T: Timestamp>(&self, g: &TemporalGraph<T>) -> T {
        g.edges()[self.edge_ids[0] as usize].t
    }

    pub fn arrival<T: Timestamp>(&self, g: &TemporalGraph<T>) -> T {
        g.edges()[*self.edge_ids.last().unwrap() as usize].arrival()
    }

    pub fn journey_time<T: Timestamp>(&self, g: &TemporalGraph<T>) -> T {
        self.arrival(g) - self.departure(g)
    }

    /// The static vertex sequence this path goes through.
    pub fn route<T: Timestamp>(&self, g: &TemporalGraph<T>) -> Route {
        let edges = g.edges();
        let mut vertices = Vec::with_capacity(self.edge_ids.len() + 1);
        vertices.push(edges[self.edge_ids[0] as usize].u);
        vertices.extend(self.edge_ids.iter().map(|&id| edges[id as usize].v));
        Route { vertices }
    }

    /// The prefix made of the first `len` edges.
    pub fn prefix(&self, len: usize) -> TemporalPath {
        assert!(len >= 1 && len <= self.edge_ids.len());
        TemporalPath {
            edge_ids: self.edge_ids[..len].to_vec(),
        }
    }
}

/// A vertex sequence with a static edge between every consecutive pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Route {
    vertices: Vec<VertexId>,
}

impl Route {
    pub fn new<T: Timestamp>(g: &TemporalGraph<T>, vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidRoute(
                "a route needs at least two vertices".into(),
            ));
        }
        for w in vertices.windows(2) {
            if w[0] as usize >= g.vertex_count() || w[1] as usize >= g.vertex_count() {
                return Err(Error::InvalidRoute(format!("vertex out of range in {w:?}")));
            }
            if !g.has_pair(w[0], w[1]) {
                return Err(Error::InvalidRoute(format!(
                    "no static edge {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Route { vertices })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn hops(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// True iff consecutive edges chain and each departs no earlier than the previous arrival.
pub fn is_time_respecting<T: Timestamp>(g: &TemporalGraph<T>, edge_ids: &[EdgeId]) -> Result<bool> {
    let edges = edge_ids
        .iter()
        .map(|&id| g.edge(id))
        .collect::<Result<Vec<_>>>()?;
    Ok(edges
        .windows(2)
        .all(|w| w[0].v == w[1].u && w[1].t >= w[0].arrival()))
}

/// `arr - dep` of a candidate path, rejecting sequences that are not time-respecting.
pub fn journey_time<T: Timestamp>(g: &TemporalGraph<T>, edge_ids: &[EdgeId]) -> Result<T> {
    Ok(TemporalPath::new(g, edge_ids.to_vec())?.journey_time(g))
}

fn goes_through<T: Timestamp>(g: &TemporalGraph<T>, p: &TemporalPath, r: &Route) -> bool {
    p.route(g) == *r
}

/// Minimum arrival over all time-respecting paths through `route` departing exactly at `dep`.
///
/// Brute force over every combination of connections; each partial path
/// visited counts against `cap`.
pub fn route_min_arrival<T: Timestamp>(
    g: &TemporalGraph<T>,
    route: &[VertexId],
    dep: T,
    cap: usize,
) -> Result<Option<T>> {
    struct Search<'a, T> {
        g: &'a TemporalGraph<T>,
        route: &'a [VertexId],
        visited: usize,
        cap: usize,
        best: Option<T>,
    }

    impl<T: Timestamp> Search<'_, T> {
        fn extend(&mut self, hop: usize, ready: T) -> Result<()> {
            if hop == self.route.len() - 1 {
                self.best = Some(self.best.map_or(ready, |b| b.min(ready)));
                return Ok(());
            }
            let edges = self.g.edges();
            for &id in self.g.pair_edges(self.route[hop], self.route[hop + 1]) {
                let e = &edges[id as usize];
                if e.t < ready {
                    continue;
                }
                self.visited += 1;
                if self.visited > self.cap {
                    return Err(Error::EnumerationCap { cap: self.cap });
                }
                self.extend(hop + 1, e.arrival())?;
            }
            Ok(())
        }
    }

    if route.len() < 2 {
        return Err(Error::InvalidRoute(
            "a route needs at least two vertices".into(),
        ));
    }
    let mut search = Search {
        g,
        route,
        visited: 0,
        cap,
        best: None,
    };
    let edges = g.edges();
    for &id in g.pair_edges(route[0], route[1]) {
        let e = &edges[id as usize];
        if e.t != dep {
            continue;
        }
        search.visited += 1;
        if search.visited > cap {
            return Err(Error::EnumerationCap { cap });
        }
        search.extend(1, e.arrival())?;
    }
    Ok(search.best)
}

/// Whether no path through `r` with the same departure arrives earlier than `p`.
pub fn is_dominating<T: Timestamp>(
    g: &TemporalGraph<T>,
    p: &TemporalPath,
    r: &Route,
) -> Result<bool> {
    is_dominating_with_cap(g, p, r, DEFAULT_ENUMERATION_CAP)
}

pub fn is_dominating_with_cap<T: Timestamp>(
    g: &TemporalGraph<T>,
    p: &TemporalPath,
    r: &Route,
    cap: usize,
) -> Result<bool> {
    if !goes_through(g, p, r) {
        return Err(Error::NotOnRoute);
    }
    let best = route_min_arrival(g, r.vertices(), p.departure(g), cap)?
        .ok_or_else(|| Error::Invariant("a path on the route was not enumerated".into()))?;
    Ok(p.arrival(g) <= best)
}

/// Whether every prefix of `p` is dominating on the matching prefix of `r`.
pub fn is_useful_dominating<T: Timestamp>(
    g: &TemporalGraph<T>,
    p: &TemporalPath,
    r: &Route,
) -> Result<bool> {
    is_useful_dominating_with_cap(g, p, r, DEFAULT_ENUMERATION_CAP)
}

pub fn is_useful_dominating_with_cap<T: Timestamp>(
    g: &TemporalGraph<T>,
    p: &TemporalPath,
    r: &Route,
    cap: usize,
) -> Result<bool> {
    if !goes_through(g, p, r) {
        return Err(Error::NotOnRoute);
    }
    for len in 1..=p.len() {
        let prefix = p.prefix(len);
        let route = Route {
            vertices: r.vertices()[..=len].to_vec(),
        };
        if !is_dominating_with_cap(g, &prefix, &route, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}
