//! Temporal graph model and the plain-text edge-list format.
//!
//! The edge-list format is line oriented: `#` lines are comments, the first
//! data line is `n m`, followed by exactly `m` lines `u v t lambda`.

use std::collections::BTreeMap;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::time::{Timestamp, DEFAULT_MAX_TIME};

pub type VertexId = u32;
pub type EdgeId = u32;

/// One timetabled connection: depart `u` at `t`, arrive at `v` at `t + lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TemporalEdge<T> {
    pub u: VertexId,
    pub v: VertexId,
    pub t: T,
    pub lambda: T,
}

impl<T: Timestamp> TemporalEdge<T> {
    pub fn new(u: VertexId, v: VertexId, t: T, lambda: T) -> Self {
        TemporalEdge { u, v, t, lambda }
    }

    #[inline]
    pub fn departure(&self) -> T {
        self.t
    }

    #[inline]
    pub fn arrival(&self) -> T {
        self.t + self.lambda
    }
}

/// Immutable temporal multigraph with per-static-pair and per-vertex indexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph<T> {
    n: usize,
    edges: Vec<TemporalEdge<T>>,
    by_pair: BTreeMap<(VertexId, VertexId), Vec<EdgeId>>,
    out_static: Vec<Vec<VertexId>>,
    out_edges: Vec<Vec<EdgeId>>,
}

impl<T: Timestamp> TemporalGraph<T> {
    /// Builds a graph, rejecting edges whose arrival exceeds [`DEFAULT_MAX_TIME`].
    pub fn new(n: usize, edges: Vec<TemporalEdge<T>>) -> Result<Self> {
        let max = T::from_u64(DEFAULT_MAX_TIME).unwrap_or(T::UNREACHABLE - T::one());
        Self::with_max_time(n, edges, max)
    }

    pub fn with_max_time(n: usize, edges: Vec<TemporalEdge<T>>, max_time: T) -> Result<Self> {
        if max_time >= T::UNREACHABLE {
            return Err(Error::InvalidArgument(
                "maximum time must be below the unreachable sentinel".into(),
            ));
        }
        if n > VertexId::MAX as usize {
            return Err(Error::TooLarge(format!("{n} vertices")));
        }
        if edges.len() > EdgeId::MAX as usize {
            return Err(Error::TooLarge(format!("{} edges", edges.len())));
        }
        for (i, e) in edges.iter().enumerate() {
            for endpoint in [e.u, e.v] {
                if endpoint as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        edge: i,
                        vertex: endpoint as u64,
                        n,
                    });
                }
            }
            if e.lambda.is_zero() {
                return Err(Error::ZeroDuration { edge: i });
            }
            if e.t > max_time || e.lambda > max_time - e.t {
                return Err(Error::TimeOverflow {
                    edge: i,
                    max: max_time.as_u64(),
                });
            }
        }

        let mut by_pair: BTreeMap<(VertexId, VertexId), Vec<EdgeId>> = BTreeMap::new();
        let mut out_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            by_pair.entry((e.u, e.v)).or_default().push(i as EdgeId);
            out_edges[e.u as usize].push(i as EdgeId);
        }
        for ids in by_pair.values_mut() {
            ids.sort_by_key(|&id| (edges[id as usize].t, id));
        }
        for ids in &mut out_edges {
            ids.sort_by_key(|&id| (edges[id as usize].t, id));
        }
        let mut out_static = vec![Vec::new(); n];
        // BTreeMap iteration yields successors in ascending order per tail.
        for &(u, v) in by_pair.keys() {
            out_static[u as usize].push(v);
        }

        Ok(TemporalGraph {
            n,
            edges,
            by_pair,
            out_static,
            out_edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[TemporalEdge<T>] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&TemporalEdge<T>> {
        self.edges
            .get(id as usize)
            .ok_or(Error::InvalidEdgeId(id as u64))
    }

    /// Edge ids on the static pair `(u, v)`, departure ascending (ties by id).
    pub fn pair_edges(&self, u: VertexId, v: VertexId) -> &[EdgeId] {
        self.by_pair.get(&(u, v)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((VertexId, VertexId), &[EdgeId])> + '_ {
        self.by_pair.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn has_pair(&self, u: VertexId, v: VertexId) -> bool {
        self.by_pair.contains_key(&(u, v))
    }

    /// Distinct static successors of `u`, ascending.
    pub fn static_successors(&self, u: VertexId) -> &[VertexId] {
        &self.out_static[u as usize]
    }

    pub fn static_out_degree(&self, u: VertexId) -> usize {
        self.out_static[u as usize].len()
    }

    /// Edges leaving `u`, departure ascending (ties by id).
    pub fn out_edges(&self, u: VertexId) -> &[EdgeId] {
        &self.out_edges[u as usize]
    }

    /// Parses the edge-list text format.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            if raw.starts_with('#') || raw.trim().is_empty() {
                continue;
            }
            let fields = split_fields(raw, line_no)?;
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(parse_err(line_no, "expected header \"n m\""));
                    }
                    let n = parse_count(fields[0], line_no)?;
                    let m = parse_count(fields[1], line_no)?;
                    edges.reserve(m.min(1 << 20));
                    header = Some((n, m));
                }
                Some((_, m)) => {
                    if edges.len() == m {
                        return Err(parse_err(line_no, format!("more than {m} edge lines")));
                    }
                    if fields.len() != 4 {
                        return Err(parse_err(line_no, "expected \"u v t lambda\""));
                    }
                    let u = parse_vertex(fields[0], line_no)?;
                    let v = parse_vertex(fields[1], line_no)?;
                    let t: T = parse_time(fields[2], line_no, "departure")?;
                    let lambda: T = parse_time(fields[3], line_no, "duration")?;
                    if lambda.is_zero() {
                        return Err(parse_err(line_no, "duration must be at least 1"));
                    }
                    edges.push(TemporalEdge { u, v, t, lambda });
                }
            }
        }
        let (n, m) = header.ok_or_else(|| parse_err(0, "missing header line"))?;
        if edges.len() != m {
            return Err(parse_err(
                text.lines().count(),
                format!("expected {m} edge lines, found {}", edges.len()),
            ));
        }
        TemporalGraph::new(n, edges)
    }

    /// Writes the edge-list format. Every `provenance` line is emitted as a `#` comment.
    pub fn write_edge_list<W: Write>(&self, mut out: W, provenance: &[&str]) -> io::Result<()> {
        for line in provenance {
            writeln!(out, "# {line}")?;
        }
        writeln!(out, "{} {}", self.n, self.edges.len())?;
        for e in &self.edges {
            writeln!(out, "{} {} {} {}", e.u, e.v, e.t, e.lambda)?;
        }
        Ok(())
    }

    pub fn to_edge_list_string(&self, provenance: &[&str]) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf, provenance)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ASCII")
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn split_fields(line: &str, line_no: usize) -> Result<Vec<&str>> {
    let fields: Vec<&str> = line.split(' ').collect();
    if fields.iter().any(|f| f.is_empty()) {
        return Err(parse_err(
            line_no,
            "fields must be separated by single spaces",
        ));
    }
    Ok(fields)
}

fn parse_count(field: &str, line_no: usize) -> Result<usize> {
    field
        .parse::<usize>()
        .map_err(|_| parse_err(line_no, format!("invalid count {field:?}")))
}

fn parse_vertex(field: &str, line_no: usize) -> Result<VertexId> {
    field
        .parse::<VertexId>()
        .map_err(|_| parse_err(line_no, format!("invalid vertex id {field:?}")))
}

fn parse_time<T: Timestamp>(field: &str, line_no: usize, what: &str) -> Result<T> {
    let is_decimal = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if field.strip_prefix('-').is_some_and(is_decimal) {
        return Err(parse_err(line_no, format!("negative {what} {field}")));
    }
    if !is_decimal(field) {
        return Err(parse_err(line_no, format!("invalid {what} {field:?}")));
    }
    field
        .parse::<u64>()
        .ok()
        .and_then(T::from_u64)
        .filter(|v| *v < T::UNREACHABLE)
        .ok_or_else(|| parse_err(line_no, format!("{what} {field} out of range")))
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = TemporalGraph<u32>;

    #[test]
    fn single_edge() {
        let g = G::parse_edge_list("2 1\n0 1 3 2").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), &[TemporalEdge::new(0, 1, 3, 2)]);
        assert_eq!(g.edges()[0].arrival(), 5);
        assert_eq!(g.static_successors(0), &[1]);
        assert!(g.static_successors(1).is_empty());
    }

    #[test]
    fn comments_are_skipped() {
        let g = G::parse_edge_list("# hello\n2 1\n# mid\n0 1 3 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_zero_duration() {
        let err = G::parse_edge_list("2 1\n0 1 3 0").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_negative_departure() {
        let err = G::parse_edge_list("2 1\n0 1 -3 2").unwrap_err();
        assert!(err.to_string().contains("negative"), "{err}");
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        let err = G::parse_edge_list("2 1\n0 2 3 2").unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { vertex: 2, .. }));
    }

    #[test]
    fn rejects_wrong_edge_count() {
        assert!(G::parse_edge_list("2 2\n0 1 3 2").is_err());
        let err = G::parse_edge_list("2 1\n0 1 3 2\n1 0 5 1").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn rejects_malformed_lines() {
        let err = G::parse_edge_list("2 1\n0 1  3 2").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = G::parse_edge_list("2 1\n0 1 x 2").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(G::parse_edge_list("2 1 7\n0 1 3 2").is_err());
        assert!(G::parse_edge_list("").is_err());
    }

    #[test]
    fn rejects_arrival_past_max_time() {
        let edges = vec![TemporalEdge::new(0, 1, DEFAULT_MAX_TIME as u32, 1)];
        assert!(matches!(
            G::new(2, edges).unwrap_err(),
            Error::TimeOverflow { .. }
        ));
        let edges = vec![TemporalEdge::new(0, 1, 90u32, 20)];
        assert!(G::with_max_time(2, edges.clone(), 100).is_err());
        assert!(G::with_max_time(2, edges, 110).is_ok());
    }

    #[test]
    fn pair_index_sorted_by_departure() {
        let g = G::parse_edge_list("3 4\n0 1 9 1\n0 1 3 5\n0 2 1 1\n0 1 3 2").unwrap();
        assert_eq!(g.pair_edges(0, 1), &[1, 3, 0]);
        assert_eq!(g.pair_edges(0, 2), &[2]);
        assert_eq!(g.static_successors(0), &[1, 2]);
        assert_eq!(g.out_edges(0), &[2, 1, 3, 0]);
        let total: usize = g.pairs().map(|(_, ids)| ids.len()).sum();
        assert_eq!(total, g.edge_count());
    }

    #[test]
    fn parallel_edges_allowed_beyond_n_squared() {
        let text = format!("2 10\n{}", "0 1 1 1\n".repeat(10));
        let g = G::parse_edge_list(&text).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.static_out_degree(0), 1);
    }

    #[test]
    fn writer_emits_provenance_header() {
        let g = G::parse_edge_list("2 1\n0 1 3 2").unwrap();
        let text = g.to_edge_list_string(&["written by test"]);
        assert_eq!(text, "# written by test\n2 1\n0 1 3 2\n");
        assert_eq!(G::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn wide_times() {
        let g = TemporalGraph::<u64>::parse_edge_list("2 1\n0 1 100 5").unwrap();
        assert_eq!(g.edges()[0].arrival(), 105u64);
    }
}
