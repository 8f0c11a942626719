//! Edge-scan-dependency graph: one node per temporal edge, one arc per
//! (node, static successor) pair pointing at the minimum-arrival feasible
//! continuation on that successor pair.
//!
//! Nodes are stored as parallel arrays and arcs in CSR form
//! (`offsets`/`neighbors`). A per-vertex source index lists the nodes leaving
//! each original vertex by departure.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, TemporalGraph, VertexId};
use crate::time::Timestamp;

pub const MAGIC: [u8; 4] = *b"ESDG";
pub const FORMAT_VERSION: u32 = 1;

pub type NodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EsdgNode<T> {
    /// Id of the originating temporal edge.
    pub id: NodeId,
    pub left: VertexId,
    pub right: VertexId,
    pub dep: T,
    pub arr: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Esdg<T> {
    n_vertices: usize,
    left: Vec<VertexId>,
    right: Vec<VertexId>,
    dep: Vec<T>,
    arr: Vec<T>,
    offsets: Vec<u64>,
    neighbors: Vec<NodeId>,
    source_offsets: Vec<u64>,
    source_nodes: Vec<NodeId>,
}

/// Edges of one static pair sorted by departure, with the canonical
/// minimum-arrival representative of every suffix.
struct PairTable<T> {
    deps: Vec<T>,
    best: Vec<EdgeId>,
}

impl<T: Timestamp> PairTable<T> {
    fn new(g: &TemporalGraph<T>, ids: &[EdgeId]) -> Self {
        let edges = g.edges();
        let deps = ids.iter().map(|&id| edges[id as usize].t).collect();
        let mut best = vec![0; ids.len()];
        for i in (0..ids.len()).rev() {
            best[i] = match best.get(i + 1) {
                Some(&b) if !preferred(g, ids[i], b) => b,
                _ => ids[i],
            };
        }
        PairTable { deps, best }
    }

    /// Canonical minimum-arrival edge among those departing at or after `ready`.
    fn continuation(&self, ready: T) -> Option<EdgeId> {
        let k = self.deps.partition_point(|&d| d < ready);
        self.best.get(k).copied()
    }
}

/// Continuation order: earlier arrival, then later departure, then smaller id.
fn preferred<T: Timestamp>(g: &TemporalGraph<T>, a: EdgeId, b: EdgeId) -> bool {
    let (ea, eb) = (&g.edges()[a as usize], &g.edges()[b as usize]);
    (ea.arrival(), std::cmp::Reverse(ea.t), a) < (eb.arrival(), std::cmp::Reverse(eb.t), b)
}

/// Builds the ESDG of `g` in `O(m log m + m·Δ log m)`.
pub fn build_esdg<T: Timestamp>(g: &TemporalGraph<T>) -> Esdg<T> {
    let n = g.vertex_count();
    let m = g.edge_count();

    // tables[v] is aligned with g.static_successors(v)
    let mut tables: Vec<Vec<PairTable<T>>> = (0..n).map(|_| Vec::new()).collect();
    for ((u, _), ids) in g.pairs() {
        tables[u as usize].push(PairTable::new(g, ids));
    }

    let mut offsets = Vec::with_capacity(m + 1);
    let mut neighbors = Vec::new();
    offsets.push(0u64);
    for e in g.edges() {
        let ready = e.arrival();
        neighbors.extend(
            tables[e.v as usize]
                .iter()
                .filter_map(|t| t.continuation(ready)),
        );
        offsets.push(neighbors.len() as u64);
    }

    let mut source_offsets = Vec::with_capacity(n + 1);
    let mut source_nodes = Vec::with_capacity(m);
    source_offsets.push(0u64);
    for u in 0..n as VertexId {
        source_nodes.extend_from_slice(g.out_edges(u));
        source_offsets.push(source_nodes.len() as u64);
    }

    Esdg {
        n_vertices: n,
        left: g.edges().iter().map(|e| e.u).collect(),
        right: g.edges().iter().map(|e| e.v).collect(),
        dep: g.edges().iter().map(|e| e.t).collect(),
        arr: g.edges().iter().map(|e| e.arrival()).collect(),
        offsets,
        neighbors,
        source_offsets,
        source_nodes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsdgStats {
    pub n_vertices: usize,
    pub n_nodes: usize,
    pub n_arcs: usize,
    pub max_out_degree: usize,
}

impl EsdgStats {
    /// `n_arcs / n_nodes` rounded half-up to two decimals, computed exactly.
    pub fn avg_out_degree(&self) -> String {
        if self.n_nodes == 0 {
            return "0.00".to_string();
        }
        let (arcs, nodes) = (self.n_arcs as u128, self.n_nodes as u128);
        let hundredths = (arcs * 200 + nodes) / (2 * nodes);
        format!("{}.{:02}", hundredths / 100, hundredths % 100)
    }
}

impl<T: Timestamp> Esdg<T> {
    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    pub fn node_count(&self) -> usize {
        self.left.len()
    }

    pub fn arc_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn node(&self, x: NodeId) -> EsdgNode<T> {
        let i = x as usize;
        EsdgNode {
            id: x,
            left: self.left[i],
            right: self.right[i],
            dep: self.dep[i],
            arr: self.arr[i],
        }
    }

    #[inline]
    pub fn left(&self, x: NodeId) -> VertexId {
        self.left[x as usize]
    }

    #[inline]
    pub fn right(&self, x: NodeId) -> VertexId {
        self.right[x as usize]
    }

    #[inline]
    pub fn dep(&self, x: NodeId) -> T {
        self.dep[x as usize]
    }

    #[inline]
    pub fn arr(&self, x: NodeId) -> T {
        self.arr[x as usize]
    }

    #[inline]
    pub fn neighbors(&self, x: NodeId) -> &[NodeId] {
        let i = x as usize;
        &self.neighbors[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    pub fn out_degree(&self, x: NodeId) -> usize {
        self.neighbors(x).len()
    }

    /// Nodes whose left vertex is `u`, departure ascending (ties by id).
    #[inline]
    pub fn source_nodes(&self, u: VertexId) -> &[NodeId] {
        let i = u as usize;
        &self.source_nodes[self.source_offsets[i] as usize..self.source_offsets[i + 1] as usize]
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn neighbor_array(&self) -> &[NodeId] {
        &self.neighbors
    }

    pub fn stats(&self) -> EsdgStats {
        EsdgStats {
            n_vertices: self.n_vertices,
            n_nodes: self.node_count(),
            n_arcs: self.arc_count(),
            max_out_degree: self
                .offsets
                .windows(2)
                .map(|w| (w[1] - w[0]) as usize)
                .max()
                .unwrap_or(0),
        }
    }

    /// Checks the build contract of `self` against the graph it was built from:
    /// node/edge bijection, arc feasibility and chaining, one arc per static
    /// successor with a feasible continuation, minimal arrival of every arc
    /// target, and the source index.
    pub fn check_invariants(&self, g: &TemporalGraph<T>) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        self.check_structure()?;
        if self.n_vertices != g.vertex_count() {
            return fail(format!(
                "vertex count {} != {}",
                self.n_vertices,
                g.vertex_count()
            ));
        }
        if self.node_count() != g.edge_count() {
            return fail(format!(
                "node count {} != edge count {}",
                self.node_count(),
                g.edge_count()
            ));
        }
        for (i, e) in g.edges().iter().enumerate() {
            let x = self.node(i as NodeId);
            if (x.left, x.right, x.dep, x.arr) != (e.u, e.v, e.t, e.arrival()) {
                return fail(format!("node {i} does not mirror its edge"));
            }
        }
        let edges = g.edges();
        for x in 0..self.node_count() as NodeId {
            let (right, ready) = (self.right(x), self.arr(x));
            let arcs = self.neighbors(x);
            if arcs.len() > g.static_out_degree(right) {
                return fail(format!(
                    "node {x}: out-degree exceeds static out-degree of {right}"
                ));
            }
            for &y in arcs {
                if self.left(y) != right || self.dep(y) < ready {
                    return fail(format!("arc {x}->{y} is not a feasible continuation"));
                }
            }
            let mut arc_iter = arcs.iter();
            for &w in g.static_successors(right) {
                let min_arr = g
                    .pair_edges(right, w)
                    .iter()
                    .map(|&id| &edges[id as usize])
                    .filter(|e| e.t >= ready)
                    .map(|e| e.arrival())
                    .min();
                match min_arr {
                    None => {}
                    Some(best) => match arc_iter.next() {
                        Some(&y) if self.right(y) == w && self.arr(y) == best => {}
                        _ => {
                            return fail(format!(
                                "node {x}: missing or non-minimal arc towards {w}"
                            ))
                        }
                    },
                }
            }
            if arc_iter.next().is_some() {
                return fail(format!("node {x}: unexpected extra arcs"));
            }
        }
        for u in 0..self.n_vertices as VertexId {
            if self.source_nodes(u) != g.out_edges(u) {
                return fail(format!("source index of vertex {u} is wrong"));
            }
        }
        Ok(())
    }

    /// Self-consistency checks that need no reference graph.
    fn check_structure(&self) -> Result<()> {
        let corrupt = |msg: &str| Err(Error::Corrupt(msg.to_string()));
        let m = self.left.len();
        if self.offsets.len() != m + 1 || self.offsets[0] != 0 {
            return corrupt("offsets length or origin");
        }
        if self.offsets.windows(2).any(|w| w[0] > w[1]) {
            return corrupt("offsets not monotone");
        }
        if *self.offsets.last().unwrap() != self.neighbors.len() as u64 {
            return corrupt("offsets do not end at the arc count");
        }
        if self.neighbors.iter().any(|&y| y as usize >= m) {
            return corrupt("arc target out of range");
        }
        let n = self.n_vertices as u64;
        if self.left.iter().chain(&self.right).any(|&v| v as u64 >= n) {
            return corrupt("node endpoint out of range");
        }
        if self.dep.iter().zip(&self.arr).any(|(d, a)| a <= d) {
            return corrupt("node arrival not after departure");
        }
        if self.source_offsets.len() != self.n_vertices + 1 || self.source_offsets[0] != 0 {
            return corrupt("source offsets length or origin");
        }
        if self.source_offsets.windows(2).any(|w| w[0] > w[1])
            || *self.source_offsets.last().unwrap() != self.source_nodes.len() as u64
            || self.source_nodes.len() != m
        {
            return corrupt("source offsets inconsistent");
        }
        let mut seen = vec![false; m];
        for u in 0..self.n_vertices as VertexId {
            let nodes = self.source_nodes(u);
            for &x in nodes {
                if x as usize >= m || seen[x as usize] || self.left(x) != u {
                    return corrupt("source index does not partition the nodes");
                }
                seen[x as usize] = true;
            }
            if nodes
                .windows(2)
                .any(|w| (self.dep(w[0]), w[0]) >= (self.dep(w[1]), w[1]))
            {
                return corrupt("source index not sorted by departure");
            }
        }
        Ok(())
    }

    /// Writes the little-endian binary layout.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        let to_u32 = |t: T| {
            t.to_u32().ok_or_else(|| {
                Error::TooLarge(format!("time {t} does not fit the u32 on-disk layout"))
            })
        };
        w.write_all(&MAGIC)?;
        w.write_u32::<LittleEndian>(FORMAT_VERSION)?;
        w.write_u64::<LittleEndian>(self.n_vertices as u64)?;
        w.write_u64::<LittleEndian>(self.node_count() as u64)?;
        w.write_u64::<LittleEndian>(self.arc_count() as u64)?;
        for &o in &self.offsets {
            w.write_u64::<LittleEndian>(o)?;
        }
        for &y in &self.neighbors {
            w.write_u32::<LittleEndian>(y)?;
        }
        for &v in self.left.iter().chain(&self.right) {
            w.write_u32::<LittleEndian>(v)?;
        }
        for &t in self.dep.iter().chain(&self.arr) {
            w.write_u32::<LittleEndian>(to_u32(t)?)?;
        }
        for &o in &self.source_offsets {
            w.write_u64::<LittleEndian>(o)?;
        }
        for &x in &self.source_nodes {
            w.write_u32::<LittleEndian>(x)?;
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        Ok(buf)
    }

    /// Reads and validates the binary layout; the stream must end right after it.
    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        read_exact(&mut r, &mut magic)?;
        if magic != MAGIC {
            return Err(Error::BadMagic(magic));
        }
        let version = r.read_u32::<LittleEndian>().map_err(eof)?;
        if version != FORMAT_VERSION {
            return Err(Error::VersionMismatch(version));
        }
        let n_vertices = read_len(&mut r)?;
        let n_nodes = read_len(&mut r)?;
        let n_arcs = read_len(&mut r)?;
        if n_nodes > NodeId::MAX as usize || n_vertices > VertexId::MAX as usize {
            return Err(Error::Corrupt("counts exceed id width".into()));
        }

        let offsets = read_u64s(&mut r, n_nodes + 1)?;
        let neighbors = read_u32s(&mut r, n_arcs)?;
        let left = read_u32s(&mut r, n_nodes)?;
        let right = read_u32s(&mut r, n_nodes)?;
        let from_u32 = |v: Vec<u32>| -> Result<Vec<T>> {
            v.into_iter()
                .map(|t| {
                    T::from_u64(t as u64).ok_or_else(|| Error::Corrupt("time out of range".into()))
                })
                .collect()
        };
        let dep = from_u32(read_u32s(&mut r, n_nodes)?)?;
        let arr = from_u32(read_u32s(&mut r, n_nodes)?)?;
        let source_offsets = read_u64s(&mut r, n_vertices + 1)?;
        let source_nodes = read_u32s(&mut r, n_nodes)?;
        let mut probe = [0u8; 1];
        if r.read(&mut probe)? != 0 {
            return Err(Error::Corrupt("trailing bytes".into()));
        }

        let esdg = Esdg {
            n_vertices,
            left,
            right,
            dep,
            arr,
            offsets,
            neighbors,
            source_offsets,
            source_nodes,
        };
        esdg.check_structure()?;
        Ok(esdg)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Self::read_from(bytes)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}

fn eof(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::UnexpectedEof {
        Error::Truncated
    } else {
        Error::Io(e)
    }
}

fn read_exact<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<()> {
    r.read_exact(buf).map_err(eof)
}

fn read_len<R: Read>(r: &mut R) -> Result<usize> {
    let v = r.read_u64::<LittleEndian>().map_err(eof)?;
    usize::try_from(v).map_err(|_| Error::Corrupt(format!("length {v} too large")))
}

// Capacity is capped so a corrupt header cannot trigger a huge allocation.
const PREALLOC_LIMIT: usize = 1 << 20;

fn read_u64s<R: Read>(r: &mut R, count: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count.min(PREALLOC_LIMIT));
    for _ in 0..count {
        out.push(r.read_u64::<LittleEndian>().map_err(eof)?);
    }
    Ok(out)
}

fn read_u32s<R: Read>(r: &mut R, count: usize) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(count.min(PREALLOC_LIMIT));
    for _ in 0..count {
        out.push(r.read_u32::<LittleEndian>().map_err(eof)?);
    }
    Ok(out)
}
