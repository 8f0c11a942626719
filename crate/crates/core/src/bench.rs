//! Randomized query benchmark with exact work counters.
//!
//! Queries come from a [`SplitMix64`] stream seeded by the caller: for each
//! query a source uniform in `[0, n)` and, in EAT mode, a ready time uniform in
//! `[0, 100]`. The same seed and vertex count always give the same queries.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;

use crate::eat::{EatEngine, EatOptions};
use crate::error::{Error, Result};
use crate::esdg::Esdg;
use crate::fpd::{FpdEngine, FpdOptions};
use crate::graph::VertexId;
use crate::oracles::generate::{rng, SplitMix64};
use crate::time::Timestamp;

pub const READY_TIME_RANGE: (u32, u32) = (0, 100);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Eat,
    Fpd,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eat" => Ok(Mode::Eat),
            "fpd" => Ok(Mode::Fpd),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode {other:?}, expected eat or fpd"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Eat => "eat",
            Mode::Fpd => "fpd",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchSpec {
    pub n_queries: usize,
    pub seed: u64,
    pub mode: Mode,
}

impl BenchSpec {
    pub fn new(mode: Mode, n_queries: usize, seed: u64) -> Result<Self> {
        if n_queries == 0 {
            return Err(Error::InvalidArgument(
                "at least one query is required".into(),
            ));
        }
        Ok(BenchSpec {
            n_queries,
            seed,
            mode,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Query {
    pub source: VertexId,
    /// Only drawn in EAT mode.
    pub ready_time: Option<u32>,
}

pub fn generate_queries(spec: &BenchSpec, n_vertices: usize) -> Result<Vec<Query>> {
    if n_vertices == 0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()));
    }
    let mut r: SplitMix64 = rng(spec.seed);
    Ok((0..spec.n_queries)
        .map(|_| {
            let source = r.gen_range(0..n_vertices) as VertexId;
            let ready_time = match spec.mode {
                Mode::Eat => Some(r.gen_range(READY_TIME_RANGE.0..=READY_TIME_RANGE.1)),
                Mode::Fpd => None,
            };
            Query { source, ready_time }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryRecord {
    pub query: Query,
    pub wall_micros: u128,
    pub nodes_dequeued: u64,
    pub arcs_scanned: u64,
    /// Dequeue order, when tracing was requested.
    pub trace: Option<Vec<u32>>,
}

/// Runs one query with the default optimizations.
pub fn run_query<T: Timestamp>(
    esdg: &Esdg<T>,
    mode: Mode,
    query: Query,
    trace: bool,
) -> Result<QueryRecord> {
    let start = Instant::now();
    let (nodes_dequeued, arcs_scanned, trace) = match mode {
        Mode::Eat => {
            let rt = query.ready_time.unwrap_or(0);
            let rt = T::from_u64(rt as u64).ok_or(Error::ReadyTimeOutOfRange(rt as u64))?;
            let opts = EatOptions {
                trace,
                ..EatOptions::default()
            };
            let r = EatEngine::new(esdg, opts).run(query.source, rt)?;
            (r.nodes_dequeued, r.arcs_scanned, r.trace)
        }
        Mode::Fpd => {
            let opts = FpdOptions {
                trace,
                ..FpdOptions::default()
            };
            let r = FpdEngine::new(esdg, opts).run(query.source)?;
            (r.nodes_dequeued, r.arcs_scanned, r.trace)
        }
    };
    Ok(QueryRecord {
        query,
        wall_micros: start.elapsed().as_micros(),
        nodes_dequeued,
        arcs_scanned,
        trace,
    })
}

/// Runs every query sequentially with reusable engine buffers.
pub fn run_bench<T: Timestamp>(esdg: &Esdg<T>, spec: &BenchSpec) -> Result<Vec<QueryRecord>> {
    let queries = generate_queries(spec, esdg.vertex_count())?;
    let mut records = Vec::with_capacity(queries.len());
    match spec.mode {
        Mode::Eat => {
            let mut engine = EatEngine::new(esdg, EatOptions::default());
            for q in queries {
                let rt = q.ready_time.unwrap_or(0);
                let rt = T::from_u64(rt as u64).ok_or(Error::ReadyTimeOutOfRange(rt as u64))?;
                let start = Instant::now();
                let r = engine.run(q.source, rt)?;
                records.push(QueryRecord {
                    query: q,
                    wall_micros: start.elapsed().as_micros(),
                    nodes_dequeued: r.nodes_dequeued,
                    arcs_scanned: r.arcs_scanned,
                    trace: None,
                });
            }
        }
        Mode::Fpd => {
            let mut engine = FpdEngine::new(esdg, FpdOptions::default());
            for q in queries {
                let start = Instant::now();
                let r = engine.run(q.source)?;
                records.push(QueryRecord {
                    query: q,
                    wall_micros: start.elapsed().as_micros(),
                    nodes_dequeued: r.nodes_dequeued,
                    arcs_scanned: r.arcs_scanned,
                    trace: None,
                });
            }
        }
    }
    check_counters(esdg, &records)?;
    Ok(records)
}

/// Counters may never exceed the node and arc counts of the graph.
pub fn check_counters<T: Timestamp>(esdg: &Esdg<T>, records: &[QueryRecord]) -> Result<()> {
    for (i, r) in records.iter().enumerate() {
        if r.nodes_dequeued > esdg.node_count() as u64 || r.arcs_scanned > esdg.arc_count() as u64 {
            return Err(Error::Invariant(format!(
                "query {i}: counters ({}, {}) exceed graph size ({}, {})",
                r.nodes_dequeued,
                r.arcs_scanned,
                esdg.node_count(),
                esdg.arc_count()
            )));
        }
    }
    Ok(())
}

/// Writes the TSV report: one row per query, then `#`-prefixed averages.
pub fn write_report<W: std::io::Write>(
    mut out: W,
    mode: Mode,
    records: &[QueryRecord],
) -> std::io::Result<()> {
    match mode {
        Mode::Eat => writeln!(
            out,
            "query\tsource\tready_time\twall_micros\tnodes_dequeued\tarcs_scanned"
        )?,
        Mode::Fpd => writeln!(
            out,
            "query\tsource\twall_micros\tnodes_dequeued\tarcs_scanned"
        )?,
    }
    for (i, r) in records.iter().enumerate() {
        write!(out, "{i}\t{}", r.query.source)?;
        if mode == Mode::Eat {
            write!(out, "\t{}", r.query.ready_time.unwrap_or(0))?;
        }
        writeln!(
            out,
            "\t{}\t{}\t{}",
            r.wall_micros, r.nodes_dequeued, r.arcs_scanned
        )?;
    }
    let n = records.len().max(1) as f64;
    let avg = |f: fn(&QueryRecord) -> f64| records.iter().map(f).sum::<f64>() / n;
    writeln!(out, "# queries\t{}", records.len())?;
    writeln!(
        out,
        "# avg_nodes_dequeued\t{:.2}",
        avg(|r| r.nodes_dequeued as f64)
    )?;
    writeln!(
        out,
        "# avg_arcs_scanned\t{:.2}",
        avg(|r| r.arcs_scanned as f64)
    )?;
    writeln!(
        out,
        "# avg_wall_micros\t{:.2}",
        avg(|r| r.wall_micros as f64)
    )?;
    Ok(())
}
