//! Temporal-graph journey planning over edge-scan-dependency graphs.
//!
//! A timetable is loaded as a [`TemporalGraph`] of `(u, v, t, λ)` connections,
//! transformed once into an [`Esdg`] whose nodes are the connections and whose
//! arcs are pruned feasible continuations, and then queried for single-source
//! earliest arrival times ([`eat`]) and fastest path durations ([`fpd`]).
//!
//! Every type is generic over the integer time representation (see
//! [`Timestamp`]); the aliases at the crate root fix the common choices.

pub mod analytics;
pub mod bench;
pub mod eat;
pub mod error;
pub mod esdg;
pub mod fixtures;
pub mod fpd;
pub mod graph;
pub mod ingest;
pub mod oracles;
pub mod paths;
pub mod time;

pub use analytics::{
    coverage_count, coverage_report, coverage_time, eccentricity, CoverageReport, Percent,
};
pub use eat::{earliest_arrival, EatEngine, EatOptions, EatResult};
pub use error::{Error, Result};
pub use esdg::{build_esdg, Esdg, EsdgNode, EsdgStats};
pub use fpd::{fastest_duration, FpdEngine, FpdOptions, FpdResult};
pub use graph::{EdgeId, TemporalEdge, TemporalGraph, VertexId};
pub use paths::{Route, TemporalPath};
pub use time::{format_time, Timestamp, DEFAULT_MAX_TIME};

/// Default time representation: 32-bit seconds or abstract ticks.
pub type Time = u32;

pub type TemporalEdge32 = TemporalEdge<u32>;
pub type TemporalGraph32 = TemporalGraph<u32>;
pub type Esdg32 = Esdg<u32>;
pub type EatResult32 = EatResult<u32>;
pub type FpdResult32 = FpdResult<u32>;

pub type TemporalEdge64 = TemporalEdge<u64>;
pub type TemporalGraph64 = TemporalGraph<u64>;
pub type Esdg64 = Esdg<u64>;
pub type EatResult64 = EatResult<u64>;
pub type FpdResult64 = FpdResult<u64>;
