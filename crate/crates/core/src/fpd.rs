//! Single-source fastest path durations over an [`Esdg`].
//!
//! Source nodes are processed one phase each, latest departure first. A node
//! inherits the start time of the first phase that reaches it, which is the
//! latest start from which it is reachable, so it never needs to be visited
//! again by a later (earlier-starting) phase.

use std::cmp::Reverse;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::esdg::{Esdg, NodeId};
use crate::graph::VertexId;
use crate::time::{to_option, Timestamp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpdOptions<T> {
    /// Skip a phase whose source node was already reached by an earlier phase.
    pub skip_visited_source: bool,
    /// Do not expand nodes whose journey already exceeds this bound.
    /// Journeys above the bound are then not reliable; those at or below are.
    pub horizon: Option<T>,
    /// Record the dequeue order in [`FpdResult::trace`].
    pub trace: bool,
}

impl<T> Default for FpdOptions<T> {
    fn default() -> Self {
        FpdOptions {
            skip_visited_source: true,
            horizon: None,
            trace: false,
        }
    }
}

impl<T> FpdOptions<T> {
    pub fn unoptimized() -> Self {
        FpdOptions {
            skip_visited_source: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpdResult<T> {
    /// Per-vertex fastest journey duration, `T::UNREACHABLE` when none.
    pub journey: Vec<T>,
    pub source: VertexId,
    pub nodes_dequeued: u64,
    pub arcs_scanned: u64,
    pub phases_run: u64,
    pub trace: Option<Vec<NodeId>>,
}

impl<T: Timestamp> FpdResult<T> {
    pub fn duration(&self, z: VertexId) -> Option<T> {
        to_option(self.journey[z as usize])
    }
}

/// Reusable query state for fastest-duration queries.
pub struct FpdEngine<'a, T> {
    esdg: &'a Esdg<T>,
    opts: FpdOptions<T>,
    /// Phase start time per node; `T::UNREACHABLE` means unset.
    start: Vec<T>,
    queue: VecDeque<NodeId>,
    phases: Vec<NodeId>,
}

impl<'a, T: Timestamp> FpdEngine<'a, T> {
    pub fn new(esdg: &'a Esdg<T>, opts: FpdOptions<T>) -> Self {
        FpdEngine {
            esdg,
            opts,
            start: vec![T::UNREACHABLE; esdg.node_count()],
            queue: VecDeque::new(),
            phases: Vec::new(),
        }
    }

    /// Start times left by the last query, per node.
    pub fn start_times(&self) -> &[T] {
        &self.start
    }

    pub fn run(&mut self, source: VertexId) -> Result<FpdResult<T>> {
        let esdg = self.esdg;
        let n = esdg.vertex_count();
        if source as usize >= n {
            return Err(Error::SourceOutOfRange {
                vertex: source as u64,
                n,
            });
        }
        let mut journey = vec![T::UNREACHABLE; n];
        journey[source as usize] = T::zero();
        self.start.fill(T::UNREACHABLE);
        self.queue.clear();
        self.phases.clear();
        self.phases.extend_from_slice(esdg.source_nodes(source));
        self.phases.sort_by_key(|&x| (Reverse(esdg.dep(x)), x));

        let mut trace = self.opts.trace.then(Vec::new);
        let (mut nodes_dequeued, mut arcs_scanned, mut phases_run) = (0u64, 0u64, 0u64);
        for &seed in &self.phases {
            if self.opts.skip_visited_source && self.start[seed as usize].is_reachable() {
                continue;
            }
            phases_run += 1;
            self.start[seed as usize] = esdg.dep(seed);
            self.queue.push_back(seed);
            while let Some(x) = self.queue.pop_front() {
                nodes_dequeued += 1;
                if let Some(t) = trace.as_mut() {
                    t.push(x);
                }
                let st = self.start[x as usize];
                let d = esdg.arr(x) - st;
                let slot = &mut journey[esdg.right(x) as usize];
                if d < *slot {
                    *slot = d;
                }
                if self.opts.horizon.is_some_and(|h| d > h) {
                    continue;
                }
                for &y in esdg.neighbors(x) {
                    arcs_scanned += 1;
                    if !self.start[y as usize].is_reachable() {
                        self.start[y as usize] = st;
                        self.queue.push_back(y);
                    }
                }
            }
        }

        Ok(FpdResult {
            journey,
            source,
            nodes_dequeued,
            arcs_scanned,
            phases_run,
            trace,
        })
    }
}

/// One-shot fastest-duration query. See [`FpdEngine`] to reuse buffers.
pub fn fastest_duration<T: Timestamp>(
    esdg: &Esdg<T>,
    source: VertexId,
    opts: FpdOptions<T>,
) -> Result<FpdResult<T>> {
    FpdEngine::new(esdg, opts).run(source)
}
