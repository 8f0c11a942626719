//! Single-source earliest arrival times over an [`Esdg`].
//!
//! All source nodes departing at or after the ready time seed one shared BFS;
//! a bit-packed visited set guarantees each node is dequeued at most once per
//! query. Arrival labels are relaxed when a node is dequeued.

use std::collections::VecDeque;

use bitvec::prelude::*;

use crate::error::{Error, Result};
use crate::esdg::{Esdg, NodeId};
use crate::graph::VertexId;
use crate::time::{to_option, Timestamp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EatOptions {
    /// Do not expand a node whose arrival is worse than the label it relaxes.
    pub skip_no_improve: bool,
    /// Also skip on equal arrival. Only consulted with `skip_no_improve`.
    pub skip_on_equal: bool,
    /// Record the dequeue order in [`EatResult::trace`].
    pub trace: bool,
}

impl Default for EatOptions {
    fn default() -> Self {
        EatOptions {
            skip_no_improve: true,
            skip_on_equal: false,
            trace: false,
        }
    }
}

impl EatOptions {
    pub fn unoptimized() -> Self {
        EatOptions {
            skip_no_improve: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EatResult<T> {
    /// Per-vertex earliest arrival, `T::UNREACHABLE` when none.
    pub eat: Vec<T>,
    pub source: VertexId,
    pub ready_time: T,
    pub nodes_dequeued: u64,
    pub arcs_scanned: u64,
    pub trace: Option<Vec<NodeId>>,
}

impl<T: Timestamp> EatResult<T> {
    pub fn arrival(&self, z: VertexId) -> Option<T> {
        to_option(self.eat[z as usize])
    }
}

/// Reusable query state; keeps its buffers across queries on the same graph.
pub struct EatEngine<'a, T> {
    esdg: &'a Esdg<T>,
    opts: EatOptions,
    visited: BitVec<u64, Lsb0>,
    queue: VecDeque<NodeId>,
}

impl<'a, T: Timestamp> EatEngine<'a, T> {
    pub fn new(esdg: &'a Esdg<T>, opts: EatOptions) -> Self {
        EatEngine {
            esdg,
            opts,
            visited: bitvec![u64, Lsb0; 0; esdg.node_count()],
            queue: VecDeque::new(),
        }
    }

    pub fn options(&self) -> EatOptions {
        self.opts
    }

    pub fn run(&mut self, source: VertexId, ready_time: T) -> Result<EatResult<T>> {
        self.check_query(source, ready_time)?;
        let seeds = self.esdg.source_nodes(source);
        Ok(self.search(source, ready_time, seeds.iter().copied()))
    }

    /// Like [`run`](Self::run) but seeds the search in the given order, which
    /// must list source nodes of `source` only.
    pub fn run_with_seed_order(
        &mut self,
        source: VertexId,
        ready_time: T,
        seeds: &[NodeId],
    ) -> Result<EatResult<T>> {
        self.check_query(source, ready_time)?;
        for &x in seeds {
            if x as usize >= self.esdg.node_count() || self.esdg.left(x) != source {
                return Err(Error::InvalidArgument(format!(
                    "node {x} does not leave vertex {source}"
                )));
            }
        }
        Ok(self.search(source, ready_time, seeds.iter().copied()))
    }

    fn check_query(&self, source: VertexId, ready_time: T) -> Result<()> {
        let n = self.esdg.vertex_count();
        if source as usize >= n {
            return Err(Error::SourceOutOfRange {
                vertex: source as u64,
                n,
            });
        }
        if !ready_time.is_reachable() {
            return Err(Error::ReadyTimeOutOfRange(ready_time.as_u64()));
        }
        Ok(())
    }

    fn search(
        &mut self,
        source: VertexId,
        ready_time: T,
        seeds: impl Iterator<Item = NodeId>,
    ) -> EatResult<T> {
        let esdg = self.esdg;
        let mut eat = vec![T::UNREACHABLE; esdg.vertex_count()];
        eat[source as usize] = ready_time;
        self.visited.fill(false);
        self.queue.clear();
        let mut trace = self.opts.trace.then(Vec::new);
        let (mut nodes_dequeued, mut arcs_scanned) = (0u64, 0u64);

        for seed in seeds {
            if esdg.dep(seed) < ready_time || self.visited.replace(seed as usize, true) {
                continue;
            }
            self.queue.push_back(seed);
            while let Some(x) = self.queue.pop_front() {
                nodes_dequeued += 1;
                if let Some(t) = trace.as_mut() {
                    t.push(x);
                }
                let slot = &mut eat[esdg.right(x) as usize];
                let (before, arr) = (*slot, esdg.arr(x));
                if arr < before {
                    *slot = arr;
                }
                if self.opts.skip_no_improve
                    && (arr > before || (self.opts.skip_on_equal && arr == before))
                {
                    continue;
                }
                for &y in esdg.neighbors(x) {
                    arcs_scanned += 1;
                    if !self.visited.replace(y as usize, true) {
                        self.queue.push_back(y);
                    }
                }
            }
        }

        EatResult {
            eat,
            source,
            ready_time,
            nodes_dequeued,
            arcs_scanned,
            trace,
        }
    }
}

/// One-shot earliest arrival query. See [`EatEngine`] to reuse buffers.
pub fn earliest_arrival<T: Timestamp>(
    esdg: &Esdg<T>,
    source: VertexId,
    ready_time: T,
    opts: EatOptions,
) -> Result<EatResult<T>> {
    EatEngine::new(esdg, opts).run(source, ready_time)
}
