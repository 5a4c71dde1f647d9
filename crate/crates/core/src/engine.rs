//! Query loop over a stream of edge updates.
//!
//! Additions and removals are buffered and only applied to the graph when a
//! query arrives. Each query is then answered by one of three strategies:
//! repeating the last answer (nothing changed), a summarized run over the hot
//! vertices, or a full run. Measurement points are queries: the degree
//! snapshot compared against at query `t` is the one taken right after the
//! updates of query `t - 1` were applied.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::compute::{
    pagerank_exact, pagerank_summarized, ComputeConfig, MessageAggregator, PageRankFunction,
    RankVector,
};
use crate::error::{Error, Result};
use crate::graph::{DegreeSnapshot, DynamicGraph, VertexId};
use crate::hotset::{select_hot_set, HotSetParams};
use crate::stream::StreamEvent;
use crate::summary::build_summary;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpdateBuffer {
    pub pending_adds: Vec<(VertexId, VertexId)>,
    pub pending_removes: Vec<(VertexId, VertexId)>,
    pub touched_vertices: std::collections::BTreeSet<VertexId>,
}

impl UpdateBuffer {
    pub fn register_add(&mut self, u: VertexId, v: VertexId) {
        self.pending_adds.push((u, v));
        self.touched_vertices.extend([u, v]);
    }

    pub fn register_remove(&mut self, u: VertexId, v: VertexId) {
        self.pending_removes.push((u, v));
        self.touched_vertices.extend([u, v]);
    }

    pub fn add_count(&self) -> usize {
        self.pending_adds.len()
    }

    pub fn remove_count(&self) -> usize {
        self.pending_removes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending_adds.is_empty() && self.pending_removes.is_empty()
    }

    pub fn clear(&mut self) {
        self.pending_adds.clear();
        self.pending_removes.clear();
        self.touched_vertices.clear();
    }
}

/// Effective outcome of [`apply_updates`]. Adds of present edges and
/// removes of absent edges are no-ops and counted as ignored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AppliedUpdates {
    pub adds_applied: usize,
    pub adds_ignored: usize,
    pub removes_applied: usize,
    pub removes_ignored: usize,
}

/// Applies buffered adds in order, then removes in order, and clears the buffer.
pub fn apply_updates(g: &mut DynamicGraph, buf: &mut UpdateBuffer) -> AppliedUpdates {
    let mut applied = AppliedUpdates::default();
    for &(u, v) in &buf.pending_adds {
        if g.add_edge(u, v) {
            applied.adds_applied += 1;
        } else {
            applied.adds_ignored += 1;
        }
    }
    for &(u, v) in &buf.pending_removes {
        if g.remove_edge(u, v) {
            applied.removes_applied += 1;
        } else {
            applied.removes_ignored += 1;
        }
    }
    buf.clear();
    applied
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    RepeatLastAnswer,
    ComputeApproximate,
    ComputeExact,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::RepeatLastAnswer => "repeat",
            Strategy::ComputeApproximate => "approximate",
            Strategy::ComputeExact => "exact",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "repeat" => Ok(Strategy::RepeatLastAnswer),
            "approximate" => Ok(Strategy::ComputeApproximate),
            "exact" => Ok(Strategy::ComputeExact),
            other => Err(Error::Config(format!("unknown strategy `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PolicyMode {
    AlwaysExact,
    #[default]
    AlwaysApproximate,
    /// Exact every `exact_refresh_period` queries, approximate otherwise.
    Auto,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StrategyPolicy {
    pub mode: PolicyMode,
    /// Used by [`PolicyMode::Auto`]; without it only the initial run is exact.
    pub exact_refresh_period: Option<usize>,
}

impl StrategyPolicy {
    pub fn always_exact() -> Self {
        Self {
            mode: PolicyMode::AlwaysExact,
            exact_refresh_period: None,
        }
    }

    pub fn always_approximate() -> Self {
        Self {
            mode: PolicyMode::AlwaysApproximate,
            exact_refresh_period: None,
        }
    }

    pub fn auto(period: usize) -> Self {
        Self {
            mode: PolicyMode::Auto,
            exact_refresh_period: Some(period),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.exact_refresh_period == Some(0) {
            return Err(Error::Config(
                "exact refresh period must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Query 0 is the initial run over the starting graph.
pub fn decide_strategy(policy: &StrategyPolicy, has_pending: bool, query_index: usize) -> Strategy {
    if !has_pending {
        return Strategy::RepeatLastAnswer;
    }
    match policy.mode {
        PolicyMode::AlwaysExact => Strategy::ComputeExact,
        PolicyMode::AlwaysApproximate => Strategy::ComputeApproximate,
        PolicyMode::Auto => {
            let refresh = query_index == 0
                || policy
                    .exact_refresh_period
                    .is_some_and(|p| p > 0 && query_index.is_multiple_of(p));
            if refresh {
                Strategy::ComputeExact
            } else {
                Strategy::ComputeApproximate
            }
        }
    }
}

/// Statistics of one answered query. The three phase timers are
/// single-process stand-ins for ingestion, setup and compute cost.
#[derive(Clone, Debug, PartialEq)]
pub struct QueryRecord {
    pub query_index: usize,
    pub strategy: Strategy,
    pub elapsed_total: Duration,
    pub elapsed_apply: Duration,
    pub elapsed_summary: Duration,
    pub elapsed_compute: Duration,
    pub hot_count: usize,
    pub summary_edges: usize,
    pub total_edges: usize,
    pub total_vertices: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QueryOutcome {
    pub record: QueryRecord,
    pub ranks: RankVector,
}

pub struct Engine {
    graph: DynamicGraph,
    buffer: UpdateBuffer,
    previous: RankVector,
    snapshot: DegreeSnapshot,
    params: HotSetParams,
    policy: StrategyPolicy,
    cfg: ComputeConfig,
    answered: usize,
    initial_elapsed: Duration,
}

impl Engine {
    /// Validates the configuration and runs the initial full computation.
    pub fn new(
        graph: DynamicGraph,
        params: HotSetParams,
        policy: StrategyPolicy,
        cfg: ComputeConfig,
    ) -> Result<Self> {
        params.validate()?;
        policy.validate()?;
        cfg.validate()?;
        let start = Instant::now();
        let previous = pagerank_exact(&graph, &cfg);
        let initial_elapsed = start.elapsed();
        let snapshot = graph.snapshot_degrees(0);
        Ok(Self {
            graph,
            buffer: UpdateBuffer::default(),
            previous,
            snapshot,
            params,
            policy,
            cfg,
            answered: 0,
            initial_elapsed,
        })
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }

    pub fn pending(&self) -> &UpdateBuffer {
        &self.buffer
    }

    pub fn last_result(&self) -> &RankVector {
        &self.previous
    }

    pub fn initial_elapsed(&self) -> Duration {
        self.initial_elapsed
    }

    pub fn queries_answered(&self) -> usize {
        self.answered
    }

    pub fn register_add(&mut self, u: VertexId, v: VertexId) {
        self.buffer.register_add(u, v);
    }

    pub fn register_remove(&mut self, u: VertexId, v: VertexId) {
        self.buffer.register_remove(u, v);
    }

    /// Feeds one event; returns the outcome for queries.
    pub fn handle(&mut self, event: &StreamEvent) -> Result<Option<QueryOutcome>> {
        match *event {
            StreamEvent::Add(u, v) => self.register_add(u, v),
            StreamEvent::Remove(u, v) => self.register_remove(u, v),
            StreamEvent::Query => return self.query().map(Some),
        }
        Ok(None)
    }

    pub fn query(&mut self) -> Result<QueryOutcome> {
        let start = Instant::now();
        let query_index = self.answered + 1;
        let strategy = decide_strategy(&self.policy, !self.buffer.is_empty(), query_index);
        let mut record = QueryRecord {
            query_index,
            strategy,
            elapsed_total: Duration::ZERO,
            elapsed_apply: Duration::ZERO,
            elapsed_summary: Duration::ZERO,
            elapsed_compute: Duration::ZERO,
            hot_count: 0,
            summary_edges: 0,
            total_edges: self.graph.edge_count(),
            total_vertices: self.graph.vertex_count(),
        };

        if strategy != Strategy::RepeatLastAnswer {
            // Vertices first seen in this batch start from the initial value.
            let initial = PageRankFunction::new(self.cfg.beta).initial_value();
            for &v in &self.buffer.touched_vertices {
                self.previous.scores.entry(v).or_insert(initial);
            }
            let phase = Instant::now();
            apply_updates(&mut self.graph, &mut self.buffer);
            record.elapsed_apply = phase.elapsed();
            let prev_snapshot =
                std::mem::replace(&mut self.snapshot, self.graph.snapshot_degrees(query_index));
            record.total_edges = self.graph.edge_count();
            record.total_vertices = self.graph.vertex_count();

            let ranks = if strategy == Strategy::ComputeExact {
                let phase = Instant::now();
                let mut ranks = pagerank_exact(&self.graph, &self.cfg);
                record.elapsed_compute = phase.elapsed();
                ranks.measured_at = query_index;
                record.hot_count = record.total_vertices;
                record.summary_edges = record.total_edges;
                ranks
            } else {
                let phase = Instant::now();
                let d_bar = self.graph.average_out_degree();
                let hot = select_hot_set(
                    &self.graph,
                    &prev_snapshot,
                    &self.previous,
                    &self.params,
                    d_bar,
                );
                let summary = build_summary(&self.graph, &hot.all, &self.previous)?;
                record.elapsed_summary = phase.elapsed();
                record.hot_count = hot.len();
                record.summary_edges = summary.edge_count();

                let phase = Instant::now();
                let mut ranks = pagerank_summarized(&summary, &self.previous, &self.cfg)?;
                record.elapsed_compute = phase.elapsed();
                ranks.measured_at = query_index;
                ranks
            };
            self.previous = ranks;
        }

        self.answered = query_index;
        record.elapsed_total = start.elapsed();
        Ok(QueryOutcome {
            record,
            ranks: self.previous.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StreamRun {
    /// Result of the initial full run.
    pub initial: RankVector,
    pub final_ranks: RankVector,
    pub records: Vec<QueryRecord>,
    pub per_query: Vec<RankVector>,
}

/// Replays `events` onto `g0` and collects every query's outcome.
pub fn run_stream(
    g0: DynamicGraph,
    events: &[StreamEvent],
    params: HotSetParams,
    policy: StrategyPolicy,
    cfg: ComputeConfig,
) -> Result<StreamRun> {
    let mut engine = Engine::new(g0, params, policy, cfg)?;
    let initial = engine.last_result().clone();
    let mut records = Vec::new();
    let mut per_query = Vec::new();
    for event in events {
        if let Some(outcome) = engine.handle(event)? {
            records.push(outcome.record);
            per_query.push(outcome.ranks);
        }
    }
    Ok(StreamRun {
        initial,
        final_ranks: engine.last_result().clone(),
        records,
        per_query,
    })
}
