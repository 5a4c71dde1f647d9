//! Vertex-centric PageRank.
//!
//! Each round every vertex `u` sends `score(u) / d_out(u)` along each of its
//! out-edges, and every vertex folds its incoming messages through a
//! [`MessageAggregator`]. For PageRank that is `(1 - beta) + beta * sum`,
//! the unnormalized form whose fixpoint on a strongly connected graph sums to
//! `|V|`. Dangling vertices emit nothing and their mass leaks.
//!
//! Rounds are synchronous: all updates read the previous round's scores.
//! Messages reaching a vertex are summed in ascending source id order, and
//! every message is formed as `score * (1 / d_out)`, so the exact and the
//! summarized kernels agree bit for bit when the hot set is the whole graph.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, VertexId};
use crate::summary::SummaryGraph;

/// Below this many vertices a round runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 4096;

/// Per-vertex scores at a measurement point.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RankVector {
    pub scores: BTreeMap<VertexId, f64>,
    pub measured_at: usize,
}

impl RankVector {
    pub fn uniform(
        vertices: impl IntoIterator<Item = VertexId>,
        value: f64,
        measured_at: usize,
    ) -> Self {
        Self {
            scores: vertices.into_iter().map(|v| (v, value)).collect(),
            measured_at,
        }
    }

    pub fn get(&self, v: VertexId) -> Option<f64> {
        self.scores.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        self.scores.iter().map(|(&v, &s)| (v, s))
    }

    pub fn total(&self) -> f64 {
        self.scores.values().sum()
    }
}

/// Vertices by descending score, ties broken by ascending id.
pub fn rank_descending(rv: &RankVector) -> Vec<VertexId> {
    let mut entries: Vec<_> = rv.iter().collect();
    entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    entries.into_iter().map(|(v, _)| v).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComputeConfig {
    /// Damping factor, in `[0, 1]`.
    pub beta: f64,
    pub iterations: usize,
}

impl Default for ComputeConfig {
    fn default() -> Self {
        Self {
            beta: 0.85,
            iterations: 30,
        }
    }
}

impl ComputeConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::Config(format!("beta {} outside [0, 1]", self.beta)));
        }
        if self.iterations == 0 {
            return Err(Error::Config("iterations must be positive".into()));
        }
        Ok(())
    }
}

/// Folds the messages arriving at a vertex into its new value.
///
/// This is the seam for other random-walk style algorithms; the kernels only
/// ever feed it messages in a fixed order.
pub trait MessageAggregator: Sync {
    /// Value every vertex starts from on a cold run.
    fn initial_value(&self) -> f64;

    fn aggregate<I: Iterator<Item = f64>>(&self, messages: I) -> f64;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PageRankFunction {
    pub damping: f64,
}

impl PageRankFunction {
    pub fn new(damping: f64) -> Self {
        Self { damping }
    }
}

impl MessageAggregator for PageRankFunction {
    fn initial_value(&self) -> f64 {
        1.0
    }

    fn aggregate<I: Iterator<Item = f64>>(&self, messages: I) -> f64 {
        let mut rank_sum = 0.0;
        for msg in messages {
            rank_sum += msg;
        }
        (self.damping * rank_sum) + (1.0 - self.damping)
    }
}

/// Compressed incoming adjacency: messages for target `i` are read from
/// `sources[offsets[i]..offsets[i + 1]]` with weights from `weights`.
struct Incoming {
    offsets: Vec<usize>,
    sources: Vec<usize>,
    weights: Vec<f64>,
}

impl Incoming {
    fn messages<'a>(&'a self, target: usize, scores: &'a [f64]) -> impl Iterator<Item = f64> + 'a {
        let range = self.offsets[target]..self.offsets[target + 1];
        self.sources[range.clone()]
            .iter()
            .zip(&self.weights[range])
            .map(move |(&s, &w)| scores[s] * w)
    }
}

fn round<F>(n: usize, next: &mut Vec<f64>, update: F)
where
    F: Fn(usize) -> f64 + Sync,
{
    if n >= PARALLEL_THRESHOLD {
        (0..n).into_par_iter().map(&update).collect_into_vec(next);
    } else {
        next.clear();
        next.extend((0..n).map(update));
    }
}

/// Runs `iterations` synchronous rounds over the whole graph.
///
/// Vertices present in `warm` start from their warm score, all others from
/// the aggregator's initial value.
pub fn run_exact<A: MessageAggregator>(
    g: &DynamicGraph,
    iterations: usize,
    agg: &A,
    warm: Option<&RankVector>,
    measured_at: usize,
) -> RankVector {
    let n = g.vertex_count();
    let inv_out: Vec<f64> = (0..n)
        .map(|s| match g.slot_out_degree(s) {
            0 => 0.0,
            d => 1.0 / d as f64,
        })
        .collect();
    let mut incoming = Incoming {
        offsets: Vec::with_capacity(n + 1),
        sources: Vec::with_capacity(g.edge_count()),
        weights: Vec::with_capacity(g.edge_count()),
    };
    incoming.offsets.push(0);
    for slot in 0..n {
        for &u in g.slot_in_neighbors(slot) {
            let su = g.slot(u).expect("in-neighbor without a slot");
            incoming.sources.push(su);
            incoming.weights.push(inv_out[su]);
        }
        incoming.offsets.push(incoming.sources.len());
    }

    let mut scores: Vec<f64> = (0..n)
        .map(|s| {
            warm.and_then(|w| w.get(g.slot_id(s)))
                .unwrap_or_else(|| agg.initial_value())
        })
        .collect();
    let mut next = Vec::with_capacity(n);
    for _ in 0..iterations {
        round(n, &mut next, |v| {
            agg.aggregate(incoming.messages(v, &scores))
        });
        std::mem::swap(&mut scores, &mut next);
    }

    let mut pairs: Vec<_> = (0..n).map(|s| (g.slot_id(s), scores[s])).collect();
    pairs.sort_unstable_by_key(|&(v, _)| v);
    RankVector {
        scores: pairs.into_iter().collect(),
        measured_at,
    }
}

/// Runs `iterations` rounds over the hot vertices of `s` only. Frozen
/// vertices keep their scores; their influence arrives through the
/// precomputed boundary inflow, which is fed to the aggregator ahead of the
/// intra-hot messages.
pub fn run_summarized<A: MessageAggregator>(
    s: &SummaryGraph,
    warm: &RankVector,
    iterations: usize,
    agg: &A,
    measured_at: usize,
) -> Result<RankVector> {
    let hot: Vec<VertexId> = s.hot.iter().copied().collect();
    let index: std::collections::HashMap<VertexId, usize> =
        hot.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = hot.len();

    let mut scores = Vec::with_capacity(n);
    for &v in &hot {
        scores.push(
            warm.get(v)
                .ok_or_else(|| Error::Integrity(format!("no warm score for hot vertex {v}")))?,
        );
    }

    let mut incoming = Incoming {
        offsets: vec![0; n + 1],
        sources: Vec::with_capacity(s.intra_edges.len()),
        weights: Vec::with_capacity(s.intra_edges.len()),
    };
    let mut counts = vec![0usize; n];
    for e in &s.intra_edges {
        let (Some(&src), Some(&dst)) = (index.get(&e.source), index.get(&e.target)) else {
            return Err(Error::Integrity(format!(
                "intra edge {} -> {} leaves the hot set",
                e.source, e.target
            )));
        };
        counts[dst] += 1;
        incoming.sources.push(src);
        incoming.weights.push(e.val);
    }
    for (i, c) in counts.iter().enumerate() {
        incoming.offsets[i + 1] = incoming.offsets[i] + c;
    }
    if incoming
        .offsets
        .windows(2)
        .enumerate()
        .any(|(i, w)| s.intra_edges[w[0]..w[1]].iter().any(|e| e.target != hot[i]))
    {
        return Err(Error::Integrity("intra edges not grouped by target".into()));
    }
    let inflow: Vec<Option<f64>> = hot
        .iter()
        .map(|v| s.boundary_inflow.get(v).copied())
        .collect();

    let mut next = Vec::with_capacity(n);
    for _ in 0..iterations {
        round(n, &mut next, |v| {
            agg.aggregate(inflow[v].into_iter().chain(incoming.messages(v, &scores)))
        });
        std::mem::swap(&mut scores, &mut next);
    }

    let mut out = s.frozen_scores.clone();
    out.measured_at = measured_at;
    out.scores.extend(hot.into_iter().zip(scores));
    Ok(out)
}

/// Cold-start PageRank over the full graph.
pub fn pagerank_exact(g: &DynamicGraph, cfg: &ComputeConfig) -> RankVector {
    run_exact(g, cfg.iterations, &PageRankFunction::new(cfg.beta), None, 0)
}

/// PageRank over the full graph starting from `warm` where available.
pub fn pagerank_exact_warm(g: &DynamicGraph, cfg: &ComputeConfig, warm: &RankVector) -> RankVector {
    run_exact(
        g,
        cfg.iterations,
        &PageRankFunction::new(cfg.beta),
        Some(warm),
        warm.measured_at,
    )
}

/// PageRank over the summary graph, warm-started from `warm`.
pub fn pagerank_summarized(
    s: &SummaryGraph,
    warm: &RankVector,
    cfg: &ComputeConfig,
) -> Result<RankVector> {
    run_summarized(
        s,
        warm,
        cfg.iterations,
        &PageRankFunction::new(cfg.beta),
        warm.measured_at,
    )
}
