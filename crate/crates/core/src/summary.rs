//! Summary graph for the big-vertex model.
//!
//! Every vertex outside the hot set is fused into a single big vertex whose
//! scores stay frozen for the duration of a summarized run. Edges between hot
//! vertices are kept with weight `1 / d_out(u)`, where `d_out(u)` still counts
//! the out-edges of `u` that lead into the big vertex. Edges from the big
//! vertex into a hot vertex `z` are collapsed into one constant inflow
//! `c(z) = sum of w_s / d_out(w)` over the frozen sources `w`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::compute::RankVector;
use crate::error::{Error, Result};
use crate::graph::{DynamicGraph, VertexId};

#[derive(Clone, Debug, PartialEq)]
pub struct IntraEdge {
    pub source: VertexId,
    pub target: VertexId,
    /// `1 / d_out(source)` in the full graph.
    pub val: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryGraph {
    pub hot: BTreeSet<VertexId>,
    /// Edges with both endpoints hot, grouped by ascending target and then
    /// ascending source.
    pub intra_edges: Vec<IntraEdge>,
    /// Collapsed inflow from the big vertex, keyed by hot target.
    pub boundary_inflow: BTreeMap<VertexId, f64>,
    /// Number of distinct `(frozen source, hot target)` edges folded into
    /// `boundary_inflow`.
    pub boundary_pairs: usize,
    /// Total contribution of the big vertex.
    pub b_s: f64,
    pub frozen_scores: RankVector,
}

impl SummaryGraph {
    /// Edges the summarized kernel still touches: `|E_K|` plus the boundary
    /// pairs.
    pub fn edge_count(&self) -> usize {
        self.intra_edges.len() + self.boundary_pairs
    }
}

pub fn summary_edge_count(s: &SummaryGraph) -> usize {
    s.edge_count()
}

fn score_of(ranks: &RankVector, v: VertexId) -> Result<f64> {
    ranks
        .get(v)
        .ok_or_else(|| Error::Integrity(format!("no score for vertex {v}")))
}

pub fn build_summary(
    g: &DynamicGraph,
    hot: &BTreeSet<VertexId>,
    ranks: &RankVector,
) -> Result<SummaryGraph> {
    let members: HashSet<VertexId> = hot.iter().copied().collect();
    let mut intra_edges = Vec::new();
    let mut boundary_inflow = BTreeMap::new();
    let mut boundary_pairs = 0;

    for &z in hot {
        if !g.contains_vertex(z) {
            return Err(Error::Integrity(format!("hot vertex {z} not in graph")));
        }
        score_of(ranks, z)?;
        let mut inflow = 0.0;
        let mut from_big_vertex = false;
        for &w in g.in_neighbors(z) {
            let d_out = g.out_degree(w) as f64;
            if members.contains(&w) {
                intra_edges.push(IntraEdge {
                    source: w,
                    target: z,
                    val: 1.0 / d_out,
                });
            } else {
                inflow += score_of(ranks, w)? / d_out;
                boundary_pairs += 1;
                from_big_vertex = true;
            }
        }
        if from_big_vertex {
            boundary_inflow.insert(z, inflow);
        }
    }

    let b_s = boundary_inflow.values().sum();
    let frozen_scores = RankVector {
        scores: ranks
            .scores
            .iter()
            .filter(|(v, _)| !members.contains(v))
            .map(|(&v, &s)| (v, s))
            .collect(),
        measured_at: ranks.measured_at,
    };
    Ok(SummaryGraph {
        hot: hot.clone(),
        intra_edges,
        boundary_inflow,
        boundary_pairs,
        b_s,
        frozen_scores,
    })
}
