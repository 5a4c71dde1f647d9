//! Fixtures shared by the benchmarks.

use std::collections::BTreeSet;

use hotgraph_core::{
    pagerank_exact, ComputeConfig, DegreeSnapshot, DynamicGraph, RankVector, VertexId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Directed graph with `vertices` vertices and about `vertices * avg_degree`
/// edges. Targets are drawn with a bias toward low ids so in-degrees are
/// skewed, roughly like a web or citation graph.
pub fn synthetic_graph(vertices: usize, avg_degree: usize, seed: u64) -> DynamicGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = DynamicGraph::new();
    for v in 0..vertices as u64 {
        g.add_vertex(VertexId(v));
    }
    let n = vertices as f64;
    for u in 0..vertices as u64 {
        for _ in 0..avg_degree {
            let x: f64 = rng.random();
            let v = (n.powf(x) - 1.0) as u64;
            if v != u {
                g.add_edge(VertexId(u), VertexId(v));
            }
        }
    }
    g
}

/// Adds `changes` random edges and returns the degree snapshot taken before.
pub fn churn(g: &mut DynamicGraph, changes: usize, seed: u64) -> DegreeSnapshot {
    let snapshot = g.snapshot_degrees(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count() as u64;
    for _ in 0..changes {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        if u != v {
            g.add_edge(VertexId(u), VertexId(v));
        }
    }
    snapshot
}

/// The first `fraction` of vertices by id.
pub fn hot_prefix(g: &DynamicGraph, fraction: f64) -> BTreeSet<VertexId> {
    let take = (g.vertex_count() as f64 * fraction).round() as usize;
    g.sorted_vertices().into_iter().take(take).collect()
}

pub fn converged_ranks(g: &DynamicGraph) -> RankVector {
    pagerank_exact(g, &ComputeConfig::default())
}
