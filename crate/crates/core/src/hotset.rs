//! Hot vertex selection.
//!
//! The hot set is built in three tiers, each excluding the earlier ones:
//!
//! 1. `K_r`: vertices whose out-degree changed by a ratio above `r` since the
//!    previous measurement point, plus every vertex that did not exist then.
//! 2. `K_n`: vertices within `n` out-hops of `K_r`.
//! 3. `K_delta`: vertices reached from `K_n` within a per-vertex hop budget
//!    `f_delta(v) = log(d_bar * v_s / (delta * d(v))) / log(d_bar)`, i.e. the
//!    number of hops after which a contribution of `v_s / d(v)` diluted by
//!    the average degree falls below `delta`.

use std::collections::{BTreeSet, HashSet};

use crate::compute::RankVector;
use crate::error::{Error, Result};
use crate::graph::{DegreeSnapshot, DynamicGraph, VertexId};

/// Which tiers seed the score-driven expansion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DeltaSeed {
    /// Only `K_n`. With `n = 0` the expansion is then always empty.
    #[default]
    Neighborhood,
    /// `K_r` together with `K_n`.
    UpdatedAndNeighborhood,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HotSetParams {
    /// Degree change ratio threshold.
    pub r: f64,
    /// Neighborhood expansion depth.
    pub n: usize,
    pub delta: f64,
    pub delta_seed: DeltaSeed,
}

impl HotSetParams {
    pub fn new(r: f64, n: usize, delta: f64) -> Result<Self> {
        let params = Self {
            r,
            n,
            delta,
            delta_seed: DeltaSeed::default(),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r.is_nan() || self.r < 0.0 {
            return Err(Error::Config(format!("r must be >= 0, got {}", self.r)));
        }
        if self.delta.is_nan() || self.delta <= 0.0 {
            return Err(Error::Config(format!(
                "delta must be > 0, got {}",
                self.delta
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HotSet {
    pub k_r: BTreeSet<VertexId>,
    pub k_n: BTreeSet<VertexId>,
    pub k_delta: BTreeSet<VertexId>,
    pub all: BTreeSet<VertexId>,
}

impl HotSet {
    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }
}

fn degree_changed(now: usize, before: usize, r: f64) -> bool {
    if before == 0 {
        // Unbounded ratio unless the vertex is still without out-edges.
        return now != 0;
    }
    (now as f64 / before as f64 - 1.0).abs() > r
}

/// `K_r`: relative out-degree change strictly above `r`, or new since `prev`.
pub fn select_k_r(g: &DynamicGraph, prev: &DegreeSnapshot, r: f64) -> BTreeSet<VertexId> {
    g.vertices()
        .filter(|&u| match prev.get(u) {
            None => true,
            Some(before) => degree_changed(g.out_degree(u), before, r),
        })
        .collect()
}

/// `K_n`: vertices outside `k_r` within `n` out-hops of some member of `k_r`.
pub fn select_k_n(g: &DynamicGraph, k_r: &BTreeSet<VertexId>, n: usize) -> BTreeSet<VertexId> {
    if n == 0 {
        return BTreeSet::new();
    }
    g.bfs_out(k_r.iter().copied(), n)
        .into_keys()
        .filter(|v| !k_r.contains(v))
        .collect()
}

/// Hop budget `f_delta` for a vertex with score `v_s` and out-degree `d_v`.
/// Returns 0 where the expression is undefined (`d_bar <= 1`, `d_v = 0`,
/// `v_s <= 0`).
pub fn delta_hops(v_s: f64, d_v: usize, d_bar: f64, delta: f64) -> f64 {
    let defined = d_bar > 1.0 && d_v > 0 && v_s > 0.0 && delta > 0.0;
    if !defined {
        return 0.0;
    }
    (d_bar * v_s / (delta * d_v as f64)).ln() / d_bar.ln()
}

/// `K_delta`: breadth-first expansion from `seeds`. A vertex outside
/// `excluded` first reached at hop `h` joins iff `h <= f_delta(v)`, and only
/// joined vertices are expanded further.
pub fn select_k_delta(
    g: &DynamicGraph,
    seeds: &BTreeSet<VertexId>,
    excluded: &BTreeSet<VertexId>,
    ranks: &RankVector,
    d_bar: f64,
    delta: f64,
) -> BTreeSet<VertexId> {
    let mut included = BTreeSet::new();
    let mut visited: HashSet<VertexId> = seeds.iter().copied().collect();
    let mut frontier: Vec<VertexId> = seeds.iter().copied().collect();
    let mut hop = 0usize;
    while !frontier.is_empty() {
        hop += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in g.out_neighbors(u) {
                if excluded.contains(&v) || !visited.insert(v) {
                    continue;
                }
                let v_s = ranks.get(v).unwrap_or(0.0);
                if hop as f64 <= delta_hops(v_s, g.out_degree(v), d_bar, delta) {
                    included.insert(v);
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    included
}

/// Composes the three tiers. `d_bar` is the average out-degree of the
/// current graph.
pub fn select_hot_set(
    g: &DynamicGraph,
    prev: &DegreeSnapshot,
    ranks: &RankVector,
    params: &HotSetParams,
    d_bar: f64,
) -> HotSet {
    let k_r = select_k_r(g, prev, params.r);
    let k_n = select_k_n(g, &k_r, params.n);
    let excluded: BTreeSet<VertexId> = k_r.union(&k_n).copied().collect();
    let k_delta = match params.delta_seed {
        DeltaSeed::Neighborhood => select_k_delta(g, &k_n, &excluded, ranks, d_bar, params.delta),
        DeltaSeed::UpdatedAndNeighborhood => {
            select_k_delta(g, &excluded, &excluded, ranks, d_bar, params.delta)
        }
    };
    let mut all = excluded;
    all.extend(k_delta.iter().copied());
    HotSet {
        k_r,
        k_n,
        k_delta,
        all,
    }
}
