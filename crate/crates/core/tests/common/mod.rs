//! Random instance generators and brute-force oracles shared by the
//! integration tests. Oracles deliberately avoid the library's traversal and
//! kernel code: they work on plain edge lists and dense matrices.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use hotgraph_core::{DegreeSnapshot, DynamicGraph, RankVector, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vid(id: u64) -> VertexId {
    VertexId(id)
}

/// Directed graph on vertices `0..n` (ids spread out to exercise sparse ids)
/// with each ordered pair present with probability `density`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> DynamicGraph {
    let mut g = DynamicGraph::new();
    for i in 0..n {
        g.add_vertex(vid(spread(i)));
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(density) {
                g.add_edge(vid(spread(u)), vid(spread(v)));
            }
        }
    }
    g
}

/// Random graph with `m` distinct edges over `n` vertices.
pub fn random_sparse_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> DynamicGraph {
    let mut g = DynamicGraph::new();
    while g.edge_count() < m {
        let u = rng.random_range(0..n) as u64;
        let v = rng.random_range(0..n) as u64;
        if u != v {
            g.add_edge(vid(u), vid(v));
        }
    }
    g
}

/// Every vertex has at least one out-edge: a ring plus random chords.
pub fn dangling_free_graph(rng: &mut ChaCha8Rng, n: usize, chords: usize) -> DynamicGraph {
    let mut g = DynamicGraph::from_edges((0..n as u64).map(|i| (i, (i + 1) % n as u64)));
    for _ in 0..chords {
        let u = rng.random_range(0..n) as u64;
        let v = rng.random_range(0..n) as u64;
        g.add_edge(vid(u), vid(v));
    }
    g
}

pub fn spread(i: usize) -> u64 {
    (i as u64) * 7 + 3
}

pub fn random_ranks(rng: &mut ChaCha8Rng, g: &DynamicGraph, lo: f64, hi: f64) -> RankVector {
    RankVector {
        scores: g
            .sorted_vertices()
            .into_iter()
            .map(|v| (v, rng.random_range(lo..hi)))
            .collect(),
        measured_at: 0,
    }
}

/// Applies `changes` random edge additions/removals, sometimes touching new
/// vertices, and returns the snapshot taken before the changes.
pub fn perturb(rng: &mut ChaCha8Rng, g: &mut DynamicGraph, changes: usize) -> DegreeSnapshot {
    let before = g.snapshot_degrees(0);
    let ids = g.sorted_vertices();
    let mut next_new = ids.iter().map(|v| v.0).max().unwrap_or(0) + 1;
    for _ in 0..changes {
        let u = ids[rng.random_range(0..ids.len())];
        if rng.random_bool(0.1) {
            g.add_edge(u, vid(next_new));
            next_new += 1;
            continue;
        }
        let out: Vec<_> = g.out_neighbors(u).to_vec();
        if !out.is_empty() && rng.random_bool(0.4) {
            g.remove_edge(u, out[rng.random_range(0..out.len())]);
        } else {
            let v = ids[rng.random_range(0..ids.len())];
            if u != v {
                g.add_edge(u, v);
            }
        }
    }
    before
}

/// Plain edge list `(u, v)` and out-degree table built by scanning edges.
pub struct EdgeTable {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub out_degree: HashMap<VertexId, usize>,
}

impl EdgeTable {
    pub fn of(g: &DynamicGraph) -> Self {
        let vertices = g.sorted_vertices();
        let edges = g.edges();
        let mut out_degree: HashMap<VertexId, usize> = vertices.iter().map(|&v| (v, 0)).collect();
        for &(u, _) in &edges {
            *out_degree.get_mut(&u).unwrap() += 1;
        }
        Self {
            vertices,
            edges,
            out_degree,
        }
    }

    /// All-pairs hop distances by Floyd–Warshall.
    pub fn all_pairs(&self) -> (HashMap<VertexId, usize>, Vec<Vec<usize>>) {
        const INF: usize = usize::MAX / 4;
        let idx: HashMap<_, _> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let n = self.vertices.len();
        let mut d = vec![vec![INF; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
        }
        for &(u, v) in &self.edges {
            d[idx[&u]][idx[&v]] = d[idx[&u]][idx[&v]].min(1);
        }
        for k in 0..n {
            for i in 0..n {
                if d[i][k] == INF {
                    continue;
                }
                for j in 0..n {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        (idx, d)
    }
}

/// Repeated-frontier BFS: distance `h` vertices are those with an in-edge
/// from a distance `h - 1` vertex and no smaller distance.
pub fn naive_bfs(
    g: &DynamicGraph,
    sources: &[VertexId],
    max_hops: usize,
) -> BTreeMap<VertexId, usize> {
    let table = EdgeTable::of(g);
    let mut dist: BTreeMap<VertexId, usize> = sources.iter().map(|&s| (s, 0)).collect();
    for h in 1..=max_hops {
        let layer: Vec<_> = table
            .edges
            .iter()
            .filter(|(u, v)| dist.get(u) == Some(&(h - 1)) && !dist.contains_key(v))
            .map(|&(_, v)| v)
            .collect();
        for v in layer {
            dist.entry(v).or_insert(h);
        }
    }
    dist
}

pub fn oracle_k_r(g: &DynamicGraph, prev: &DegreeSnapshot, r: f64) -> BTreeSet<VertexId> {
    let table = EdgeTable::of(g);
    table
        .vertices
        .iter()
        .copied()
        .filter(|v| match prev.degrees.get(v) {
            None => true,
            Some(&0) => table.out_degree[v] != 0,
            Some(&before) => ((table.out_degree[v] as f64 / before as f64) - 1.0).abs() > r,
        })
        .collect()
}

pub fn oracle_k_n(g: &DynamicGraph, k_r: &BTreeSet<VertexId>, n: usize) -> BTreeSet<VertexId> {
    if n == 0 {
        return BTreeSet::new();
    }
    let table = EdgeTable::of(g);
    let (idx, d) = table.all_pairs();
    table
        .vertices
        .iter()
        .copied()
        .filter(|v| !k_r.contains(v))
        .filter(|v| k_r.iter().any(|u| d[idx[u]][idx[v]] <= n))
        .collect()
}

pub fn oracle_delta_hops(v_s: f64, d_v: usize, d_bar: f64, delta: f64) -> f64 {
    if d_bar <= 1.0 || d_v == 0 || v_s <= 0.0 {
        0.0
    } else {
        (d_bar * v_s / (delta * d_v as f64)).log10() / d_bar.log10()
    }
}

/// Least fixpoint of: `v` joins iff its hop distance from `seeds`, along
/// paths whose intermediate vertices are seeds or already joined, is at most
/// `f_delta(v)`.
pub fn oracle_k_delta(
    g: &DynamicGraph,
    seeds: &BTreeSet<VertexId>,
    excluded: &BTreeSet<VertexId>,
    ranks: &RankVector,
    d_bar: f64,
    delta: f64,
) -> BTreeSet<VertexId> {
    const INF: usize = usize::MAX / 4;
    let table = EdgeTable::of(g);
    let mut joined: BTreeSet<VertexId> = BTreeSet::new();
    loop {
        let mut dist: HashMap<VertexId, usize> = table.vertices.iter().map(|&v| (v, INF)).collect();
        for s in seeds {
            dist.insert(*s, 0);
        }
        for _ in 0..table.vertices.len() {
            let mut changed = false;
            for &(u, v) in &table.edges {
                let relay = seeds.contains(&u) || joined.contains(&u);
                if !relay || excluded.contains(&v) || seeds.contains(&v) {
                    continue;
                }
                let cand = dist[&u] + 1;
                if cand < dist[&v] {
                    dist.insert(v, cand);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let next: BTreeSet<VertexId> = table
            .vertices
            .iter()
            .copied()
            .filter(|v| !excluded.contains(v) && !seeds.contains(v))
            .filter(|v| {
                let f = oracle_delta_hops(ranks.scores[v], table.out_degree[v], d_bar, delta);
                dist[v] < INF && dist[v] as f64 <= f
            })
            .collect();
        if next == joined {
            return joined;
        }
        joined = next;
    }
}

pub struct SummaryOracle {
    pub intra: BTreeSet<(VertexId, VertexId)>,
    pub intra_val: BTreeMap<(VertexId, VertexId), f64>,
    pub inflow: BTreeMap<VertexId, f64>,
    pub boundary_pairs: usize,
    pub b_s: f64,
}

/// Classifies every edge by the membership of its endpoints.
pub fn oracle_summary(
    g: &DynamicGraph,
    hot: &BTreeSet<VertexId>,
    ranks: &RankVector,
) -> SummaryOracle {
    let table = EdgeTable::of(g);
    let mut out = SummaryOracle {
        intra: BTreeSet::new(),
        intra_val: BTreeMap::new(),
        inflow: BTreeMap::new(),
        boundary_pairs: 0,
        b_s: 0.0,
    };
    for &(u, v) in &table.edges {
        match (hot.contains(&u), hot.contains(&v)) {
            (true, true) => {
                out.intra.insert((u, v));
                out.intra_val
                    .insert((u, v), 1.0 / table.out_degree[&u] as f64);
            }
            (false, true) => {
                let c = ranks.scores[&u] / table.out_degree[&u] as f64;
                *out.inflow.entry(v).or_insert(0.0) += c;
                out.boundary_pairs += 1;
                out.b_s += c;
            }
            _ => {}
        }
    }
    out
}

/// Dense power iteration: `x <- (1 - beta) + beta * M x` with
/// `M[v][u] = 1 / d_out(u)` for every edge `u -> v`.
pub fn dense_pagerank(
    g: &DynamicGraph,
    beta: f64,
    iterations: usize,
    start: Option<&RankVector>,
) -> BTreeMap<VertexId, f64> {
    let table = EdgeTable::of(g);
    let n = table.vertices.len();
    let idx: HashMap<_, _> = table
        .vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut m = vec![vec![0.0; n]; n];
    for &(u, v) in &table.edges {
        m[idx[&v]][idx[&u]] = 1.0 / table.out_degree[&u] as f64;
    }
    let mut x: Vec<f64> = table
        .vertices
        .iter()
        .map(|v| start.and_then(|s| s.get(*v)).unwrap_or(1.0))
        .collect();
    for _ in 0..iterations {
        x = (0..n)
            .map(|i| (1.0 - beta) + beta * (0..n).map(|j| m[i][j] * x[j]).sum::<f64>())
            .collect();
    }
    table.vertices.iter().copied().zip(x).collect()
}

/// Exact power iteration on the full graph where every vertex outside `hot`
/// is pinned to its frozen score after each round.
pub fn clamped_pagerank(
    g: &DynamicGraph,
    hot: &BTreeSet<VertexId>,
    warm: &RankVector,
    beta: f64,
    iterations: usize,
) -> BTreeMap<VertexId, f64> {
    let table = EdgeTable::of(g);
    let mut x: BTreeMap<VertexId, f64> = warm.scores.clone();
    for _ in 0..iterations {
        let mut sums: BTreeMap<VertexId, f64> = table.vertices.iter().map(|&v| (v, 0.0)).collect();
        for &(u, v) in &table.edges {
            *sums.get_mut(&v).unwrap() += x[&u] / table.out_degree[&u] as f64;
        }
        for (&v, &s) in &sums {
            if hot.contains(&v) {
                x.insert(v, (1.0 - beta) + beta * s);
            }
        }
    }
    x
}

/// RBO_ext evaluated straight from its definition, recomputing each prefix
/// overlap from scratch.
pub fn oracle_rbo(a: &[VertexId], b: &[VertexId], p: f64, k: usize) -> f64 {
    let overlap = |d: usize| -> f64 {
        let sa: BTreeSet<_> = a[..d].iter().collect();
        b[..d].iter().filter(|x| sa.contains(x)).count() as f64
    };
    let mut sum = 0.0;
    for d in 1..=k {
        sum += overlap(d) / d as f64 * p.powi(d as i32);
    }
    overlap(k) / k as f64 * p.powi(k as i32) + (1.0 - p) / p * sum
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize, offset: u64) -> Vec<VertexId> {
    use rand::seq::SliceRandom;
    let mut v: Vec<VertexId> = (0..n as u64).map(|i| vid(i + offset)).collect();
    v.shuffle(rng);
    v
}
