//! Mutable directed graph with set semantics on edges.
//!
//! Vertices live in dense slots that are assigned on first sight and never
//! recycled, so a vertex whose last edge was removed keeps its identity (and,
//! upstream, its last score). Adjacency lists are kept sorted by vertex id so
//! that every traversal, and every floating-point sum built on top of one, runs
//! in the same order regardless of the update history.

use std::collections::{HashMap, HashSet};
use std::fmt;

/// Identifier of a vertex. Stable across updates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for VertexId {
    fn from(id: u64) -> Self {
        VertexId(id)
    }
}

/// Out-degree of every vertex at a measurement point.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeSnapshot {
    pub degrees: HashMap<VertexId, usize>,
    pub taken_at: usize,
}

impl DegreeSnapshot {
    pub fn get(&self, v: VertexId) -> Option<usize> {
        self.degrees.get(&v).copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.degrees.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct DynamicGraph {
    slots: HashMap<VertexId, usize>,
    ids: Vec<VertexId>,
    out: Vec<Vec<VertexId>>,
    inc: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl DynamicGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I, V>(edges: I) -> Self
    where
        I: IntoIterator<Item = (V, V)>,
        V: Into<VertexId>,
    {
        let mut g = Self::new();
        for (u, v) in edges {
            g.add_edge(u.into(), v.into());
        }
        g
    }

    /// Inserts `v` if unseen and returns its slot.
    pub fn add_vertex(&mut self, v: VertexId) -> usize {
        if let Some(&slot) = self.slots.get(&v) {
            return slot;
        }
        let slot = self.ids.len();
        self.slots.insert(v, slot);
        self.ids.push(v);
        self.out.push(Vec::new());
        self.inc.push(Vec::new());
        slot
    }

    /// Adds the edge `u -> v`. Returns `false` if it was already present.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        let su = self.add_vertex(u);
        let sv = self.add_vertex(v);
        match self.out[su].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.out[su].insert(pos, v);
                let pos = self.inc[sv]
                    .binary_search(&u)
                    .expect_err("in-adjacency out of sync with out-adjacency");
                self.inc[sv].insert(pos, u);
                self.edge_count += 1;
                true
            }
        }
    }

    /// Removes the edge `u -> v`. Both endpoints stay in the vertex set.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        let (Some(&su), Some(&sv)) = (self.slots.get(&u), self.slots.get(&v)) else {
            return false;
        };
        match self.out[su].binary_search(&v) {
            Ok(pos) => {
                self.out[su].remove(pos);
                let pos = self.inc[sv]
                    .binary_search(&u)
                    .expect("in-adjacency out of sync with out-adjacency");
                self.inc[sv].remove(pos);
                self.edge_count -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.slots
            .get(&u)
            .is_some_and(|&su| self.out[su].binary_search(&v).is_ok())
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.slots.contains_key(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Out-degree `d_t(v)`; zero for unknown vertices.
    pub fn out_degree(&self, v: VertexId) -> usize {
        self.slots.get(&v).map_or(0, |&s| self.out[s].len())
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.slots.get(&v).map_or(0, |&s| self.inc[s].len())
    }

    /// Out-neighbors in ascending id order.
    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        self.slots.get(&v).map_or(&[], |&s| &self.out[s])
    }

    /// In-neighbors in ascending id order.
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        self.slots.get(&v).map_or(&[], |&s| &self.inc[s])
    }

    /// Vertices in slot (first-seen) order.
    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.ids.iter().copied()
    }

    pub fn sorted_vertices(&self) -> Vec<VertexId> {
        let mut ids = self.ids.clone();
        ids.sort_unstable();
        ids
    }

    /// All edges, sorted by `(source, target)`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut edges = Vec::with_capacity(self.edge_count);
        for u in self.sorted_vertices() {
            edges.extend(self.out_neighbors(u).iter().map(|&v| (u, v)));
        }
        edges
    }

    /// Average out-degree `|E_t| / |V_t|`, zero on an empty graph.
    pub fn average_out_degree(&self) -> f64 {
        if self.ids.is_empty() {
            0.0
        } else {
            self.edge_count as f64 / self.ids.len() as f64
        }
    }

    pub(crate) fn slot(&self, v: VertexId) -> Option<usize> {
        self.slots.get(&v).copied()
    }

    pub(crate) fn slot_in_neighbors(&self, slot: usize) -> &[VertexId] {
        &self.inc[slot]
    }

    pub(crate) fn slot_out_degree(&self, slot: usize) -> usize {
        self.out[slot].len()
    }

    pub(crate) fn slot_id(&self, slot: usize) -> VertexId {
        self.ids[slot]
    }

    pub fn snapshot_degrees(&self, taken_at: usize) -> DegreeSnapshot {
        DegreeSnapshot {
            degrees: self
                .ids
                .iter()
                .zip(&self.out)
                .map(|(&v, out)| (v, out.len()))
                .collect(),
            taken_at,
        }
    }

    /// Multi-source breadth-first search along out-edges, up to `max_hops`.
    /// Sources map to 0; unknown sources are ignored.
    pub fn bfs_out(
        &self,
        sources: impl IntoIterator<Item = VertexId>,
        max_hops: usize,
    ) -> HashMap<VertexId, usize> {
        let mut dist = HashMap::new();
        let mut frontier = Vec::new();
        for s in sources {
            if self.contains_vertex(s) && dist.insert(s, 0).is_none() {
                frontier.push(s);
            }
        }
        let mut hop = 0;
        while hop < max_hops && !frontier.is_empty() {
            hop += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for &v in self.out_neighbors(u) {
                    if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(v) {
                        e.insert(hop);
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Checks the adjacency invariants. Intended for tests and debugging.
    pub fn check_consistency(&self) -> Result<(), String> {
        let mut out_pairs = HashSet::new();
        let mut total = 0;
        for (slot, &u) in self.ids.iter().enumerate() {
            let out = &self.out[slot];
            if out.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("out-adjacency of {u} not strictly ascending"));
            }
            total += out.len();
            out_pairs.extend(out.iter().map(|&v| (u, v)));
        }
        if total != self.edge_count {
            return Err(format!(
                "edge_count {} but out-lists hold {total}",
                self.edge_count
            ));
        }
        let mut in_total = 0;
        for (slot, &v) in self.ids.iter().enumerate() {
            let inc = &self.inc[slot];
            if inc.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format!("in-adjacency of {v} not strictly ascending"));
            }
            in_total += inc.len();
            if let Some(&u) = inc.iter().find(|&&u| !out_pairs.contains(&(u, v))) {
                return Err(format!("in-edge {u}->{v} missing from out-adjacency"));
            }
        }
        if in_total != total {
            return Err(format!("{in_total} in-edges vs {total} out-edges"));
        }
        Ok(())
    }
}

impl PartialEq for DynamicGraph {
    /// Same vertex set and same edge set, regardless of slot assignment.
    fn eq(&self, other: &Self) -> bool {
        self.edge_count == other.edge_count
            && self.sorted_vertices() == other.sorted_vertices()
            && self.edges() == other.edges()
    }
}
