//! Marked subcubic graphs.
//!
//! A [`MarkedGraph`] is a simple undirected graph with maximum degree 3 in
//! which every vertex carries a marked flag. Vertex ids are dense in `0..n`;
//! removing vertices produces a new graph together with a [`Remap`] table.

mod cycles;
pub mod families;
mod graph6;
mod random;
mod search;
mod two_paths;

pub use cycles::{
    cycle_report, cycles_of_length, girth, has_cycle_of_length, has_cycle_of_length_with_budget, shortest_cycle,
    visit_cycles_of_length, CycleReport, CycleSearchError, Girth, DEFAULT_CYCLE_BUDGET,
};
pub use graph6::{graph6_decode, graph6_encode, Graph6Error};
pub use random::{random_cubic, GenerateError};
pub use search::{find_cubic_in_family, CubicFamily, SearchError};
pub use two_paths::{maximal_two_paths, TwoPath, TwoPathReport};

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// Maximum degree of a subcubic graph.
pub const MAX_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    OutOfRange(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("vertex {0} would exceed degree 3")]
    DegreeOverflow(VertexId),
    #[error("edge {0}-{1} not present")]
    MissingEdge(VertexId, VertexId),
}

/// Sorted neighbor list of length at most three.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
struct Neighbors {
    len: u8,
    items: [u32; MAX_DEGREE],
}

impl Neighbors {
    fn as_slice(&self) -> &[u32] {
        &self.items[..self.len as usize]
    }

    fn contains(&self, v: u32) -> bool {
        self.as_slice().contains(&v)
    }

    fn insert(&mut self, v: u32) {
        let len = self.len as usize;
        let mut pos = len;
        while pos > 0 && self.items[pos - 1] > v {
            self.items[pos] = self.items[pos - 1];
            pos -= 1;
        }
        self.items[pos] = v;
        self.len += 1;
    }

    fn remove(&mut self, v: u32) {
        let len = self.len as usize;
        if let Some(pos) = self.as_slice().iter().position(|&x| x == v) {
            for i in pos..len - 1 {
                self.items[i] = self.items[i + 1];
            }
            self.len -= 1;
        }
    }
}

/// Loop-free undirected graph of maximum degree 3 with per-vertex marks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MarkedGraph {
    adj: Vec<Neighbors>,
    marked: Vec<bool>,
}

impl MarkedGraph {
    /// Edgeless graph on `n` unmarked vertices.
    pub fn new(n: usize) -> Self {
        MarkedGraph {
            adj: vec![Neighbors::default(); n],
            marked: vec![false; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = MarkedGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len as usize).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    pub fn add_vertex(&mut self, marked: bool) -> VertexId {
        self.adj.push(Neighbors::default());
        self.marked.push(marked);
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        let n = self.n();
        if u >= n {
            return Err(GraphError::OutOfRange(u));
        }
        if v >= n {
            return Err(GraphError::OutOfRange(v));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(v as u32) {
            return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
        }
        if self.adj[u].len as usize == MAX_DEGREE {
            return Err(GraphError::DegreeOverflow(u));
        }
        if self.adj[v].len as usize == MAX_DEGREE {
            return Err(GraphError::DegreeOverflow(v));
        }
        self.adj[u].insert(v as u32);
        self.adj[v].insert(u as u32);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        self.adj[u].remove(v as u32);
        self.adj[v].remove(u as u32);
        Ok(())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && v < self.n() && self.adj[u].contains(v as u32)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len as usize
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v].as_slice().iter().map(|&x| x as VertexId)
    }

    pub fn neighbor_vec(&self, v: VertexId) -> Vec<VertexId> {
        self.neighbors(v).collect()
    }

    pub fn is_marked(&self, v: VertexId) -> bool {
        self.marked[v]
    }

    pub fn set_marked(&mut self, v: VertexId, marked: bool) {
        self.marked[v] = marked;
    }

    pub fn marked_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.marked[v]).collect()
    }

    pub fn marked_count(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }

    /// Number of marked vertices of degree 3.
    pub fn marked_cubic_count(&self) -> usize {
        self.vertices()
            .filter(|&v| self.marked[v] && self.degree(v) == 3)
            .count()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_cubic(&self) -> bool {
        self.vertices().all(|v| self.degree(v) == 3)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.n();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap_or(false);
                for w in self.neighbors(u) {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            stack.push(w);
                        }
                        Some(sw) if sw == su => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Breadth-first distances from `source`; `usize::MAX` when unreachable.
    pub fn distances_from(&self, source: VertexId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[source] = 0;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Closed neighborhood of a vertex set.
    pub fn closed_neighborhood(&self, set: &[VertexId]) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for &v in set {
            out.insert(v);
            out.extend(self.neighbors(v));
        }
        out
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[VertexId]) -> MarkedGraph {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        let mut h = MarkedGraph::new(self.n());
        for (u, v) in self.edges() {
            h.add_edge(perm[u], perm[v]).expect("relabeling preserves simplicity");
        }
        for v in self.vertices() {
            h.marked[perm[v]] = self.marked[v];
        }
        h
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &MarkedGraph) -> MarkedGraph {
        let shift = self.n();
        let mut h = self.clone();
        h.adj.extend(other.adj.iter().map(|a| {
            let mut b = Neighbors::default();
            for &x in a.as_slice() {
                b.insert(x + shift as u32);
            }
            b
        }));
        h.marked.extend_from_slice(&other.marked);
        h
    }
}

/// Counts of unmarked vertices by degree, and of marked vertices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub markn: usize,
}

impl DegreeProfile {
    pub fn total(&self) -> usize {
        self.n0 + self.n1 + self.n2 + self.n3 + self.markn
    }
}

pub fn degree_profile(g: &MarkedGraph) -> DegreeProfile {
    let mut p = DegreeProfile::default();
    for v in g.vertices() {
        if g.is_marked(v) {
            p.markn += 1;
        } else {
            match g.degree(v) {
                0 => p.n0 += 1,
                1 => p.n1 += 1,
                2 => p.n2 += 1,
                _ => p.n3 += 1,
            }
        }
    }
    p
}

/// Old-to-new vertex id table produced by [`excise`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Remap {
    forward: Vec<Option<VertexId>>,
    backward: Vec<VertexId>,
}

impl Remap {
    pub fn identity(n: usize) -> Self {
        Remap {
            forward: (0..n).map(Some).collect(),
            backward: (0..n).collect(),
        }
    }

    /// New id of an old vertex, `None` if it was removed.
    pub fn forward(&self, old: VertexId) -> Option<VertexId> {
        self.forward.get(old).copied().flatten()
    }

    /// Old id of a surviving vertex.
    pub fn backward(&self, new: VertexId) -> VertexId {
        self.backward[new]
    }

    pub fn old_len(&self) -> usize {
        self.forward.len()
    }

    pub fn new_len(&self) -> usize {
        self.backward.len()
    }

    /// Maps a vertex set of the new graph back to old ids.
    pub fn lift(&self, set: &[VertexId]) -> Vec<VertexId> {
        set.iter().map(|&v| self.backward[v]).collect()
    }
}

/// Deletes `remove` from `g` and marks every vertex of `mark`.
///
/// Marks requested on removed vertices are ignored.
pub fn excise(g: &MarkedGraph, remove: &[VertexId], mark: &[VertexId]) -> (MarkedGraph, Remap) {
    let n = g.n();
    let mut gone = vec![false; n];
    for &v in remove {
        gone[v] = true;
    }
    let mut forward = vec![None; n];
    let mut backward = Vec::with_capacity(n);
    for v in 0..n {
        if !gone[v] {
            forward[v] = Some(backward.len());
            backward.push(v);
        }
    }
    let mut h = MarkedGraph::new(backward.len());
    for (new, &old) in backward.iter().enumerate() {
        h.marked[new] = g.marked[old];
        for w in g.neighbors(old) {
            if let Some(nw) = forward[w] {
                if new < nw {
                    h.add_edge(new, nw).expect("subgraph of a simple subcubic graph");
                }
            }
        }
    }
    for &v in mark {
        if let Some(nv) = forward[v] {
            h.marked[nv] = true;
        }
    }
    (h, Remap { forward, backward })
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn add_edge_rejects_bad_edges() {
        let mut g = MarkedGraph::new(5);
        assert_eq!(g.add_edge(0, 0), Err(GraphError::SelfLoop(0)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(GraphError::ParallelEdge(0, 1)));
        g.add_edge(0, 2).unwrap();
        g.add_edge(0, 3).unwrap();
        assert_eq!(g.add_edge(0, 4), Err(GraphError::DegreeOverflow(0)));
        assert_eq!(g.add_edge(0, 9), Err(GraphError::OutOfRange(9)));
        assert_eq!(g.neighbor_vec(0), vec![1, 2, 3]);
    }

    #[test]
    fn profiles_of_small_graphs() {
        let c6 = cycle(6);
        assert_eq!(
            degree_profile(&c6),
            DegreeProfile {
                n2: 6,
                ..Default::default()
            }
        );
        let mut k4 = complete4();
        assert_eq!(degree_profile(&k4).n3, 4);
        k4.set_marked(0, true);
        let p = degree_profile(&k4);
        assert_eq!((p.n3, p.markn), (3, 1));
    }

    #[test]
    fn excise_examples() {
        let c6 = cycle(6);
        let (h, remap) = excise(&c6, &[0], &[]);
        assert_eq!(h.n(), 5);
        assert_eq!(h.edge_count(), 4);
        assert_eq!(h.marked_count(), 0);
        assert_eq!(remap.forward(0), None);
        assert_eq!(remap.forward(1), Some(0));
        assert_eq!(remap.backward(4), 5);

        let (h, _) = excise(&c6, &[], &[0]);
        assert_eq!(h.edge_count(), 6);
        assert_eq!(h.marked_vertices(), vec![0]);

        let k4 = complete4();
        let (h, _) = excise(&k4, &[0, 1, 2, 3], &[]);
        assert!(h.is_empty());
    }

    #[test]
    fn components_and_bipartiteness() {
        let g = cycle(4).disjoint_union(&cycle(5));
        assert_eq!(g.components().len(), 2);
        assert!(!g.is_bipartite());
        assert!(cycle(6).is_bipartite());
        assert!(heawood().is_bipartite());
        assert!(!petersen_generalized(7, 2).is_bipartite());
    }
}
