//! Small undirected graphs and the k-fuzz (k-th power) construction.
//!
//! These graphs feed the exact Shearer-measure computations, so they stay
//! deliberately small; the dependency graphs of interest are k-fuzzes of
//! paths and other graphs with at most a few dozen vertices.

use crate::error::{PercError, Result};

/// An undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    n: usize,
    /// Sorted adjacency lists, no self-loops, no duplicates.
    adj: Vec<Vec<usize>>,
}

impl FiniteGraph {
    /// Build from an explicit edge list. Rejects self-loops, duplicate edges
    /// and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(PercError::Invalid(format!(
                    "edge ({a},{b}) out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(PercError::Invalid(format!("self-loop at vertex {a}")));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(PercError::Invalid(format!("duplicate edge ({a},{b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { n, adj })
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Self {
        Self { n, adj: vec![Vec::new(); n] }
    }

    /// Path on `n` vertices: edges (0,1), (1,2), ...
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("path edges are valid")
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                edges.push((a, b));
            }
        }
        Self::new(n, &edges).expect("complete edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges as sorted unordered pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for &b in &self.adj[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// BFS distances from `v`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Induced subgraph on `verts` (relabelled 0..m in the given order).
    pub fn induced(&self, verts: &[usize]) -> Result<Self> {
        let mut index = std::collections::HashMap::new();
        for (i, &v) in verts.iter().enumerate() {
            if v >= self.n {
                return Err(PercError::Invalid(format!("vertex {v} out of range")));
            }
            if index.insert(v, i).is_some() {
                return Err(PercError::Invalid(format!("vertex {v} listed twice")));
            }
        }
        let mut edges = Vec::new();
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.adj[v] {
                if let Some(&j) = index.get(&w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        Self::new(verts.len(), &edges)
    }

    /// Neighbourhood bitmasks (bit `v` set iff `v` adjacent), for graphs that
    /// fit in a machine word.
    pub(crate) fn neighbour_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask form requires <= 64 vertices");
        let mut masks = vec![0u64; self.n];
        for v in 0..self.n {
            for &w in &self.adj[v] {
                masks[v] |= 1 << w;
            }
        }
        masks
    }
}

/// The k-fuzz of `g`: same vertices, edges between all distinct pairs at
/// graph distance at most `k` in `g`. `k = 1` reproduces the input and
/// `k = 0` drops all edges.
pub fn k_fuzz(g: &FiniteGraph, k: usize) -> FiniteGraph {
    let n = g.vertex_count();
    let mut edges = Vec::new();
    if k >= 1 {
        for v in 0..n {
            let dist = g.distances_from(v);
            for w in (v + 1)..n {
                if dist[w] <= k {
                    edges.push((v, w));
                }
            }
        }
    }
    FiniteGraph::new(n, &edges).expect("fuzz edges are valid")
}
