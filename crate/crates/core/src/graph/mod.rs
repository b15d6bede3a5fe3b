//! Undirected multigraphs with per-vertex self-loop counts.
//!
//! Self-loops never appear in the input edge list. They are added by the
//! expander decomposition to keep a vertex's degree stable across cuts, and
//! each loop contributes exactly 1 to the degree of its vertex.

mod conductance;
mod density;
mod io;
mod spectral;

pub use conductance::{conductance_exact, conductance_exact_with_limit};
pub use density::{
    check_no_dense_subgraph, densest_subgraph_exact, densest_subgraph_greedy, is_uniformly_dense,
    is_weakly_regular, DensityCheck, DensityMode,
};
pub use io::{parse_edge_list, read_edge_list, write_edge_list};
pub use spectral::{spectral_sweep, sweep_cut, SweepReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count for which brute-force cut and density enumeration is used.
pub const EXACT_LIMIT: usize = 20;

/// Immutable undirected multigraph.
///
/// Edges keep their input order; every downstream consumer that iterates
/// edges does so in this order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    self_loops: Vec<usize>,
    degree: Vec<usize>,
    // (neighbor, edge index); a vertex appears once per parallel edge
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Build a graph from an edge list. Parallel edges are allowed, self-loops are not.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::with_self_loops(n, edges, vec![0; n])
    }

    pub fn with_self_loops(
        n: usize,
        edges: Vec<(usize, usize)>,
        self_loops: Vec<usize>,
    ) -> Result<Self> {
        if self_loops.len() != n {
            return Err(Error::LengthMismatch {
                left: self_loops.len(),
                right: n,
            });
        }
        let mut degree = self_loops.clone();
        let mut adjacency = vec![Vec::new(); n];
        for (index, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { index: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoopEdge { index, vertex: u });
            }
            degree[u] += 1;
            degree[v] += 1;
            adjacency[u].push((v, index));
            adjacency[v].push((u, index));
        }
        Ok(Graph {
            n,
            edges,
            self_loops,
            degree,
            adjacency,
        })
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, edges).expect("complete graph is well formed")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, edges).expect("path is well formed")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::new(n, edges).expect("cycle is well formed")
    }

    /// Two copies of `K_k` joined by a single bridge between vertex `k-1` and vertex `k`.
    pub fn barbell(k: usize) -> Self {
        assert!(k >= 2, "barbell needs cliques of size at least 2");
        let mut edges = Vec::new();
        for offset in [0, k] {
            for u in 0..k {
                for v in u + 1..k {
                    edges.push((offset + u, offset + v));
                }
            }
        }
        edges.push((k - 1, k));
        Graph::new(2 * k, edges).expect("barbell is well formed")
    }

    /// `rows x cols` grid graph, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::new(rows * cols, edges).expect("grid is well formed")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges = (1..=leaves).map(|v| (0, v)).collect();
        Graph::new(leaves + 1, edges).expect("star is well formed")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of (non-loop) edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    pub fn self_loops(&self, v: usize) -> usize {
        self.self_loops[v]
    }

    pub fn self_loop_counts(&self) -> &[usize] {
        &self.self_loops
    }

    pub fn total_self_loops(&self) -> usize {
        self.self_loops.iter().sum()
    }

    /// Incident edge endpoints plus self-loops.
    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    /// Degree without self-loops.
    pub fn edge_degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.degree.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// `(neighbor, edge index)` pairs; parallel edges repeat the neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn volume<I: IntoIterator<Item = usize>>(&self, vertices: I) -> usize {
        vertices.into_iter().map(|v| self.degree[v]).sum()
    }

    /// `vol(V) = 2m + total self-loops`.
    pub fn total_volume(&self) -> usize {
        2 * self.edges.len() + self.total_self_loops()
    }

    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.total_volume() as f64 / self.n as f64
        }
    }

    /// Connected components by edge reachability, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            label[start] = id;
            stack.push(start);
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for &(w, _) in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Subgraph induced on `vertices` (listed in the order that defines new ids).
    ///
    /// Returns the subgraph and, for each of its edges, the index of the
    /// originating edge here. Self-loop counts carry over; no loops are added.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (index, &(u, v)) in self.edges.iter().enumerate() {
            if local[u] != usize::MAX && local[v] != usize::MAX {
                edges.push((local[u], local[v]));
                origin.push(index);
            }
        }
        let loops = vertices.iter().map(|&v| self.self_loops[v]).collect();
        let g = Graph::with_self_loops(vertices.len(), edges, loops)
            .expect("induced subgraph of a valid graph is valid");
        (g, origin)
    }

    /// Edge-subgraph on the full vertex set keeping only the listed edges, in order.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> Graph {
        let edges = edge_ids.iter().map(|&e| self.edges[e]).collect();
        Graph::new(self.n, edges).expect("edge subset of a valid graph is valid")
    }

    pub(crate) fn membership_mask(&self, side: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in side {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { index: v, n: self.n });
            }
            if mask[v] {
                return Err(Error::InvalidCut(format!("vertex {v} listed twice")));
            }
            mask[v] = true;
        }
        Ok(mask)
    }

    /// Cut statistics from a membership mask, without validating the mask.
    pub(crate) fn cut_from_mask(&self, mask: &[bool]) -> Cut {
        let mut crossing = 0;
        for &(u, v) in &self.edges {
            if mask[u] != mask[v] {
                crossing += 1;
            }
        }
        let mut vol_s = 0;
        let mut side = Vec::new();
        for v in 0..self.n {
            if mask[v] {
                vol_s += self.degree[v];
                side.push(v);
            }
        }
        Cut::new(side, crossing, vol_s, self.total_volume() - vol_s)
    }
}

/// A proper vertex subset with its crossing-edge count, volumes and conductance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cut {
    /// Sorted vertex ids on the S side.
    pub side: Vec<usize>,
    pub crossing: usize,
    pub vol_s: usize,
    pub vol_rest: usize,
    pub conductance: f64,
}

impl Cut {
    pub(crate) fn new(side: Vec<usize>, crossing: usize, vol_s: usize, vol_rest: usize) -> Self {
        let denom = vol_s.min(vol_rest);
        let conductance = if crossing == 0 {
            0.0
        } else if denom == 0 {
            f64::INFINITY
        } else {
            crossing as f64 / denom as f64
        };
        Cut {
            side,
            crossing,
            vol_s,
            vol_rest,
            conductance,
        }
    }

    /// The complementary side as a sorted list.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        let mut in_s = vec![false; n];
        for &v in &self.side {
            in_s[v] = true;
        }
        (0..n).filter(|&v| !in_s[v]).collect()
    }
}

/// Exact statistics of the cut `(s, V \ s)`.
pub fn cut_stats(g: &Graph, s: &[usize]) -> Result<Cut> {
    let mask = g.membership_mask(s)?;
    if s.is_empty() || s.len() == g.n() {
        return Err(Error::InvalidCut(
            "side must be a nonempty proper subset".into(),
        ));
    }
    Ok(g.cut_from_mask(&mask))
}

/// Cut separating the first connected component from the rest; conductance 0.
pub(crate) fn component_cut(g: &Graph) -> Option<Cut> {
    let comps = g.components();
    if comps.len() < 2 {
        return None;
    }
    let mut mask = vec![false; g.n()];
    for &v in &comps[0] {
        mask[v] = true;
    }
    Some(g.cut_from_mask(&mask))
}
