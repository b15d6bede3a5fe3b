//! Peeling a graph into edge-disjoint uniformly-dense pieces.
//!
//! For each threshold `d` in decreasing powers of two, the residual graph
//! (all edges not yet emitted) is reduced to its `d`-core by repeatedly
//! deleting the edges of any vertex whose residual degree is in `(0, d)`.
//! The surviving non-trivial components are emitted and their edges leave
//! the residual; peeled edges return for the next threshold.
//!
//! The sweep continues down to `d = 1`, so every edge ends up in exactly one
//! emitted component.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Subgraph;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Factor of uniform density guaranteed for every peeled component.
///
/// A component emitted at threshold `d` has minimum degree at least `d`, and
/// the residual it came from has no subgraph of minimum degree `2d`, so no
/// induced subgraph has average degree `4d` or more.
pub const UNIFORM_DENSITY_FACTOR: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeeledComponent {
    pub threshold: usize,
    pub sub: Subgraph,
}

/// Thresholds `2^k, 2^(k-1), ..., 1` with `2^k` the largest power of two not
/// above `max(n, max_degree) / 2`.
pub fn peel_thresholds(n: usize, max_degree: usize) -> Vec<usize> {
    let top = (n.max(max_degree) / 2).max(1);
    let mut d = 1usize << (usize::BITS - 1 - top.leading_zeros());
    let mut out = Vec::new();
    while d >= 1 {
        out.push(d);
        d /= 2;
    }
    out
}

pub fn peel_uniformly_dense(g: &Graph) -> Result<Vec<PeeledComponent>> {
    if g.total_self_loops() > 0 {
        return Err(Error::Precondition(
            "peeling expects a graph without self-loops".into(),
        ));
    }
    let n = g.n();
    let m = g.m();
    let mut out = Vec::new();
    if m == 0 {
        return Ok(out);
    }
    let mut emitted = vec![false; m];
    for d in peel_thresholds(n, g.max_degree()) {
        let mut alive = emitted.iter().map(|&e| !e).collect::<Vec<_>>();
        let mut deg: Vec<usize> = (0..n)
            .map(|v| g.neighbors(v).iter().filter(|&&(_, e)| alive[e]).count())
            .collect();
        let mut candidates: BTreeSet<usize> = (0..n).filter(|&v| deg[v] > 0 && deg[v] < d).collect();
        // lowest index first; the resulting core does not depend on the order
        while let Some(v) = candidates.pop_first() {
            for &(w, e) in g.neighbors(v) {
                if !alive[e] {
                    continue;
                }
                alive[e] = false;
                deg[v] -= 1;
                deg[w] -= 1;
                if deg[w] > 0 && deg[w] < d {
                    candidates.insert(w);
                } else if deg[w] == 0 {
                    candidates.remove(&w);
                }
            }
        }

        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] || deg[start] == 0 {
                continue;
            }
            let mut vertices = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                vertices.push(u);
                for &(w, e) in g.neighbors(u) {
                    if alive[e] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            vertices.sort_unstable();
            let mut local = vec![usize::MAX; n];
            for (i, &v) in vertices.iter().enumerate() {
                local[v] = i;
            }
            let edge_ids: Vec<usize> = (0..m)
                .filter(|&e| alive[e] && local[g.edge(e).0] != usize::MAX)
                .collect();
            let local_edges = edge_ids
                .iter()
                .map(|&e| {
                    let (a, b) = g.edge(e);
                    (local[a], local[b])
                })
                .collect();
            for &e in &edge_ids {
                emitted[e] = true;
            }
            let size = vertices.len();
            out.push(PeeledComponent {
                threshold: d,
                sub: Subgraph {
                    vertices,
                    graph: Graph::new(size, local_edges)?,
                    edges: edge_ids,
                },
            });
        }
    }
    debug_assert!(emitted.iter().all(|&e| e));
    Ok(out)
}
