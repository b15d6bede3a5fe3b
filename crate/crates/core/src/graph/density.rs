use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Graph, EXACT_LIMIT};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityMode {
    Exact,
    /// Greedy min-degree peeling; the true maximum is at most twice the value found.
    Approximate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCheck {
    /// No induced subgraph found with average degree above the threshold.
    pub holds: bool,
    pub densest_found: f64,
    /// Upper bound on the true maximum induced average degree.
    pub upper_bound: f64,
    pub mode: DensityMode,
}

/// True iff every degree is at least `gamma` times the average degree.
pub fn is_weakly_regular(g: &Graph, gamma: f64) -> Result<bool> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::param("gamma", format!("{gamma} not in [0, 1]")));
    }
    if g.n() == 0 {
        return Err(Error::EmptyGraph("weak regularity needs a vertex"));
    }
    // min_deg >= gamma * vol / n, compared without dividing
    Ok(g.min_degree() as f64 * g.n() as f64 >= gamma * g.total_volume() as f64)
}

/// Min degree at least `avg / alpha` and no induced subgraph denser than `alpha * avg`.
///
/// Above [`EXACT_LIMIT`] vertices the density condition is checked with the
/// greedy 2-approximation; see [`check_no_dense_subgraph`].
pub fn is_uniformly_dense(g: &Graph, alpha: f64) -> Result<bool> {
    if !(alpha >= 1.0) {
        return Err(Error::param("alpha", format!("{alpha} must be >= 1")));
    }
    if g.n() == 0 {
        return Err(Error::EmptyGraph("uniform density needs a vertex"));
    }
    let avg = g.average_degree();
    if (g.min_degree() as f64) * alpha < avg {
        return Ok(false);
    }
    Ok(check_no_dense_subgraph(g, alpha * avg).holds)
}

/// Whether no induced subgraph has average degree `2 E(S,S) / |S|` above `threshold`.
pub fn check_no_dense_subgraph(g: &Graph, threshold: f64) -> DensityCheck {
    if g.n() <= EXACT_LIMIT {
        let (best, _) = densest_subgraph_exact(g).expect("size checked");
        DensityCheck {
            holds: best <= threshold,
            densest_found: best,
            upper_bound: best,
            mode: DensityMode::Exact,
        }
    } else {
        let (best, _) = densest_subgraph_greedy(g);
        DensityCheck {
            holds: best <= threshold,
            densest_found: best,
            upper_bound: 2.0 * best,
            mode: DensityMode::Approximate,
        }
    }
}

/// Maximum induced average degree (self-loops excluded) over nonempty subsets.
pub fn densest_subgraph_exact(g: &Graph) -> Result<(f64, Vec<usize>)> {
    let n = g.n();
    if n > EXACT_LIMIT {
        return Err(Error::TooLargeForExact {
            n,
            limit: EXACT_LIMIT,
        });
    }
    if n == 0 {
        return Ok((0.0, Vec::new()));
    }
    let mut mask: u32 = 0;
    let mut inner: u64 = 0;
    let mut size: u64 = 0;
    let mut best = (0u64, 1u64, 1u32);
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let bit = 1u32 << v;
        let to_s = g
            .neighbors(v)
            .iter()
            .filter(|&&(w, _)| mask & (1 << w) != 0)
            .count() as u64;
        if mask & bit == 0 {
            inner += to_s;
            size += 1;
        } else {
            inner -= to_s;
            size -= 1;
        }
        mask ^= bit;
        if size > 0 && inner * best.1 > best.0 * size {
            best = (inner, size, mask);
        }
    }
    let side = (0..n).filter(|&v| best.2 & (1 << v) != 0).collect();
    Ok((2.0 * best.0 as f64 / best.1 as f64, side))
}

/// Greedy peeling: repeatedly drop a minimum-degree vertex, keep the densest prefix.
pub fn densest_subgraph_greedy(g: &Graph) -> (f64, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (0.0, Vec::new());
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.edge_degree(v)).collect();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut edges = g.m() as u64;
    let mut size = n as u64;
    let mut order = Vec::with_capacity(n);
    let mut best = (edges, size, 0usize);
    while let Some((_, v)) = queue.pop_first() {
        alive[v] = false;
        order.push(v);
        for &(w, _) in g.neighbors(v) {
            if alive[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
                edges -= 1;
            }
        }
        size -= 1;
        if size > 0 && edges * best.1 > best.0 * size {
            best = (edges, size, order.len());
        }
    }
    let mut side: Vec<usize> = order[best.2..].to_vec();
    side.sort_unstable();
    (2.0 * best.0 as f64 / best.1 as f64, side)
}
