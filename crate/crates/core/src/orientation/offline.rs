//! Offline orientation with every discrepancy in `{-1, 0, 1}`.
//!
//! Odd-degree vertices are paired by virtual edges, the augmented multigraph
//! is covered by closed trails, each edge is oriented in the direction it is
//! walked, and the virtual edges are discarded. Each vertex touches at most
//! one virtual edge, so removing them moves its discrepancy by at most 1.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OfflineOrientation {
    /// `(tail, head)` for each edge, in edge order.
    pub arcs: Vec<(usize, usize)>,
    pub disc: Vec<i64>,
}

impl OfflineOrientation {
    pub fn max_disc(&self) -> u64 {
        self.disc.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0)
    }
}

/// Orient every edge of `g` so that `|in - out| <= 1` at every vertex.
/// Self-loop counts are ignored.
pub fn offline_orient(g: &Graph) -> OfflineOrientation {
    let n = g.n();
    let m = g.m();
    let mut ends: Vec<(usize, usize)> = g.edges().to_vec();
    let odd: Vec<usize> = (0..n).filter(|&v| g.edge_degree(v) % 2 == 1).collect();
    for pair in odd.chunks(2) {
        ends.push((pair[0], pair[1]));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v)) in ends.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }

    let mut used = vec![false; ends.len()];
    let mut cursor = vec![0usize; n];
    let mut arcs = vec![(0, 0); ends.len()];
    for start in 0..n {
        // every degree is even, so each walk closes at `start`
        loop {
            let mut cur = start;
            let mut moved = false;
            loop {
                while cursor[cur] < incident[cur].len() && used[incident[cur][cursor[cur]]] {
                    cursor[cur] += 1;
                }
                let Some(&e) = incident[cur].get(cursor[cur]) else {
                    break;
                };
                used[e] = true;
                let (a, b) = ends[e];
                let next = if a == cur { b } else { a };
                arcs[e] = (cur, next);
                cur = next;
                moved = true;
            }
            debug_assert_eq!(cur, start);
            if !moved {
                break;
            }
        }
    }
    arcs.truncate(m);
    let mut disc = vec![0i64; n];
    for &(t, h) in &arcs {
        disc[t] -= 1;
        disc[h] += 1;
    }
    OfflineOrientation { arcs, disc }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(g: &Graph, o: &OfflineOrientation) {
        assert_eq!(o.arcs.len(), g.m());
        let mut disc = vec![0i64; g.n()];
        for (e, &(t, h)) in o.arcs.iter().enumerate() {
            let (u, v) = g.edge(e);
            assert!((t, h) == (u, v) || (t, h) == (v, u));
            disc[t] -= 1;
            disc[h] += 1;
        }
        assert_eq!(disc, o.disc);
        assert!(o.max_disc() <= 1);
    }

    #[test]
    fn even_cycle_is_balanced() {
        let g = Graph::cycle(4);
        let o = offline_orient(&g);
        check(&g, &o);
        assert!(o.disc.iter().all(|&d| d == 0));
    }

    #[test]
    fn path_is_directed() {
        let g = Graph::path(3);
        let o = offline_orient(&g);
        check(&g, &o);
        assert!(o.disc == vec![-1, 0, 1] || o.disc == vec![1, 0, -1]);
    }

    #[test]
    fn empty_graph() {
        let o = offline_orient(&Graph::new(3, vec![]).unwrap());
        assert!(o.arcs.is_empty());
        assert_eq!(o.max_disc(), 0);
    }

    proptest! {
        #[test]
        fn random_multigraphs_have_disc_at_most_one(
            n in 2usize..=10,
            raw in prop::collection::vec((0usize..10, 0usize..10), 0..40),
        ) {
            let edges: Vec<(usize, usize)> = raw
                .into_iter()
                .map(|(a, b)| (a % n, b % n))
                .filter(|(a, b)| a != b)
                .collect();
            let g = Graph::new(n, edges).unwrap();
            check(&g, &offline_orient(&g));
        }
    }
}
