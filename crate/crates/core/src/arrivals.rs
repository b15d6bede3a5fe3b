//! Seeded i.i.d. arrival streams.
//!
//! Every stream is a pure function of its source, horizon and seed. Arrivals
//! draw from stream 0 of a ChaCha generator; algorithm coins (tie-breaks,
//! β-coins) come from [`coin_rng`], stream 1 of the same seed, so switching
//! algorithms never perturbs the arrival sequence.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn arrival_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    rng
}

pub fn coin_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeArrival {
    /// Index into the graph's edge list.
    pub index: usize,
    pub u: usize,
    pub v: usize,
}

/// Uniform draws, with replacement, from a graph's edge multiset.
#[derive(Debug, Clone)]
pub struct UniformEdgeStream<'g> {
    graph: &'g Graph,
    remaining: u64,
    rng: ChaCha8Rng,
}

pub fn uniform_edge_stream(g: &Graph, horizon: u64, seed: u64) -> Result<UniformEdgeStream<'_>> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph("uniform edge stream needs at least one edge"));
    }
    Ok(UniformEdgeStream {
        graph: g,
        remaining: horizon,
        rng: arrival_rng(seed),
    })
}

impl Iterator for UniformEdgeStream<'_> {
    type Item = EdgeArrival;

    fn next(&mut self) -> Option<EdgeArrival> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let index = self.rng.gen_range(0..self.graph.m());
        let (u, v) = self.graph.edge(index);
        Some(EdgeArrival { index, u, v })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Ordered pairs `(u, v)` of independent draws proportional to integer weights.
#[derive(Debug, Clone)]
pub struct ProductPairStream {
    dist: WeightedIndex<u64>,
    remaining: u64,
    rng: ChaCha8Rng,
}

/// Weights are integers so the cumulative table is exact.
pub fn product_pair_stream(weights: &[u64], horizon: u64, seed: u64) -> Result<ProductPairStream> {
    let dist = WeightedIndex::new(weights.iter().copied())
        .map_err(|e| Error::param("weights", e.to_string()))?;
    Ok(ProductPairStream {
        dist,
        remaining: horizon,
        rng: arrival_rng(seed),
    })
}

impl Iterator for ProductPairStream {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let u = self.dist.sample(&mut self.rng);
        let v = self.dist.sample(&mut self.rng);
        Some((u, v))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Degree weights `w_v = degree(v)` of a graph.
pub fn degree_weights(g: &Graph) -> Vec<u64> {
    g.degrees().iter().map(|&d| d as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(n: f64, p: f64) -> f64 {
        (n * p * (1.0 - p)).sqrt()
    }

    #[test]
    fn single_edge_stream_is_constant() {
        let g = Graph::path(2);
        let all: Vec<_> = uniform_edge_stream(&g, 50, 1).unwrap().collect();
        assert_eq!(all.len(), 50);
        assert!(all.iter().all(|a| (a.index, a.u, a.v) == (0, 0, 1)));
    }

    #[test]
    fn empty_graph_rejected() {
        assert!(uniform_edge_stream(&Graph::new(3, vec![]).unwrap(), 5, 0).is_err());
    }

    #[test]
    fn k4_edges_uniform_within_four_sigma() {
        let g = Graph::complete(4);
        let draws = 600_000u64;
        let mut counts = [0u64; 6];
        for a in uniform_edge_stream(&g, draws, 17).unwrap() {
            counts[a.index] += 1;
        }
        let s = sigma(draws as f64, 1.0 / 6.0);
        for c in counts {
            assert!((c as f64 - 100_000.0).abs() <= 4.0 * s, "{counts:?}");
        }
    }

    #[test]
    fn parallel_edges_weighted_by_multiplicity() {
        let g = Graph::new(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap();
        let draws = 90_000u64;
        let hits = uniform_edge_stream(&g, draws, 5)
            .unwrap()
            .filter(|a| (a.u, a.v) == (0, 1))
            .count() as f64;
        assert!((hits - 60_000.0).abs() <= 4.0 * sigma(draws as f64, 2.0 / 3.0));
    }

    #[test]
    fn same_seed_same_sequence() {
        let g = Graph::complete(6);
        let a: Vec<_> = uniform_edge_stream(&g, 1000, 42).unwrap().collect();
        let b: Vec<_> = uniform_edge_stream(&g, 1000, 42).unwrap().collect();
        let c: Vec<_> = uniform_edge_stream(&g, 1000, 43).unwrap().collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let p: Vec<_> = product_pair_stream(&[1, 2, 3], 500, 9).unwrap().collect();
        let q: Vec<_> = product_pair_stream(&[1, 2, 3], 500, 9).unwrap().collect();
        assert_eq!(p, q);
    }

    #[test]
    fn shorter_horizon_is_prefix() {
        let g = Graph::complete(5);
        let long: Vec<_> = uniform_edge_stream(&g, 400, 3).unwrap().collect();
        let short: Vec<_> = uniform_edge_stream(&g, 100, 3).unwrap().collect();
        assert_eq!(&long[..100], &short[..]);
    }

    #[test]
    fn uniform_pair_collision_rate() {
        let draws = 100_000u64;
        let same = product_pair_stream(&[1, 1], draws, 2)
            .unwrap()
            .filter(|(u, v)| u == v)
            .count() as f64;
        assert!((same - 50_000.0).abs() <= 4.0 * sigma(draws as f64, 0.5));
    }

    #[test]
    fn degenerate_support() {
        let all: Vec<_> = product_pair_stream(&[1, 0, 0], 20, 0).unwrap().collect();
        assert!(all.iter().all(|&p| p == (0, 0)));
    }

    #[test]
    fn zero_weights_rejected() {
        assert!(product_pair_stream(&[0, 0], 1, 0).is_err());
        assert!(product_pair_stream(&[], 1, 0).is_err());
    }

    #[test]
    fn star_center_frequency() {
        let w = degree_weights(&Graph::star(3));
        assert_eq!(w, vec![3, 1, 1, 1]);
        let draws = 100_000u64;
        let mut center = 0u64;
        for (u, v) in product_pair_stream(&w, draws, 4).unwrap() {
            center += u64::from(u == 0) + u64::from(v == 0);
        }
        let n = 2.0 * draws as f64;
        assert!((center as f64 - n / 2.0).abs() <= 4.0 * sigma(n, 0.5));
    }

    #[test]
    fn lag_one_pairs_look_independent() {
        let g = Graph::complete(4);
        let draws = 200_000u64;
        let seq: Vec<usize> = uniform_edge_stream(&g, draws, 8)
            .unwrap()
            .map(|a| a.index)
            .collect();
        let mut joint = [[0u64; 6]; 6];
        for w in seq.windows(2) {
            joint[w[0]][w[1]] += 1;
        }
        let pairs = (draws - 1) as f64;
        let p = 1.0 / 36.0;
        for row in joint {
            for c in row {
                assert!((c as f64 - pairs * p).abs() <= 5.0 * sigma(pairs, p));
            }
        }
    }
}
