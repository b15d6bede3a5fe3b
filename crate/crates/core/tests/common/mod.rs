//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use carpool::Graph;
use rand::Rng;

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Connected `G(n, p)` by rejection.
pub fn connected_gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let g = gnp(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// `m` uniformly random non-loop pairs on `n` vertices.
pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Graph {
    let edges = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();
    Graph::new(n, edges).unwrap()
}

/// Minimum conductance by listing every subset containing vertex 0.
pub fn brute_conductance(g: &Graph) -> f64 {
    let n = g.n();
    let total = g.total_volume();
    let mut best = f64::INFINITY;
    for mask in 1u64..(1u64 << (n - 1)) {
        let in_s = |v: usize| v == 0 || (mask >> (v - 1)) & 1 == 0;
        let s_full = (0..n).all(in_s);
        if s_full {
            continue;
        }
        let vol_s: usize = (0..n).filter(|&v| in_s(v)).map(|v| g.degree(v)).sum();
        let crossing = g
            .edges()
            .iter()
            .filter(|&&(a, b)| in_s(a) != in_s(b))
            .count();
        let denom = vol_s.min(total - vol_s);
        if denom > 0 {
            best = best.min(crossing as f64 / denom as f64);
        }
    }
    best
}

/// In-degree minus out-degree from a list of arcs.
pub fn disc_from_arcs(n: usize, arcs: &[(usize, usize)]) -> Vec<i64> {
    let mut d = vec![0i64; n];
    for &(tail, head) in arcs {
        d[head] += 1;
        d[tail] -= 1;
    }
    d
}

pub fn cosh_sum(disc: &[i64], lambda: f64) -> f64 {
    disc.iter().map(|&d| (lambda * d as f64).cosh()).sum()
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

/// Zero-sum integer vector with entries roughly in `[-m, m]`.
pub fn zero_sum_vector<R: Rng>(rng: &mut R, n: usize, m: i64) -> Vec<i64> {
    let mut d: Vec<i64> = (0..n).map(|_| rng.gen_range(-m..=m)).collect();
    let s: i64 = d.iter().sum();
    let k = n as i64;
    for (i, x) in d.iter_mut().enumerate() {
        *x -= s.div_euclid(k) + i64::from((i as i64) < s.rem_euclid(k));
    }
    d
}
