//! Spectral sweep cuts from the second eigenvector of the normalized Laplacian.
//!
//! Power iteration runs on `B = (I + D^{-1/2} A D^{-1/2}) / 2`, whose spectrum
//! lies in `[0, 1]` with top eigenvector `D^{1/2} 1`. Deflating that vector
//! leaves the eigenvector of the second-smallest Laplacian eigenvalue as the
//! dominant one. Self-loops sit on the diagonal of `A` and count in `D`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{component_cut, Cut, Graph};
use crate::error::{Error, Result};

const RELATIVE_TOLERANCE: f64 = 1e-9;
const RESTARTS: u64 = 8;
const BASE_SEED: u64 = 0x5eed_0f_f1ed1e5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    /// Best prefix cut over all attempted vectors.
    pub best: Cut,
    pub converged: bool,
    /// Iterations of the run that produced `best`.
    pub iterations: usize,
    pub iteration_cap: usize,
    /// Approximate second Laplacian eigenvalue from the Rayleigh quotient.
    pub lambda2: f64,
}

/// Best spectral prefix cut if its conductance is below `alpha`, otherwise `None`.
///
/// Disconnected input returns a component cut (conductance 0).
pub fn sweep_cut(g: &Graph, alpha: f64) -> Result<Option<Cut>> {
    let report = spectral_sweep(g)?;
    Ok((report.best.conductance < alpha).then_some(report.best))
}

pub fn iteration_cap(n: usize) -> usize {
    let n = n.max(2) as f64;
    (10.0 * n * n.log2()).ceil() as usize
}

/// Run the eigensolver and sweep; falls back to seeded restarts when the
/// first run does not reach the tolerance within the iteration cap.
pub fn spectral_sweep(g: &Graph) -> Result<SweepReport> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "sweep cut needs at least 2 vertices, got {n}"
        )));
    }
    let cap = iteration_cap(n);
    if let Some(cut) = component_cut(g) {
        return Ok(SweepReport {
            best: cut,
            converged: true,
            iterations: 0,
            iteration_cap: cap,
            lambda2: 0.0,
        });
    }

    let solver = Operator::new(g);
    let first = solver.fiedler(BASE_SEED, cap);
    let mut best_cut = sweep_order(g, &solver.embedding(&first.vector));
    let mut report = SweepReport {
        best: best_cut.clone(),
        converged: first.converged,
        iterations: first.iterations,
        iteration_cap: cap,
        lambda2: 2.0 * (1.0 - first.eigenvalue),
    };
    if first.converged {
        return Ok(report);
    }
    for restart in 1..=RESTARTS {
        let run = solver.fiedler(BASE_SEED.wrapping_add(restart), cap);
        let cut = sweep_order(g, &solver.embedding(&run.vector));
        if cut.conductance < best_cut.conductance {
            best_cut = cut;
            report.iterations = run.iterations;
            report.lambda2 = 2.0 * (1.0 - run.eigenvalue);
        }
        report.converged |= run.converged;
    }
    report.best = best_cut;
    Ok(report)
}

struct Operator<'g> {
    g: &'g Graph,
    inv_sqrt_deg: Vec<f64>,
    top: Vec<f64>,
}

struct Eigenpair {
    vector: Vec<f64>,
    eigenvalue: f64,
    iterations: usize,
    converged: bool,
}

impl<'g> Operator<'g> {
    fn new(g: &'g Graph) -> Self {
        let inv_sqrt_deg = g
            .degrees()
            .iter()
            .map(|&d| 1.0 / (d as f64).sqrt())
            .collect();
        let mut top: Vec<f64> = g.degrees().iter().map(|&d| (d as f64).sqrt()).collect();
        normalize(&mut top);
        Operator {
            g,
            inv_sqrt_deg,
            top,
        }
    }

    /// y = (x + D^{-1/2} A D^{-1/2} x) / 2
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        let g = self.g;
        let scaled: Vec<f64> = x.iter().zip(&self.inv_sqrt_deg).map(|(a, b)| a * b).collect();
        for v in 0..g.n() {
            let mut acc = g.self_loops(v) as f64 * scaled[v];
            for &(w, _) in g.neighbors(v) {
                acc += scaled[w];
            }
            y[v] = 0.5 * (x[v] + self.inv_sqrt_deg[v] * acc);
        }
    }

    fn deflate(&self, x: &mut [f64]) {
        let proj: f64 = x.iter().zip(&self.top).map(|(a, b)| a * b).sum();
        for (xi, ti) in x.iter_mut().zip(&self.top) {
            *xi -= proj * ti;
        }
    }

    fn fiedler(&self, seed: u64, cap: usize) -> Eigenpair {
        let n = self.g.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        self.deflate(&mut x);
        normalize(&mut x);
        let mut y = vec![0.0; n];
        let mut mu = 0.0;
        for it in 1..=cap {
            self.apply(&x, &mut y);
            self.deflate(&mut y);
            mu = dot(&x, &y);
            let residual = y
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - mu * b).powi(2))
                .sum::<f64>()
                .sqrt();
            let norm = normalize(&mut y);
            std::mem::swap(&mut x, &mut y);
            if norm == 0.0 {
                // x lay entirely in the top eigenspace; nothing left to refine
                return Eigenpair {
                    vector: x,
                    eigenvalue: mu,
                    iterations: it,
                    converged: true,
                };
            }
            if residual <= RELATIVE_TOLERANCE * mu.abs().max(f64::MIN_POSITIVE) {
                return Eigenpair {
                    vector: x,
                    eigenvalue: mu,
                    iterations: it,
                    converged: true,
                };
            }
        }
        Eigenpair {
            vector: x,
            eigenvalue: mu,
            iterations: cap,
            converged: false,
        }
    }

    /// Random-walk coordinates `D^{-1/2} x`; sweeping these gives the Cheeger cut.
    fn embedding(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.inv_sqrt_deg).map(|(a, b)| a * b).collect()
    }
}

/// Best of the `n - 1` prefix cuts in ascending order of `score` (ties by index).
fn sweep_order(g: &Graph, score: &[f64]) -> Cut {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| score[a].total_cmp(&score[b]).then(a.cmp(&b)));
    let total = g.total_volume() as u64;
    let mut in_s = vec![false; n];
    let mut crossing: u64 = 0;
    let mut vol_s: u64 = 0;
    let mut best: Option<(u64, u64, usize)> = None;
    for (k, &v) in order[..n - 1].iter().enumerate() {
        let to_s = g.neighbors(v).iter().filter(|&&(w, _)| in_s[w]).count() as u64;
        crossing = crossing + g.edge_degree(v) as u64 - 2 * to_s;
        vol_s += g.degree(v) as u64;
        in_s[v] = true;
        let den = vol_s.min(total - vol_s);
        let better = match best {
            None => true,
            Some((bn, bd, _)) => crossing * bd < bn * den,
        };
        if better {
            best = Some((crossing, den, k + 1));
        }
    }
    let (_, _, len) = best.expect("n >= 2");
    let mut mask = vec![false; n];
    for &v in &order[..len] {
        mask[v] = true;
    }
    g.cut_from_mask(&mask)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = dot(x, x).sqrt();
    if norm > 0.0 {
        for xi in x.iter_mut() {
            *xi /= norm;
        }
    }
    norm
}
