//! Online signing engines and the discrepancy state they mutate.
//!
//! Orienting an edge `tail -> head` gives `head` an in-edge and `tail` an
//! out-edge, so `disc(head) += 1` and `disc(tail) -= 1`.

mod composed;
mod majorize;
mod offline;
pub mod potential;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use composed::ComposedOrienter;
pub use majorize::majorizes;
pub use offline::{offline_orient, OfflineOrientation};
pub use potential::{log_potential, potential, OVERFLOW_THRESHOLD};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedEdge {
    pub tail: usize,
    pub head: usize,
    /// 1-based index of the arrival that produced this orientation.
    pub step: u64,
}

/// Per-vertex signed discrepancies of one online process.
#[derive(Debug, Clone)]
pub struct OrientationState {
    disc: Vec<i64>,
    step: u64,
    lambda: f64,
    potential: f64,
    potential_valid: bool,
    // abs_count[k] = #vertices with |disc| == k
    abs_count: Vec<usize>,
    max_abs: usize,
}

impl OrientationState {
    pub fn new(n: usize, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::param("lambda", format!("{lambda} must be positive")));
        }
        Ok(OrientationState {
            disc: vec![0; n],
            step: 0,
            lambda,
            potential: n as f64,
            potential_valid: true,
            abs_count: vec![n],
            max_abs: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.disc.len()
    }

    pub fn disc(&self) -> &[i64] {
        &self.disc
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `max_v |disc(v)|`, maintained in O(1) per step.
    pub fn max_disc(&self) -> u64 {
        self.max_abs as u64
    }

    /// Lowest-index vertex attaining [`Self::max_disc`].
    pub fn argmax(&self) -> usize {
        self.disc
            .iter()
            .position(|d| d.unsigned_abs() as usize == self.max_abs)
            .unwrap_or(0)
    }

    /// Exact `Σ cosh(λ d_v)`, recomputed from the vector.
    pub fn potential(&self) -> Result<f64> {
        potential::potential(&self.disc, self.lambda)
    }

    pub fn log_potential(&self) -> f64 {
        potential::log_potential(&self.disc, self.lambda)
    }

    /// Incrementally maintained potential; `None` once any `λ|d_v|` passed the overflow threshold.
    pub fn cached_potential(&self) -> Option<f64> {
        self.potential_valid.then_some(self.potential)
    }

    /// Change in `Φ` if `tail -> head` were applied now.
    pub fn potential_delta(&self, tail: usize, head: usize) -> f64 {
        let l = self.lambda;
        potential::cosh_delta(l * self.disc[tail] as f64, -l)
            + potential::cosh_delta(l * self.disc[head] as f64, l)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.disc.len() {
                return Err(Error::VertexOutOfRange {
                    index: w,
                    n: self.disc.len(),
                });
            }
        }
        Ok(())
    }

    fn check_edge(&self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        if u == v {
            return Err(Error::Precondition(format!(
                "self-loop arrival at vertex {u}"
            )));
        }
        Ok(())
    }

    /// Apply `tail -> head` unconditionally.
    pub fn orient(&mut self, tail: usize, head: usize) -> Result<OrientedEdge> {
        self.check_edge(tail, head)?;
        Ok(self.apply(tail, head))
    }

    fn apply(&mut self, tail: usize, head: usize) -> OrientedEdge {
        if self.potential_valid {
            self.potential += self.potential_delta(tail, head);
        }
        self.step += 1;
        self.shift(tail, -1);
        self.shift(head, 1);
        if self.max_abs as f64 * self.lambda > OVERFLOW_THRESHOLD {
            self.potential_valid = false;
        }
        OrientedEdge {
            tail,
            head,
            step: self.step,
        }
    }

    fn shift(&mut self, v: usize, by: i64) {
        let before = self.disc[v].unsigned_abs() as usize;
        self.disc[v] += by;
        let after = self.disc[v].unsigned_abs() as usize;
        self.abs_count[before] -= 1;
        if after >= self.abs_count.len() {
            self.abs_count.resize(after + 1, 0);
        }
        self.abs_count[after] += 1;
        if after > self.max_abs {
            self.max_abs = after;
        } else if before == self.max_abs && self.abs_count[before] == 0 {
            self.max_abs = before - 1;
        }
    }

    /// Orient from the endpoint with strictly larger discrepancy; ties take one coin,
    /// `true` making `u` the tail.
    pub fn greedy_step<R: Rng + ?Sized>(
        &mut self,
        u: usize,
        v: usize,
        rng: &mut R,
    ) -> Result<OrientedEdge> {
        self.check_edge(u, v)?;
        Ok(self.greedy_unchecked(u, v, rng))
    }

    fn greedy_unchecked<R: Rng + ?Sized>(&mut self, u: usize, v: usize, rng: &mut R) -> OrientedEdge {
        let u_is_tail = match self.disc[u].cmp(&self.disc[v]) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => rng.gen::<bool>(),
        };
        if u_is_tail {
            self.apply(u, v)
        } else {
            self.apply(v, u)
        }
    }

    /// One fair coin: `false` orients `u -> v`, `true` orients `v -> u`.
    pub fn random_step<R: Rng + ?Sized>(
        &mut self,
        u: usize,
        v: usize,
        rng: &mut R,
    ) -> Result<OrientedEdge> {
        self.check_edge(u, v)?;
        Ok(self.random_unchecked(u, v, rng))
    }

    fn random_unchecked<R: Rng + ?Sized>(&mut self, u: usize, v: usize, rng: &mut R) -> OrientedEdge {
        if rng.gen::<bool>() {
            self.apply(v, u)
        } else {
            self.apply(u, v)
        }
    }

    /// (1+β) rule: greedy with probability `beta`, otherwise a random sign.
    ///
    /// `u == v` is a no-op that still counts as a processed arrival. The
    /// β-coin is only drawn when `0 < beta < 1`, so `beta = 1` and `beta = 0`
    /// consume the coin stream exactly like [`Self::greedy_step`] and
    /// [`Self::random_step`].
    pub fn one_plus_beta_step<R: Rng + ?Sized>(
        &mut self,
        u: usize,
        v: usize,
        beta: f64,
        rng: &mut R,
    ) -> Result<Option<OrientedEdge>> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::param("beta", format!("{beta} not in [0, 1]")));
        }
        self.check_pair(u, v)?;
        if u == v {
            self.step += 1;
            return Ok(None);
        }
        let greedy = if beta >= 1.0 {
            true
        } else if beta <= 0.0 {
            false
        } else {
            rng.gen_bool(beta)
        };
        Ok(Some(if greedy {
            self.greedy_unchecked(u, v, rng)
        } else {
            self.random_unchecked(u, v, rng)
        }))
    }
}

/// Online signing rule for a single state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "beta")]
pub enum Engine {
    Greedy,
    Random,
    OnePlusBeta(f64),
}

impl Engine {
    pub fn step<R: Rng + ?Sized>(
        self,
        state: &mut OrientationState,
        u: usize,
        v: usize,
        rng: &mut R,
    ) -> Result<Option<OrientedEdge>> {
        match self {
            Engine::Greedy => state.greedy_step(u, v, rng).map(Some),
            Engine::Random => state.random_step(u, v, rng).map(Some),
            Engine::OnePlusBeta(beta) => state.one_plus_beta_step(u, v, beta, rng),
        }
    }
}
