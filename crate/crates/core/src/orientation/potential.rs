//! The soft-max potential `Φ(d) = Σ_v cosh(λ d_v)`.

use crate::error::{Error, Result};

/// Above this value of `λ |d_v|` the potential is evaluated in log space.
pub const OVERFLOW_THRESHOLD: f64 = 700.0;

/// `ln cosh(x)`, stable for large `|x|`.
pub fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// `cosh(x + step) - cosh(x)` via `2 sinh(x + step/2) sinh(step/2)`.
pub fn cosh_delta(x: f64, step: f64) -> f64 {
    2.0 * (x + 0.5 * step).sinh() * (0.5 * step).sinh()
}

/// `ln Φ` by log-sum-exp; finite for any integer discrepancies.
pub fn log_potential(disc: &[i64], lambda: f64) -> f64 {
    if disc.is_empty() {
        return f64::NEG_INFINITY;
    }
    let terms: Vec<f64> = disc.iter().map(|&d| ln_cosh(lambda * d as f64)).collect();
    let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln()
}

/// `Φ` directly when every `λ|d_v|` is below [`OVERFLOW_THRESHOLD`], else from the log form.
pub fn potential(disc: &[i64], lambda: f64) -> Result<f64> {
    let widest = disc
        .iter()
        .map(|&d| (lambda * d as f64).abs())
        .fold(0.0, f64::max);
    if widest <= OVERFLOW_THRESHOLD {
        return Ok(disc.iter().map(|&d| (lambda * d as f64).cosh()).sum());
    }
    let log_phi = log_potential(disc, lambda);
    let phi = log_phi.exp();
    if phi.is_finite() {
        Ok(phi)
    } else {
        Err(Error::PotentialOverflow(log_phi))
    }
}
