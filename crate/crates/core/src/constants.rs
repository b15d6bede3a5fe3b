//! Calibrated thresholds read by the acceptance and integration tests.
//!
//! Each constant records where its value came from. Values marked "pilot"
//! were fixed from the runs described and then frozen; tests never adjust
//! them.

/// Greedy on `K_64`, `T = 10^5`: every seed's running max must stay at or below this.
/// Target value; pilot (20 seeds, seeds 0..20) observed 3 to 4.
pub const GREEDY_COMPLETE_MAX_DISC: u64 = 8;

/// Allowed increase of the median running max from `K_16` to `K_256`.
/// Target value; pilot medians were 3 at all three sizes.
pub const GREEDY_COMPLETE_GROWTH: u64 = 3;

/// Random signing on two vertices: median `|disc_T|` must lie in
/// `[LOW sqrt(T), HIGH sqrt(T)]`. Expected value is about `0.80 sqrt(T)`.
pub const RANDOM_SQRT_LOW: f64 = 0.3;
pub const RANDOM_SQRT_HIGH: f64 = 3.0;

/// Good-prefix margins may dip below zero by at most this (rounding only).
pub const PREFIX_MARGIN_TOLERANCE: f64 = 1e-12;

/// Upper bound `C` on the 99% upper confidence limit of the surrogate drift.
/// Pilot: 100 guarded states on random certified expanders (n 6..=14,
/// beta = alpha, default lambda, 2*10^4 samples each, three state families:
/// uniform spread, clustered top, small scale); the largest upper limit was
/// below 0. Frozen at 1.0.
pub const DRIFT_BOUND: f64 = 1.0;

/// Minimum number of states (of 100) whose drift upper limit is within [`DRIFT_BOUND`].
pub const DRIFT_MIN_PASSING: usize = 95;

/// Composed algorithm on barbell(64) and grid 16x16, `T = 10^5`.
/// Target budget; pilot (10 seeds) observed running max 3 to 4 on both.
pub const COMPOSED_MAX_DISC: u64 = 200;

/// Allowed relative increase of the seed-averaged running max from
/// `T = 10^4` to `T = 10^5`. Pilot averages rose from 3.0 to at most 3.3.
pub const COMPOSED_GROWTH: f64 = 0.25;

/// Steps compared for bit-exact engine identities.
pub const IDENTITY_STEPS: u64 = 10_000;

/// Random vector pairs for the majorization check.
pub const MAJORIZATION_PAIRS: usize = 10_000;
