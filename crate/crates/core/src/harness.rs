//! Experiment orchestration: seeded runs of the online engines, the exact
//! good-prefix check, the Monte Carlo drift estimator, and CSV/JSON output.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrivals::{coin_rng, degree_weights, product_pair_stream, uniform_edge_stream};
use crate::decomposition::{default_alpha, full_decomposition, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{conductance_exact, spectral_sweep, Graph, EXACT_LIMIT};
use crate::orientation::potential::cosh_delta;
use crate::orientation::{log_potential, ComposedOrienter, OfflineOrientation, OrientationState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Greedy,
    Random,
    OnePlusBeta,
    Composed,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Algorithm::Greedy),
            "random" => Ok(Algorithm::Random),
            "one-plus-beta" => Ok(Algorithm::OnePlusBeta),
            "composed" => Ok(Algorithm::Composed),
            _ => Err(Error::param("algo", format!("unknown algorithm {s:?}"))),
        }
    }
}

/// A parameter given explicitly or derived from the graph.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Param {
    #[default]
    Auto,
    Value(f64),
}

impl std::str::FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Param::Auto);
        }
        s.parse::<f64>()
            .map(Param::Value)
            .map_err(|_| Error::param("parameter", format!("{s:?} is neither a number nor auto")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub graph: Option<PathBuf>,
    pub horizon: u64,
    pub seeds: Vec<u64>,
    pub lambda: Param,
    pub beta: Param,
    pub alpha: Param,
    /// Row stride; `None` uses [`default_record_every`].
    pub record_every: Option<u64>,
    /// Steps at which the running maximum is additionally reported.
    pub checkpoints: Vec<u64>,
    /// Keep the full per-arrival orientation log.
    pub log_orientations: bool,
    pub csv: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, horizon: u64, seeds: Vec<u64>) -> Self {
        ExperimentConfig {
            algorithm,
            graph: None,
            horizon,
            seeds,
            lambda: Param::Auto,
            beta: Param::Auto,
            alpha: Param::Auto,
            record_every: None,
            checkpoints: Vec::new(),
            log_orientations: false,
            csv: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::param("steps", "horizon must be at least 1"));
        }
        if self.seeds.is_empty() {
            return Err(Error::param("seeds", "at least one seed is required"));
        }
        if let Param::Value(l) = self.lambda {
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::param("lambda", format!("{l} must be positive")));
            }
        }
        if let Param::Value(b) = self.beta {
            if !(0.0..=1.0).contains(&b) {
                return Err(Error::param("beta", format!("{b} not in [0, 1]")));
            }
        }
        if let Param::Value(a) = self.alpha {
            if !(a > 0.0 && a <= 1.0) {
                return Err(Error::param("alpha", format!("{a} not in (0, 1]")));
            }
        }
        if self.record_every == Some(0) {
            return Err(Error::param("record_every", "stride must be at least 1"));
        }
        Ok(())
    }
}

/// `2^ceil(log2(T / 1000))`, at least 1, so a run keeps about 1000 rows.
pub fn default_record_every(horizon: u64) -> u64 {
    let ratio = horizon as f64 / 1000.0;
    if ratio <= 1.0 {
        1
    } else {
        1u64 << (ratio.log2().ceil() as u32)
    }
}

/// `min(1/2, 1 / ceil(log2(n T))^4)`.
pub fn default_lambda(n: usize, horizon: u64) -> f64 {
    let nt = (n.max(2) as f64) * (horizon.max(1) as f64);
    let l = nt.log2().ceil().max(1.0);
    (1.0 / l.powi(4)).min(0.5)
}

/// Parameters after resolving `auto`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedParams {
    pub lambda: f64,
    pub beta: Option<f64>,
    pub alpha: Option<f64>,
    /// Regime conditions that do not hold; reported, never fatal.
    pub regime_warnings: Vec<String>,
}

/// Conductance used as `alpha` when none is given: exact up to
/// [`EXACT_LIMIT`] vertices, the best sweep cut above (an upper bound).
pub fn measured_conductance(g: &Graph) -> Result<f64> {
    if !g.is_connected() {
        return Ok(0.0);
    }
    if g.n() <= EXACT_LIMIT {
        Ok(conductance_exact(g)?.0)
    } else {
        Ok(spectral_sweep(g)?.best.conductance)
    }
}

pub fn resolve_params(g: &Graph, config: &ExperimentConfig) -> Result<ResolvedParams> {
    config.validate()?;
    let lambda = match config.lambda {
        Param::Value(l) => l,
        Param::Auto => default_lambda(g.n(), config.horizon),
    };
    let mut warnings = Vec::new();
    let (alpha, beta) = match config.algorithm {
        Algorithm::Greedy | Algorithm::Random => (None, None),
        Algorithm::Composed => {
            let alpha = match config.alpha {
                Param::Value(a) => a,
                Param::Auto => default_alpha(g.n()),
            };
            (Some(alpha), None)
        }
        Algorithm::OnePlusBeta => {
            let alpha = match config.alpha {
                Param::Value(a) => a,
                Param::Auto => measured_conductance(g)?,
            };
            let beta = match config.beta {
                Param::Value(b) => b,
                Param::Auto => alpha.clamp(0.0, 1.0),
            };
            if beta < 6.0 * lambda {
                warnings.push(format!("beta {beta} < 6 lambda = {}", 6.0 * lambda));
            }
            (Some(alpha), Some(beta))
        }
    };
    if let Some(a) = alpha {
        if a < 6.0 * lambda {
            warnings.push(format!("alpha {a} < 6 lambda = {}", 6.0 * lambda));
        }
    }
    Ok(ResolvedParams {
        lambda,
        beta,
        alpha,
        regime_warnings: warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub step: u64,
    pub max_disc: u64,
    pub argmax: usize,
    pub potential: f64,
    /// Maximum of `max_disc` over all steps so far.
    pub running_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub step: u64,
    pub running_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogRow {
    pub step: u64,
    pub tail: usize,
    pub head: usize,
    pub max_disc: u64,
    pub potential: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub seed: u64,
    pub algorithm: Algorithm,
    pub steps: u64,
    /// Maximum discrepancy over every step, not just recorded rows.
    pub max_disc: u64,
    pub final_max_disc: u64,
    pub final_disc: Vec<i64>,
    pub checkpoints: Vec<Checkpoint>,
    pub wall_time_secs: f64,
    pub params: ResolvedParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub rows: Vec<Row>,
    pub summary: RunSummary,
    /// Empty unless [`ExperimentConfig::log_orientations`] is set.
    pub log: Vec<LogRow>,
}

fn state_potential(state: &OrientationState) -> f64 {
    state
        .cached_potential()
        .unwrap_or_else(|| state.log_potential().exp())
}

/// Run `config` on `g` for every seed, in parallel, results in seed order.
pub fn run_experiment(g: &Graph, config: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    run_experiment_with(g, config, None)
}

/// As [`run_experiment`], reusing a prebuilt decomposition for the composed algorithm.
pub fn run_experiment_with(
    g: &Graph,
    config: &ExperimentConfig,
    decomposition: Option<&Decomposition>,
) -> Result<Vec<RunRecord>> {
    let params = resolve_params(g, config)?;
    if g.m() == 0 {
        return Err(Error::EmptyGraph("experiments need at least one edge"));
    }
    let built;
    let decomposition = match (config.algorithm, decomposition) {
        (Algorithm::Composed, Some(d)) => {
            if d.n != g.n() || d.m != g.m() {
                return Err(Error::Precondition(
                    "decomposition does not belong to this graph".into(),
                ));
            }
            Some(d)
        }
        (Algorithm::Composed, None) => {
            built = full_decomposition(g, params.alpha)?;
            Some(&built)
        }
        _ => None,
    };
    config
        .seeds
        .par_iter()
        .map(|&seed| run_seed(g, config, &params, decomposition, seed))
        .collect()
}

struct Recorder<'a> {
    stride: u64,
    horizon: u64,
    checkpoints: &'a [u64],
    running_max: u64,
    rows: Vec<Row>,
    hits: Vec<Checkpoint>,
    log: Option<Vec<LogRow>>,
}

impl Recorder<'_> {
    fn observe(&mut self, state: &OrientationState, arc: Option<(usize, usize)>) {
        let step = state.step();
        self.running_max = self.running_max.max(state.max_disc());
        let on_stride = step.is_multiple_of(self.stride) || step == self.horizon;
        let logging = arc.is_some() && self.log.is_some();
        if !on_stride && !logging && !self.checkpoints.contains(&step) {
            return;
        }
        let potential = state_potential(state);
        if on_stride {
            self.rows.push(Row {
                step,
                max_disc: state.max_disc(),
                argmax: state.argmax(),
                potential,
                running_max: self.running_max,
            });
        }
        if self.checkpoints.contains(&step) {
            self.hits.push(Checkpoint {
                step,
                running_max: self.running_max,
            });
        }
        if let (Some(log), Some((tail, head))) = (self.log.as_mut(), arc) {
            log.push(LogRow {
                step,
                tail,
                head,
                max_disc: state.max_disc(),
                potential,
            });
        }
    }
}

fn run_seed(
    g: &Graph,
    config: &ExperimentConfig,
    params: &ResolvedParams,
    decomposition: Option<&Decomposition>,
    seed: u64,
) -> Result<RunRecord> {
    let start = Instant::now();
    let mut coins = coin_rng(seed);
    let stride = config
        .record_every
        .unwrap_or_else(|| default_record_every(config.horizon));
    let mut rec = Recorder {
        stride,
        horizon: config.horizon,
        checkpoints: &config.checkpoints,
        running_max: 0,
        rows: Vec::new(),
        hits: Vec::new(),
        log: config.log_orientations.then(Vec::new),
    };
    let lambda = params.lambda;
    let final_state = match config.algorithm {
        Algorithm::Greedy | Algorithm::Random => {
            let mut state = OrientationState::new(g.n(), lambda)?;
            let greedy = config.algorithm == Algorithm::Greedy;
            for a in uniform_edge_stream(g, config.horizon, seed)? {
                let arc = if greedy {
                    state.greedy_step(a.u, a.v, &mut coins)?
                } else {
                    state.random_step(a.u, a.v, &mut coins)?
                };
                rec.observe(&state, Some((arc.tail, arc.head)));
            }
            state
        }
        Algorithm::OnePlusBeta => {
            let beta = params.beta.expect("resolved for one-plus-beta");
            let mut state = OrientationState::new(g.n(), lambda)?;
            for (u, v) in product_pair_stream(&degree_weights(g), config.horizon, seed)? {
                let arc = state.one_plus_beta_step(u, v, beta, &mut coins)?;
                rec.observe(&state, arc.map(|a| (a.tail, a.head)));
            }
            state
        }
        Algorithm::Composed => {
            let d = decomposition.expect("built for composed");
            let mut orienter = ComposedOrienter::new(d, lambda)?;
            for a in uniform_edge_stream(g, config.horizon, seed)? {
                let arc = orienter.step(a.index, &mut coins)?;
                rec.observe(orienter.global(), Some((arc.tail, arc.head)));
            }
            orienter.global().clone()
        }
    };
    Ok(RunRecord {
        summary: RunSummary {
            seed,
            algorithm: config.algorithm,
            steps: final_state.step(),
            max_disc: rec.running_max,
            final_max_disc: final_state.max_disc(),
            final_disc: final_state.disc().to_vec(),
            checkpoints: rec.hits,
            wall_time_secs: start.elapsed().as_secs_f64(),
            params: params.clone(),
        },
        rows: rec.rows,
        log: rec.log.unwrap_or_default(),
    })
}

/// Margins of the good-prefix inequalities for one prefix size `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrefixRow {
    pub k: usize,
    pub vol_s: usize,
    pub crossing: usize,
    /// `vol(S_k) / vol(V)`
    pub rho: f64,
    /// Edge process: `(vol(S_k) + |E(S_k, T_k)|) / vol(V)`.
    pub lhs_minus: f64,
    /// Product process: `(1 + beta - beta rho) rho`.
    pub rhs_minus: f64,
    pub margin_minus: f64,
    pub lhs_plus: f64,
    pub rhs_plus: f64,
    pub margin_plus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrefixReport {
    pub beta: f64,
    pub rows: Vec<PrefixRow>,
    pub min_margin: f64,
    /// Prefix sizes with a margin below `-PREFIX_TOLERANCE`.
    pub violations: Vec<usize>,
}

/// Tolerance below which a negative margin counts as a violation.
pub const PREFIX_TOLERANCE: f64 = 1e-12;

// LHS - RHS multiplied through by vol(V)^2 is c V - beta s (V - s), which
// keeps the integer part exact and makes the k = n margin exactly 0.
fn exact_margin(crossing: usize, side: usize, total: usize, beta: f64) -> f64 {
    let v = total as f64;
    (crossing as f64 * v - beta * side as f64 * (total - side) as f64) / (v * v)
}

/// Compare, for every prefix `S_k` of the vertices sorted by `disc`
/// descending (ties by index), the probability that the edge process puts
/// its `-1` in `S_k` (and its `+1` in `T_k = V \ S_k`) against the same
/// probability under the (1+β) product process with degree weights.
pub fn good_prefix_check(g: &Graph, beta: f64, disc: &[i64]) -> Result<PrefixReport> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::param("beta", format!("{beta} not in [0, 1]")));
    }
    if disc.len() != g.n() {
        return Err(Error::LengthMismatch {
            left: disc.len(),
            right: g.n(),
        });
    }
    let total = g.total_volume();
    if total == 0 {
        return Err(Error::EmptyGraph("good-prefix check needs positive volume"));
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| disc[b].cmp(&disc[a]).then(a.cmp(&b)));
    let vol = total as f64;
    let mut in_s = vec![false; g.n()];
    let mut vol_s = 0usize;
    let mut crossing = 0usize;
    let mut rows = Vec::with_capacity(g.n());
    for (idx, &x) in order.iter().enumerate() {
        in_s[x] = true;
        vol_s += g.degree(x);
        for &(y, _) in g.neighbors(x) {
            if y == x {
                continue;
            }
            if in_s[y] {
                crossing -= 1;
            } else {
                crossing += 1;
            }
        }
        let rho = vol_s as f64 / vol;
        let lhs_minus = (vol_s + crossing) as f64 / vol;
        let rhs_minus = (1.0 + beta - beta * rho) * rho;
        let vol_t = total - vol_s;
        let rho_t = vol_t as f64 / vol;
        let lhs_plus = (vol_t + crossing) as f64 / vol;
        let rhs_plus = (1.0 + beta - beta * rho_t) * rho_t;
        rows.push(PrefixRow {
            k: idx + 1,
            vol_s,
            crossing,
            rho,
            lhs_minus,
            rhs_minus,
            margin_minus: exact_margin(crossing, vol_s, total, beta),
            lhs_plus,
            rhs_plus,
            margin_plus: exact_margin(crossing, vol_t, total, beta),
        });
    }
    let min_margin = rows
        .iter()
        .flat_map(|r| [r.margin_minus, r.margin_plus])
        .fold(f64::INFINITY, f64::min);
    let violations = rows
        .iter()
        .filter(|r| r.margin_minus < -PREFIX_TOLERANCE || r.margin_plus < -PREFIX_TOLERANCE)
        .map(|r| r.k)
        .collect();
    Ok(PrefixReport {
        beta,
        rows,
        min_margin,
        violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftParams {
    pub lambda: f64,
    pub beta: f64,
    pub samples: u64,
    pub seed: u64,
    /// Horizon `T` in the potential guard `Φ <= (n T)^10`.
    pub horizon: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub samples: u64,
    pub log_potential: f64,
    /// `10 ln(n T)`
    pub log_guard: f64,
    /// `Φ <= (n T)^10`; runs above it are reported as unguarded.
    pub guarded: bool,
    /// `n * min_v w_v / Σ w`.
    pub gamma_observed: f64,
    /// `gamma_observed >= 16 lambda^(1/4)`.
    pub weight_condition: bool,
}

/// Two-sided 99% normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_901;

/// Surrogate one-step change `Δ-1 + Δ+1` for the sampled pair, averaged
/// exactly over the algorithm's coins. The `-1` lands on the tail.
pub fn surrogate_delta(disc: &[i64], lambda: f64, beta: f64, u: usize, v: usize) -> f64 {
    let term = |tail: usize, head: usize| {
        cosh_delta(lambda * disc[tail] as f64, -lambda)
            + cosh_delta(lambda * disc[head] as f64, lambda)
    };
    let forward = term(u, v);
    let backward = term(v, u);
    let random = 0.5 * (forward + backward);
    let greedy = match disc[u].cmp(&disc[v]) {
        std::cmp::Ordering::Greater => forward,
        std::cmp::Ordering::Less => backward,
        std::cmp::Ordering::Equal => random,
    };
    beta * greedy + (1.0 - beta) * random
}

/// Monte Carlo mean of [`surrogate_delta`] over `(u, v)` drawn from the
/// product distribution of `weights`, with a normal 99% interval.
pub fn drift_estimate(disc: &[i64], weights: &[u64], params: &DriftParams) -> Result<DriftEstimate> {
    let DriftParams {
        lambda,
        beta,
        samples,
        seed,
        horizon,
    } = *params;
    if disc.len() != weights.len() {
        return Err(Error::LengthMismatch {
            left: disc.len(),
            right: weights.len(),
        });
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::param("lambda", format!("{lambda} must be positive")));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::param("beta", format!("{beta} not in [0, 1]")));
    }
    if samples < 2 {
        return Err(Error::param("samples", "need at least 2 samples"));
    }
    let stream = product_pair_stream(weights, samples, seed)?;
    let n = disc.len();
    // Welford
    let mut mean = 0.0;
    let mut m2 = 0.0;
    let mut count = 0u64;
    for (u, v) in stream {
        let x = surrogate_delta(disc, lambda, beta, u, v);
        count += 1;
        let delta = x - mean;
        mean += delta / count as f64;
        m2 += delta * (x - mean);
    }
    let variance = m2 / (count - 1) as f64;
    let std_error = (variance / count as f64).sqrt();
    let total: u64 = weights.iter().sum();
    let min_w = weights.iter().copied().min().unwrap_or(0);
    let gamma_observed = n as f64 * min_w as f64 / total as f64;
    let log_phi = log_potential(disc, lambda);
    let log_guard = 10.0 * ((n.max(1) as f64) * (horizon.max(1) as f64)).ln();
    Ok(DriftEstimate {
        mean,
        std_error,
        ci_low: mean - Z_99 * std_error,
        ci_high: mean + Z_99 * std_error,
        samples: count,
        log_potential: log_phi,
        log_guard,
        guarded: log_phi <= log_guard,
        gamma_observed,
        weight_condition: gamma_observed >= 16.0 * lambda.powf(0.25),
    })
}

fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

pub const SERIES_HEADER: &str = "step,max_disc,argmax,potential";
pub const LOG_HEADER: &str = "step,tail,head,max_disc,potential";
pub const OFFLINE_HEADER: &str = "tail,head,max_disc,potential";

pub fn rows_csv(rows: &[Row]) -> String {
    let mut out = String::from(SERIES_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.step,
            r.max_disc,
            r.argmax,
            fmt_f64(r.potential)
        );
    }
    out
}

pub fn log_csv(log: &[LogRow]) -> String {
    let mut out = String::from(LOG_HEADER);
    out.push('\n');
    for r in log {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.step,
            r.tail,
            r.head,
            r.max_disc,
            fmt_f64(r.potential)
        );
    }
    out
}

/// Offline arcs replayed in order, with the running max discrepancy and potential.
pub fn offline_csv(n: usize, orientation: &OfflineOrientation, lambda: f64) -> Result<String> {
    let mut state = OrientationState::new(n, lambda)?;
    let mut out = String::from(OFFLINE_HEADER);
    out.push('\n');
    for &(tail, head) in &orientation.arcs {
        state.orient(tail, head)?;
        let _ = writeln!(
            out,
            "{tail},{head},{},{}",
            state.max_disc(),
            fmt_f64(state_potential(&state))
        );
    }
    Ok(out)
}

/// Write `contents` to `path` through a sibling temp file and a rename, so
/// readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| Error::param("path", format!("{} has no file name", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

/// `<stem>.seed<k>.<ext>` next to `path`, used when one run writes several seeds.
pub fn per_seed_path(path: &Path, seed: u64) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.seed{seed}.{}", ext.to_string_lossy()),
        None => format!("{stem}.seed{seed}"),
    };
    path.with_file_name(name)
}

/// Write one series CSV per record: `path` itself for a single seed,
/// [`per_seed_path`] otherwise. Returns the paths written.
pub fn emit_series(path: &Path, records: &[RunRecord]) -> Result<Vec<PathBuf>> {
    if records.len() <= 1 {
        let rows = records.first().map(|r| r.rows.as_slice()).unwrap_or(&[]);
        write_atomic(path, rows_csv(rows).as_bytes())?;
        return Ok(vec![path.to_path_buf()]);
    }
    records
        .iter()
        .map(|r| {
            let p = per_seed_path(path, r.summary.seed);
            write_atomic(&p, rows_csv(&r.rows).as_bytes())?;
            Ok(p)
        })
        .collect()
}
