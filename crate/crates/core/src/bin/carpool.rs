//! `carpool`: run orientation experiments, decompositions and checks from the shell.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 invariant violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use carpool::arrivals::{arrival_rng, degree_weights};
use carpool::decomposition::{full_decomposition, Decomposition};
use carpool::graph::read_edge_list;
use carpool::harness::{
    default_lambda, drift_estimate, emit_series, good_prefix_check, log_csv, measured_conductance,
    offline_csv, run_experiment, write_atomic, write_json, Algorithm, DriftParams,
    ExperimentConfig, Param, PrefixReport, RunSummary,
};
use carpool::orientation::offline_orient;
use carpool::{Error, Graph};

#[derive(Parser, Debug)]
#[command(name = "carpool", version, about = "Online edge orientation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an online algorithm on i.i.d. arrivals and record max discrepancy.
    Simulate {
        #[arg(long, value_parser = parse_algo)]
        algo: Algorithm,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        steps: u64,
        /// Comma-separated seeds, a range `a..b`, or a count `k` meaning seeds 0..k.
        #[arg(long, default_value = "1", value_parser = parse_seeds)]
        seeds: Seeds,
        #[arg(long, default_value = "auto", value_parser = parse_param)]
        lambda: Param,
        #[arg(long, default_value = "auto", value_parser = parse_param)]
        beta: Param,
        #[arg(long, default_value = "auto", value_parser = parse_param)]
        alpha: Param,
        /// Series CSV; several seeds write `<stem>.seed<k>.csv`.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        record_every: Option<u64>,
        /// Per-arrival orientation log CSV (single seed only).
        #[arg(long)]
        log: Option<PathBuf>,
        /// Write run summaries as JSON instead of printing them.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Decompose a graph into weakly-regular expanders and write the JSON report.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_param)]
        alpha: Param,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the good-prefix inequalities exactly.
    CheckPrefix {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        beta: f64,
        /// Comma-separated discrepancy vector; default checks zero plus random vectors.
        #[arg(long, allow_hyphen_values = true)]
        disc: Option<String>,
        #[arg(long, default_value_t = 3)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Orient all edges offline with discrepancy at most 1.
    Offline {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
    },
    /// Monte Carlo estimate of the one-step surrogate potential drift.
    Drift {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_param)]
        lambda: Param,
        #[arg(long, default_value = "auto", value_parser = parse_param)]
        beta: Param,
        #[arg(long)]
        samples: u64,
        /// Comma-separated discrepancy vector; default all zero.
        #[arg(long, allow_hyphen_values = true)]
        disc: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Horizon used by the potential guard and by `--lambda auto`.
        #[arg(long, default_value_t = 100_000)]
        steps: u64,
    },
}

#[derive(Debug, Clone)]
struct Seeds(Vec<u64>);

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_param(s: &str) -> Result<Param, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_seeds(s: &str) -> Result<Seeds, String> {
    let bad = |_| format!("invalid seeds {s:?}");
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (u64, u64) = (a.parse().map_err(bad)?, b.parse().map_err(bad)?);
        if a >= b {
            return Err(format!("empty seed range {s:?}"));
        }
        return Ok(Seeds((a..b).collect()));
    }
    if s.contains(',') {
        return s
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| t.trim().parse().map_err(bad))
            .collect::<Result<_, _>>()
            .map(Seeds);
    }
    let k: u64 = s.parse().map_err(bad)?;
    if k == 0 {
        return Err("seed count must be at least 1".into());
    }
    Ok(Seeds((0..k).collect()))
}

fn parse_disc(s: &str, n: usize) -> Result<Vec<i64>, Error> {
    let disc = s
        .split(',')
        .map(|t| {
            t.trim().parse::<i64>().map_err(|_| Error::Parse {
                line: 0,
                msg: format!("bad discrepancy entry {t:?}"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if disc.len() != n {
        return Err(Error::LengthMismatch {
            left: disc.len(),
            right: n,
        });
    }
    Ok(disc)
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Violation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    println!("{text}");
    Ok(())
}

fn simulate(cmd: Command) -> Result<(), Failure> {
    let Command::Simulate {
        algo,
        graph,
        steps,
        seeds,
        lambda,
        beta,
        alpha,
        csv,
        record_every,
        log,
        summary,
    } = cmd
    else {
        unreachable!()
    };
    let g = read_edge_list(&graph)?;
    if log.is_some() && seeds.0.len() != 1 {
        return Err(Failure::Usage("--log needs exactly one seed".into()));
    }
    let mut config = ExperimentConfig::new(algo, steps, seeds.0);
    config.graph = Some(graph);
    config.lambda = lambda;
    config.beta = beta;
    config.alpha = alpha;
    config.record_every = record_every;
    config.log_orientations = log.is_some();
    config.csv = csv.clone();
    let records = run_experiment(&g, &config)?;
    if let Some(path) = &csv {
        emit_series(path, &records)?;
    }
    if let Some(path) = &log {
        write_atomic(path, log_csv(&records[0].log).as_bytes())?;
    }
    let summaries: Vec<&RunSummary> = records.iter().map(|r| &r.summary).collect();
    match summary {
        Some(path) => write_json(&path, &summaries)?,
        None => print_json(&summaries)?,
    }
    Ok(())
}

fn decompose(input: PathBuf, alpha: Param, out: PathBuf) -> Result<(), Failure> {
    let g = read_edge_list(&input)?;
    let alpha = match alpha {
        Param::Auto => None,
        Param::Value(a) => Some(a),
    };
    let d: Decomposition = full_decomposition(&g, alpha)?;
    write_json(&out, &d.to_report())?;
    println!(
        "n={} m={} alpha={} parts={} rounds={} max_membership={}",
        d.n,
        d.m,
        d.alpha,
        d.parts.len(),
        d.rounds,
        d.max_membership()
    );
    if d.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(d.violations.join("\n")))
    }
}

#[derive(Serialize)]
struct PrefixResult {
    disc: Vec<i64>,
    report: PrefixReport,
}

fn check_prefix(
    graph: PathBuf,
    beta: f64,
    disc: Option<String>,
    random: usize,
    seed: u64,
) -> Result<(), Failure> {
    let g = read_edge_list(&graph)?;
    let n = g.n();
    let vectors = match disc {
        Some(s) => vec![parse_disc(&s, n)?],
        None => {
            use rand::Rng;
            let mut rng = arrival_rng(seed);
            let mut vs = vec![vec![0i64; n]];
            for _ in 0..random {
                vs.push((0..n).map(|_| rng.gen_range(-10..=10)).collect());
            }
            vs
        }
    };
    let mut results = Vec::new();
    for d in vectors {
        let report = good_prefix_check(&g, beta, &d)?;
        results.push(PrefixResult { disc: d, report });
    }
    print_json(&results)?;
    let bad: Vec<String> = results
        .iter()
        .filter(|r| !r.report.violations.is_empty())
        .map(|r| format!("prefix violations at k = {:?}", r.report.violations))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(bad.join("\n")))
    }
}

fn offline(graph: PathBuf, out: Option<PathBuf>, lambda: f64) -> Result<(), Failure> {
    let g = read_edge_list(&graph)?;
    let o = offline_orient(&g);
    let text = offline_csv(g.n(), &o, lambda)?;
    match out {
        Some(path) => write_atomic(&path, text.as_bytes())?,
        None => print!("{text}"),
    }
    if o.max_disc() > 1 {
        return Err(Failure::Violation(format!(
            "offline orientation reached discrepancy {}",
            o.max_disc()
        )));
    }
    Ok(())
}

fn drift(
    graph: PathBuf,
    lambda: Param,
    beta: Param,
    samples: u64,
    disc: Option<String>,
    seed: u64,
    steps: u64,
) -> Result<(), Failure> {
    let g: Graph = read_edge_list(&graph)?;
    let lambda = match lambda {
        Param::Value(l) => l,
        Param::Auto => default_lambda(g.n(), steps),
    };
    let beta = match beta {
        Param::Value(b) => b,
        Param::Auto => measured_conductance(&g)?.min(1.0),
    };
    let d = match disc {
        Some(s) => parse_disc(&s, g.n())?,
        None => vec![0; g.n()],
    };
    if d.iter().sum::<i64>() != 0 {
        return Err(Failure::Usage("discrepancy vector must sum to zero".into()));
    }
    let params = DriftParams {
        lambda,
        beta,
        samples,
        seed,
        horizon: steps,
    };
    let estimate = drift_estimate(&d, &degree_weights(&g), &params)?;
    #[derive(Serialize)]
    struct Out {
        lambda: f64,
        beta: f64,
        #[serde(flatten)]
        estimate: carpool::harness::DriftEstimate,
    }
    print_json(&Out {
        lambda,
        beta,
        estimate,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        cmd @ Command::Simulate { .. } => simulate(cmd),
        Command::Decompose { input, alpha, out } => decompose(input, alpha, out),
        Command::CheckPrefix {
            graph,
            beta,
            disc,
            random,
            seed,
        } => check_prefix(graph, beta, disc, random, seed),
        Command::Offline { graph, out, lambda } => offline(graph, out, lambda),
        Command::Drift {
            graph,
            lambda,
            beta,
            samples,
            disc,
            seed,
            steps,
        } => drift(graph, lambda, beta, samples, disc, seed, steps),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(2)
        }
    }
}
