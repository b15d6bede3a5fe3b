use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use carpool::decomposition::DecompositionReport;
use carpool::graph::write_edge_list;
use carpool::Graph;

fn carpool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carpool"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_graph(dir: &Path, name: &str, g: &Graph) -> String {
    let p = dir.join(name);
    fs::write(&p, write_edge_list(g)).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(carpool(&["--help"]).status.code(), Some(0));
    assert_eq!(carpool(&["--version"]).status.code(), Some(0));
    assert_eq!(carpool(&["simulate", "--help"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(carpool(&[]).status.code(), Some(1));
    assert_eq!(carpool(&["nope"]).status.code(), Some(1));
    let out = carpool(&[
        "simulate", "--algo", "sideways", "--graph", "x", "--steps", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = carpool(&[
        "simulate", "--algo", "greedy", "--graph", "/no/such/file", "--steps", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/no/such/file"));
}

#[test]
fn simulate_writes_identical_csvs_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "k6.txt", &Graph::complete(6));
    let csv = dir.path().join("run.csv");
    let csv_s = csv.to_string_lossy().into_owned();
    let args = [
        "simulate", "--algo", "greedy", "--graph", &graph, "--steps", "3000", "--seeds", "2,9",
        "--csv", &csv_s,
    ];
    assert_eq!(carpool(&args).status.code(), Some(0));
    let first = fs::read_to_string(dir.path().join("run.seed2.csv")).unwrap();
    assert!(first.starts_with("step,max_disc,argmax,potential\n"));
    // stride 2^ceil(log2 3) = 4
    assert_eq!(first.lines().count(), 1 + 750);
    assert!(dir.path().join("run.seed9.csv").exists());
    assert_eq!(carpool(&args).status.code(), Some(0));
    let again = fs::read_to_string(dir.path().join("run.seed2.csv")).unwrap();
    assert_eq!(first, again);
}

#[test]
fn simulate_single_seed_summary_and_log() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "bar.txt", &Graph::barbell(5));
    let csv = dir.path().join("one.csv").to_string_lossy().into_owned();
    let log = dir.path().join("log.csv").to_string_lossy().into_owned();
    let out = carpool(&[
        "simulate", "--algo", "composed", "--graph", &graph, "--steps", "500", "--seeds", "4..5",
        "--csv", &csv, "--log", &log,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary[0]["seed"], 4);
    assert_eq!(summary[0]["steps"], 500);
    let log = fs::read_to_string(&log).unwrap();
    assert!(log.starts_with("step,tail,head,max_disc,potential\n"));
    assert_eq!(log.lines().count(), 501);
    assert!(Path::new(&csv).exists());
}

#[test]
fn decompose_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let g = Graph::barbell(8);
    let graph = write_graph(dir.path(), "bar.txt", &g);
    let out_path = dir.path().join("d.json");
    let out = carpool(&[
        "decompose", "--input", &graph, "--alpha", "0.3", "--out",
        &out_path.to_string_lossy(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: DecompositionReport =
        serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report.parts.len(), 3);
    assert_eq!(report.rounds, 2);
    assert_eq!(report.alpha, 0.3);
    let bridge_part = report.parts.iter().find(|p| p.round == 2).unwrap();
    assert_eq!(bridge_part.vertices, vec![7, 8]);
    assert_eq!(bridge_part.certificate.method.clone(), carpool::decomposition::CertificateMethod::Exact);
}

#[test]
fn check_prefix_flags_violations_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(dir.path(), "k4.txt", &Graph::complete(4));
    assert_eq!(
        carpool(&["check-prefix", "--graph", &k4, "--beta", "0.6"]).status.code(),
        Some(0)
    );
    let bar = write_graph(dir.path(), "bar.txt", &Graph::barbell(5));
    let out = carpool(&[
        "check-prefix", "--graph", &bar, "--beta", "0.5", "--disc",
        "1,1,1,1,1,-1,-1,-1,-1,-1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = carpool(&["check-prefix", "--graph", &bar, "--beta", "0.5", "--disc", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn offline_emits_arcs() {
    let dir = tempfile::tempdir().unwrap();
    let g = Graph::path(3);
    let graph = write_graph(dir.path(), "p3.txt", &g);
    let out = carpool(&["offline", "--graph", &graph]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tail,head,max_disc,potential"));
    let arcs: Vec<(usize, usize)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap())
        })
        .collect();
    // a consistent direction along the path
    assert!(arcs == vec![(0, 1), (1, 2)] || arcs == vec![(1, 0), (2, 1)]);
}

#[test]
fn drift_zero_state_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_graph(dir.path(), "c5.txt", &Graph::cycle(5));
    let out = carpool(&[
        "drift", "--graph", &graph, "--lambda", "0.2", "--beta", "0.5", "--samples", "500",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let mean = v["mean"].as_f64().unwrap();
    assert!((mean - 2.0 * (0.2f64.cosh() - 1.0)).abs() < 1e-12);
    let out = carpool(&[
        "drift", "--graph", &graph, "--lambda", "0.2", "--beta", "0.5", "--samples", "500",
        "--disc", "1,0,0,0,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
