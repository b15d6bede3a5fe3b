use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use carpool_ffi::*;

unsafe fn last_error() -> String {
    let p = carpool_last_error_message();
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    carpool_string_free(p);
    s
}

unsafe fn graph(n: usize, edges: &[(usize, usize)]) -> *mut CarpoolGraph {
    let flat: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut g = ptr::null_mut();
    assert_eq!(
        carpool_graph_new(n, flat.as_ptr(), edges.len(), &mut g),
        CarpoolStatus::Ok
    );
    g
}

fn complete(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn barbell(k: usize) -> Vec<(usize, usize)> {
    let mut e = complete(k);
    e.extend(complete(k).into_iter().map(|(u, v)| (u + k, v + k)));
    e.push((k - 1, k));
    e
}

#[test]
fn graph_counts_and_conductance() {
    unsafe {
        let g = graph(4, &complete(4));
        let (mut n, mut m) = (0, 0);
        assert_eq!(carpool_graph_counts(g, &mut n, &mut m), CarpoolStatus::Ok);
        assert_eq!((n, m), (4, 6));
        let mut phi = 0.0;
        assert_eq!(carpool_graph_conductance_exact(g, &mut phi), CarpoolStatus::Ok);
        // K4 halves: 4 crossing over volume 6
        assert!((phi - 4.0 / 6.0).abs() < 1e-12);
        carpool_graph_free(g);
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let flat = [0usize, 5];
        let mut g = ptr::null_mut();
        let st = carpool_graph_new(3, flat.as_ptr(), 1, &mut g);
        assert_eq!(st, CarpoolStatus::OutOfRange);
        assert!(g.is_null());
        assert!(last_error().contains('5'));

        let mut n = 0;
        assert_eq!(
            carpool_graph_counts(ptr::null(), &mut n, &mut n),
            CarpoolStatus::NullPointer
        );
        assert!(last_error().contains("graph"));

        let path = CString::new("/no/such/graph").unwrap();
        assert_eq!(carpool_graph_read(path.as_ptr(), &mut g), CarpoolStatus::Io);
        assert!(last_error().contains("/no/such/graph"));

        let mut o = ptr::null_mut();
        assert_eq!(
            carpool_orienter_new(3, 0.1, CarpoolEngine::OnePlusBeta, 1.5, 0, &mut o),
            CarpoolStatus::InvalidArgument
        );
        carpool_string_free(ptr::null_mut());
        carpool_graph_free(ptr::null_mut());
    }
}

#[test]
fn graph_read_from_file() {
    let dir = std::env::temp_dir().join(format!("carpool-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("p3.txt");
    std::fs::write(&file, "n 3\n0 1\n1 2\n").unwrap();
    unsafe {
        let path = CString::new(file.to_str().unwrap()).unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(carpool_graph_read(path.as_ptr(), &mut g), CarpoolStatus::Ok);
        let (mut n, mut m) = (0, 0);
        carpool_graph_counts(g, &mut n, &mut m);
        assert_eq!((n, m), (3, 2));
        carpool_graph_free(g);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn plain_orienter_tracks_discrepancy() {
    unsafe {
        let mut o = ptr::null_mut();
        assert_eq!(
            carpool_orienter_new(3, 0.1, CarpoolEngine::Greedy, 0.0, 7, &mut o),
            CarpoolStatus::Ok
        );
        let mut disc = [0i64; 3];
        let (mut ok, mut tail, mut head) = (false, 0, 0);
        for i in 0..999usize {
            let (u, v) = (i % 3, (i + 1) % 3);
            assert_eq!(
                carpool_orienter_step(o, u, v, &mut ok, &mut tail, &mut head),
                CarpoolStatus::Ok
            );
            assert!(ok);
            assert!((tail, head) == (u, v) || (tail, head) == (v, u));
            disc[head] += 1;
            disc[tail] -= 1;
        }
        let mut buf = [0i64; 3];
        assert_eq!(carpool_orienter_disc(o, buf.as_mut_ptr(), 3), CarpoolStatus::Ok);
        assert_eq!(buf, disc);
        assert_eq!(
            carpool_orienter_disc(o, buf.as_mut_ptr(), 2),
            CarpoolStatus::InvalidArgument
        );
        let (mut max, mut steps) = (0u64, 0u64);
        carpool_orienter_status(o, &mut max, &mut steps);
        assert_eq!(steps, 999);
        assert_eq!(max, disc.iter().map(|d| d.unsigned_abs()).max().unwrap());
        assert!(max <= 2);
        let mut lp = 0.0;
        carpool_orienter_log_potential(o, &mut lp);
        let direct: f64 = disc.iter().map(|&d| (0.1 * d as f64).cosh()).sum();
        assert!((lp - direct.ln()).abs() < 1e-9);
        assert_eq!(
            carpool_orienter_step_edge(o, 0, &mut tail, &mut head),
            CarpoolStatus::InvalidArgument
        );
        carpool_orienter_free(o);
    }
}

#[test]
fn one_plus_beta_skips_loops() {
    unsafe {
        let mut o = ptr::null_mut();
        carpool_orienter_new(2, 0.1, CarpoolEngine::OnePlusBeta, 0.5, 1, &mut o);
        let (mut ok, mut tail, mut head) = (true, 9, 9);
        assert_eq!(
            carpool_orienter_step(o, 1, 1, &mut ok, &mut tail, &mut head),
            CarpoolStatus::Ok
        );
        assert!(!ok);
        assert_eq!((tail, head), (9, 9));
        assert_eq!(
            carpool_orienter_step(o, 0, 4, &mut ok, &mut tail, &mut head),
            CarpoolStatus::OutOfRange
        );
        carpool_orienter_free(o);
    }
}

#[test]
fn decomposition_and_composed_orienter() {
    unsafe {
        let edges = barbell(6);
        let g = graph(12, &edges);
        let mut d = ptr::null_mut();
        assert_eq!(carpool_decompose(g, 0.0, &mut d), CarpoolStatus::Ok);
        let (mut parts, mut rounds, mut memb) = (0, 0, 0);
        carpool_decomposition_summary(d, &mut parts, &mut rounds, &mut memb);
        assert!(parts >= 1 && rounds >= 1 && memb >= 1);
        for e in 0..edges.len() {
            let mut p = usize::MAX;
            assert_eq!(carpool_decomposition_route(d, e, &mut p), CarpoolStatus::Ok);
            assert!(p < parts);
        }
        let mut p = 0;
        assert_eq!(
            carpool_decomposition_route(d, edges.len(), &mut p),
            CarpoolStatus::OutOfRange
        );

        let mut json = ptr::null_mut();
        assert_eq!(carpool_decomposition_to_json(d, &mut json), CarpoolStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        carpool_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["parts"].as_array().unwrap().len(), parts);

        let mut o = ptr::null_mut();
        assert_eq!(carpool_orienter_new_composed(d, 0.1, 3, &mut o), CarpoolStatus::Ok);
        let mut disc = vec![0i64; 12];
        let (mut tail, mut head) = (0, 0);
        for i in 0..2000 {
            let e = (i * 7) % edges.len();
            assert_eq!(
                carpool_orienter_step_edge(o, e, &mut tail, &mut head),
                CarpoolStatus::Ok
            );
            let (u, v) = edges[e];
            assert!((tail, head) == (u, v) || (tail, head) == (v, u));
            disc[head] += 1;
            disc[tail] -= 1;
        }
        let mut buf = vec![0i64; 12];
        carpool_orienter_disc(o, buf.as_mut_ptr(), buf.len());
        assert_eq!(buf, disc);
        let mut ok = false;
        assert_eq!(
            carpool_orienter_step(o, 0, 1, &mut ok, &mut tail, &mut head),
            CarpoolStatus::InvalidArgument
        );
        carpool_orienter_free(o);
        carpool_decomposition_free(d);
        carpool_graph_free(g);
    }
}

#[test]
fn simulate_is_deterministic_per_seed() {
    unsafe {
        let g = graph(8, &complete(8));
        for algo in [
            CarpoolAlgorithm::Greedy,
            CarpoolAlgorithm::Random,
            CarpoolAlgorithm::OnePlusBeta,
            CarpoolAlgorithm::Composed,
        ] {
            let (mut a, mut b) = (0u64, 0u64);
            assert_eq!(
                carpool_simulate(g, algo, 2000, 5, 0.0, 0.0, 0.0, &mut a),
                CarpoolStatus::Ok
            );
            carpool_simulate(g, algo, 2000, 5, 0.0, 0.0, 0.0, &mut b);
            assert_eq!(a, b);
            assert!(a >= 1);
        }
        carpool_graph_free(g);
    }
}

#[test]
fn header_declares_every_export() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/carpool.h");
    let text = std::fs::read_to_string(&header).unwrap();
    let src = include_str!("../src/lib.rs");
    for line in src.lines() {
        if let Some(rest) = line.split("extern \"C\" fn ").nth(1) {
            let name = rest.split('(').next().unwrap();
            assert!(text.contains(&format!("{name}(")), "{name} missing from header");
        }
    }
    // compile the header as C when a compiler is around
    if Command::new("cc").arg("--version").output().is_ok() {
        let dir = std::env::temp_dir().join(format!("carpool-h-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let c = dir.join("use.c");
        std::fs::write(
            &c,
            "#include \"carpool.h\"\nint main(void) {\n  CarpoolGraph *g = NULL;\n  \
             size_t e[2] = {0, 1};\n  if (carpool_graph_new(2, e, 1, &g) != CARPOOL_STATUS_OK) return 1;\n  \
             carpool_graph_free(g);\n  return 0;\n}\n",
        )
        .unwrap();
        let out = Command::new("cc")
            .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
            .arg(header.parent().unwrap())
            .arg(&c)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
