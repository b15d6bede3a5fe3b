//! C ABI over the carpool library.
//!
//! Every object crosses the boundary as an opaque handle created by a
//! `*_new`/builder function and released by the matching `*_free`. Every
//! fallible call returns a [`CarpoolStatus`]; on failure a message is kept per
//! thread and can be fetched with [`carpool_last_error_message`]. Panics never
//! unwind into C: they are caught and reported as `CARPOOL_STATUS_PANIC`.
//! Strings returned by this library must be released with [`carpool_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use carpool::arrivals::coin_rng;
use carpool::decomposition::{full_decomposition, Decomposition};
use carpool::graph::{conductance_exact, read_edge_list};
use carpool::harness::{run_experiment, Algorithm, ExperimentConfig, Param};
use carpool::orientation::{ComposedOrienter, Engine, OrientationState};
use carpool::{Error, Graph};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarpoolStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Precondition = 4,
    Invariant = 5,
    Io = 6,
    Parse = 7,
    Overflow = 8,
    Panic = 9,
}

/// Online rule used by a plain orienter.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarpoolEngine {
    Greedy = 0,
    Random = 1,
    OnePlusBeta = 2,
}

/// Algorithm run by [`carpool_simulate`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarpoolAlgorithm {
    Greedy = 0,
    Random = 1,
    OnePlusBeta = 2,
    Composed = 3,
}

/// Immutable multigraph.
pub struct CarpoolGraph(Graph);

/// Expander decomposition of a graph.
pub struct CarpoolDecomposition(Decomposition);

enum Inner {
    Plain {
        state: OrientationState,
        engine: Engine,
    },
    Composed(Box<ComposedOrienter>),
}

/// Online orientation state with its own coin stream.
pub struct CarpoolOrienter {
    inner: Inner,
    coins: rand_chacha::ChaCha8Rng,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CarpoolStatus {
    match e {
        Error::VertexOutOfRange { .. } | Error::UnroutedEdge(_) => CarpoolStatus::OutOfRange,
        Error::SelfLoopEdge { .. }
        | Error::InvalidCut(_)
        | Error::InvalidParameter { .. }
        | Error::LengthMismatch { .. }
        | Error::TooLargeForExact { .. }
        | Error::EmptyGraph(_) => CarpoolStatus::InvalidArgument,
        Error::Precondition(_) => CarpoolStatus::Precondition,
        Error::Invariant(_) => CarpoolStatus::Invariant,
        Error::PotentialOverflow(_) => CarpoolStatus::Overflow,
        Error::Io { .. } => CarpoolStatus::Io,
        Error::Parse { .. } | Error::Json(_) => CarpoolStatus::Parse,
    }
}

struct Fail(CarpoolStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(CarpoolStatus::NullPointer, format!("{what} is null"))
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> CarpoolStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CarpoolStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            CarpoolStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Copy of the calling thread's last error message, or NULL if there is none.
/// Release with [`carpool_string_free`].
#[no_mangle]
pub extern "C" fn carpool_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn carpool_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a graph on `n` vertices from `edge_count` pairs stored flat in
/// `endpoints` (`2 * edge_count` entries).
#[no_mangle]
pub unsafe extern "C" fn carpool_graph_new(
    n: usize,
    endpoints: *const usize,
    edge_count: usize,
    out: *mut *mut CarpoolGraph,
) -> CarpoolStatus {
    guard(|| {
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if endpoints.is_null() {
            return Err(null("endpoints"));
        } else {
            std::slice::from_raw_parts(endpoints, 2 * edge_count)
        };
        let edges = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let g = Graph::new(n, edges)?;
        write_out(out, Box::into_raw(Box::new(CarpoolGraph(g))))
    })
}

/// Read a graph from an edge-list file.
#[no_mangle]
pub unsafe extern "C" fn carpool_graph_read(
    path: *const c_char,
    out: *mut *mut CarpoolGraph,
) -> CarpoolStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|e| Fail(CarpoolStatus::InvalidArgument, e.to_string()))?;
        let g = read_edge_list(path)?;
        write_out(out, Box::into_raw(Box::new(CarpoolGraph(g))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn carpool_graph_free(g: *mut CarpoolGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub unsafe extern "C" fn carpool_graph_counts(
    g: *const CarpoolGraph,
    n: *mut usize,
    m: *mut usize,
) -> CarpoolStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        write_out(n, g.n())?;
        write_out(m, g.m())
    })
}

/// Minimum conductance by exhaustive search (at most 20 vertices).
#[no_mangle]
pub unsafe extern "C" fn carpool_graph_conductance_exact(
    g: *const CarpoolGraph,
    out: *mut f64,
) -> CarpoolStatus {
    guard(|| {
        let (value, _) = conductance_exact(&deref(g, "graph")?.0)?;
        write_out(out, value)
    })
}

/// Decompose `g` into expanders. `alpha <= 0` selects the default.
#[no_mangle]
pub unsafe extern "C" fn carpool_decompose(
    g: *const CarpoolGraph,
    alpha: f64,
    out: *mut *mut CarpoolDecomposition,
) -> CarpoolStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        let d = full_decomposition(g, (alpha > 0.0).then_some(alpha))?;
        write_out(out, Box::into_raw(Box::new(CarpoolDecomposition(d))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn carpool_decomposition_free(d: *mut CarpoolDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of parts, number of rounds, and the largest per-vertex membership.
#[no_mangle]
pub unsafe extern "C" fn carpool_decomposition_summary(
    d: *const CarpoolDecomposition,
    parts: *mut usize,
    rounds: *mut usize,
    max_membership: *mut usize,
) -> CarpoolStatus {
    guard(|| {
        let d = &deref(d, "decomposition")?.0;
        write_out(parts, d.parts.len())?;
        write_out(rounds, d.rounds)?;
        write_out(max_membership, d.max_membership())
    })
}

/// Part owning parent edge `edge`.
#[no_mangle]
pub unsafe extern "C" fn carpool_decomposition_route(
    d: *const CarpoolDecomposition,
    edge: usize,
    part: *mut usize,
) -> CarpoolStatus {
    guard(|| {
        let (p, _) = deref(d, "decomposition")?.0.route(edge)?;
        write_out(part, p)
    })
}

/// JSON report of the decomposition. Release with [`carpool_string_free`].
#[no_mangle]
pub unsafe extern "C" fn carpool_decomposition_to_json(
    d: *const CarpoolDecomposition,
    out: *mut *mut c_char,
) -> CarpoolStatus {
    guard(|| {
        let report = deref(d, "decomposition")?.0.to_report();
        let text = serde_json_string(&report)?;
        write_out(out, to_c_string(text))
    })
}

fn serde_json_string(report: &carpool::decomposition::DecompositionReport) -> Result<String, Fail> {
    serde_json::to_string(report).map_err(|e| Fail::from(Error::from(e)))
}

/// Orienter on `n` vertices. `beta` is used only by `CARPOOL_ENGINE_ONE_PLUS_BETA`.
#[no_mangle]
pub unsafe extern "C" fn carpool_orienter_new(
    n: usize,
    lambda: f64,
    engine: CarpoolEngine,
    beta: f64,
    seed: u64,
    out: *mut *mut CarpoolOrienter,
) -> CarpoolStatus {
    guard(|| {
        let engine = match engine {
            CarpoolEngine::Greedy => Engine::Greedy,
            CarpoolEngine::Random => Engine::Random,
            CarpoolEngine::OnePlusBeta => {
                if !(0.0..=1.0).contains(&beta) {
                    return Err(Fail(
                        CarpoolStatus::InvalidArgument,
                        format!("beta {beta} not in [0, 1]"),
                    ));
                }
                Engine::OnePlusBeta(beta)
            }
        };
        let state = OrientationState::new(n, lambda)?;
        let o = CarpoolOrienter {
            inner: Inner::Plain { state, engine },
            coins: coin_rng(seed),
        };
        write_out(out, Box::into_raw(Box::new(o)))
    })
}

/// Composed orienter running greedy inside every part of `d`.
#[no_mangle]
pub unsafe extern "C" fn carpool_orienter_new_composed(
    d: *const CarpoolDecomposition,
    lambda: f64,
    seed: u64,
    out: *mut *mut CarpoolOrienter,
) -> CarpoolStatus {
    guard(|| {
        let composed = ComposedOrienter::new(&deref(d, "decomposition")?.0, lambda)?;
        let o = CarpoolOrienter {
            inner: Inner::Composed(Box::new(composed)),
            coins: coin_rng(seed),
        };
        write_out(out, Box::into_raw(Box::new(o)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn carpool_orienter_free(o: *mut CarpoolOrienter) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// Process the arrival `(u, v)` on a plain orienter. `*oriented` is 0 when
/// the arrival was a no-op (`u == v` under the (1+β) engine); otherwise the
/// arc is written to `tail` and `head`.
#[no_mangle]
pub unsafe extern "C" fn carpool_orienter_step(
    o: *mut CarpoolOrienter,
    u: usize,
    v: usize,
    oriented: *mut bool,
    tail: *mut usize,
    head: *mut usize,
) -> CarpoolStatus {
    guard(|| {
        let o = deref_mut(o, "orienter")?;
        let Inner::Plain { state, engine } = &mut o.inner else {
            return Err(Fail(
                CarpoolStatus::InvalidArgument,
                "composed orienters take edge indices; use carpool_orienter_step_edge".into(),
            ));
        };
        let arc = engine.step(state, u, v, &mut o.coins)?;
        write_out(oriented, arc.is_some())?;
        if let Some(arc) = arc {
            write_out(tail, arc.tail)?;
            write_out(head, arc.head)?;
        }
        Ok(())
    })
}

/// Process the arrival of parent edge `edge` on a composed orienter.
#[no_mangle]
pub unsafe extern "C" fn carpool_orienter_step_edge(
    o: *mut CarpoolOrienter,
    edge: usize,
    tail: *mut usize,
    head: *mut usize,
) -> CarpoolStatus {
    guard(|| {
        let o = deref_mut(o, "orienter")?;
        let Inner::Composed(c) = &mut o.inner else {
            return Err(Fail(
                CarpoolStatus::InvalidArgument,
                "plain orienters take vertex pairs; use carpool_orienter_step".into(),
            ));
        };
        let arc = c.step(edge, &mut o.coins)?;
        write_out(tail, arc.tail)?;
        write_out(head, arc.head)
    })
}

fn state_of(o: &CarpoolOrienter) -> &OrientationState {
    match &o.inner {
        Inner::Plain { state, .. } => state,
        Inner::Composed(c) => c.global(),
    }
}

/// Current `max |disc|` and the number of processed arrivals.
#[no_mangle]
pub unsafe extern "C" fn carpool_orienter_status(
    o: *const CarpoolOrienter,
    max_disc: *mut u64,
    steps: *mut u64,
) -> CarpoolStatus {
    guard(|| {
        let s = state_of(deref(o, "orienter")?);
        write_out(max_disc, s.max_disc())?;
        write_out(steps, s.step())
    })
}

/// `ln Φ` of the current discrepancies (finite even when `Φ` overflows).
#[no_mangle]
pub unsafe extern "C" fn carpool_orienter_log_potential(
    o: *const CarpoolOrienter,
    out: *mut f64,
) -> CarpoolStatus {
    guard(|| write_out(out, state_of(deref(o, "orienter")?).log_potential()))
}

/// Copy the discrepancy vector into `buf`, which must hold `len >= n` entries.
#[no_mangle]
pub unsafe extern "C" fn carpool_orienter_disc(
    o: *const CarpoolOrienter,
    buf: *mut i64,
    len: usize,
) -> CarpoolStatus {
    guard(|| {
        let disc = state_of(deref(o, "orienter")?).disc();
        if len < disc.len() {
            return Err(Fail(
                CarpoolStatus::InvalidArgument,
                format!("buffer holds {len} entries, need {}", disc.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        std::slice::from_raw_parts_mut(buf, disc.len()).copy_from_slice(disc);
        Ok(())
    })
}

/// Run one seeded experiment of `steps` arrivals and report the maximum
/// discrepancy over all steps. Non-positive `lambda`, `beta` or `alpha`
/// select the automatic values.
#[no_mangle]
pub unsafe extern "C" fn carpool_simulate(
    g: *const CarpoolGraph,
    algorithm: CarpoolAlgorithm,
    steps: u64,
    seed: u64,
    lambda: f64,
    beta: f64,
    alpha: f64,
    max_disc: *mut u64,
) -> CarpoolStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        let algo = match algorithm {
            CarpoolAlgorithm::Greedy => Algorithm::Greedy,
            CarpoolAlgorithm::Random => Algorithm::Random,
            CarpoolAlgorithm::OnePlusBeta => Algorithm::OnePlusBeta,
            CarpoolAlgorithm::Composed => Algorithm::Composed,
        };
        let param = |x: f64| if x > 0.0 { Param::Value(x) } else { Param::Auto };
        let mut cfg = ExperimentConfig::new(algo, steps, vec![seed]);
        cfg.lambda = param(lambda);
        cfg.beta = param(beta);
        cfg.alpha = param(alpha);
        let records = run_experiment(g, &cfg)?;
        write_out(max_disc, records[0].summary.max_disc)
    })
}
