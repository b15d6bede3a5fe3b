//! Online edge orientation ("carpooling") under stochastic arrivals.
//!
//! Edges of a fixed graph arrive one at a time, each drawn independently and
//! uniformly; each must be oriented on arrival so that every vertex's
//! in-degree minus out-degree stays small. The crate provides
//!
//! * [`graph`]: multigraphs with self-loop bookkeeping, cuts, conductance
//!   (exact and spectral sweep), weak regularity and uniform density;
//! * [`decomposition`]: density peeling and recursive sparse-cut splitting
//!   into an edge-disjoint cover by weakly-regular expanders;
//! * [`orientation`]: greedy, random, (1+β) and composed online engines,
//!   the cosh potential, an offline Euler-tour oracle and majorization;
//! * [`arrivals`]: seeded uniform-edge and product-distribution streams;
//! * [`harness`]: experiment runner, exact prefix-inequality check, drift
//!   estimator, and CSV/JSON output.

pub mod arrivals;
pub mod constants;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod harness;
pub mod orientation;

pub use error::{Error, Result};
pub use graph::{cut_stats, Cut, Graph};
