//! Edge-disjoint decomposition of a graph into weakly-regular expanders.
//!
//! Each round peels the residual edges into uniformly-dense components,
//! splits every component into certified expanders, and hands the edges cut
//! during splitting to the next round. The process ends when no edges remain.

mod expanders;
mod peel;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use crate::graph::check_no_dense_subgraph;
pub use expanders::{
    decompose_expanders, find_sparse_cut, search_sparse_cut, CertificateMethod, CertifiedPart,
    CutSearch, ExpanderSplit, SubgraphCertificate,
};
pub use peel::{peel_thresholds, peel_uniformly_dense, PeeledComponent, UNIFORM_DENSITY_FACTOR};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A subgraph together with its maps back to the graph it was taken from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subgraph {
    /// Local vertex id -> parent vertex id.
    pub vertices: Vec<usize>,
    /// Local graph, possibly with self-loops.
    #[serde(skip, default = "empty_graph")]
    pub graph: Graph,
    /// Local edge index -> parent edge index.
    pub edges: Vec<usize>,
}

fn empty_graph() -> Graph {
    Graph::new(0, Vec::new()).expect("empty graph")
}

/// `1 / (4 * ceil(log2 n))`, small enough that each round cuts at most half the edges.
pub fn default_alpha(n: usize) -> f64 {
    let levels = (n.max(2) as f64).log2().ceil();
    1.0 / (4.0 * levels)
}

/// `ceil(log2 m) + 1`.
pub fn round_cap(m: usize) -> usize {
    if m <= 1 {
        1
    } else {
        (m as f64).log2().ceil() as usize + 1
    }
}

/// Bound on per-vertex membership checked by the test suite: `4 (log2 n)^2`.
pub fn membership_bound(n: usize) -> f64 {
    let l = (n.max(2) as f64).log2();
    4.0 * l * l
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Part {
    pub sub: Subgraph,
    pub certificate: SubgraphCertificate,
    /// 1-based round in which the part was produced.
    pub round: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundStats {
    pub round: usize,
    pub residual_edges: usize,
    pub components: usize,
    pub parts: usize,
    pub crossing: usize,
    /// `2 alpha log2(n) m_round`
    pub crossing_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
    pub parts: Vec<Part>,
    /// Parent edge -> owning part.
    pub router: Vec<usize>,
    /// Parent edge -> local edge index inside its part.
    pub slots: Vec<usize>,
    /// Parent vertex -> number of parts containing it.
    pub membership: Vec<usize>,
    pub rounds: usize,
    pub round_stats: Vec<RoundStats>,
    /// Certificate or bound failures observed while building; empty when all checks pass.
    pub violations: Vec<String>,
}

impl Decomposition {
    /// Owning part and local edge index of a parent edge.
    pub fn route(&self, edge: usize) -> Result<(usize, usize)> {
        match self.router.get(edge) {
            Some(&p) => Ok((p, self.slots[edge])),
            None => Err(Error::UnroutedEdge(edge)),
        }
    }

    pub fn membership_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for &c in &self.membership {
            *hist.entry(c).or_insert(0) += 1;
        }
        hist
    }

    pub fn max_membership(&self) -> usize {
        self.membership.iter().copied().max().unwrap_or(0)
    }

    fn assemble(
        g: &Graph,
        alpha: f64,
        parts: Vec<Part>,
        rounds: usize,
        round_stats: Vec<RoundStats>,
        mut violations: Vec<String>,
    ) -> Result<Self> {
        let mut router = vec![usize::MAX; g.m()];
        let mut slots = vec![usize::MAX; g.m()];
        let mut membership = vec![0; g.n()];
        for (p, part) in parts.iter().enumerate() {
            for (local, &e) in part.sub.edges.iter().enumerate() {
                if router[e] != usize::MAX {
                    return Err(Error::Invariant(format!(
                        "edge {e} assigned to parts {} and {p}",
                        router[e]
                    )));
                }
                let (a, b) = part.sub.graph.edge(local);
                let ends = (part.sub.vertices[a], part.sub.vertices[b]);
                if ends != g.edge(e) {
                    return Err(Error::Invariant(format!(
                        "edge {e} maps to {ends:?} in part {p}, expected {:?}",
                        g.edge(e)
                    )));
                }
                router[e] = p;
                slots[e] = local;
            }
            for &v in &part.sub.vertices {
                membership[v] += 1;
            }
        }
        if let Some(e) = router.iter().position(|&p| p == usize::MAX) {
            return Err(Error::Invariant(format!("edge {e} is in no part")));
        }
        let bound = membership_bound(g.n());
        let worst = membership.iter().copied().max().unwrap_or(0);
        if worst as f64 > bound {
            violations.push(format!(
                "membership {worst} exceeds 4 log2(n)^2 = {bound:.1}"
            ));
        }
        Ok(Decomposition {
            n: g.n(),
            m: g.m(),
            alpha,
            parts,
            router,
            slots,
            membership,
            rounds,
            round_stats,
            violations,
        })
    }
}

/// Decompose `g` into an edge-disjoint cover by certified expanders.
///
/// `alpha = None` uses [`default_alpha`]. Fails if `g` has self-loops or if
/// the number of rounds exceeds [`round_cap`].
pub fn full_decomposition(g: &Graph, alpha: Option<f64>) -> Result<Decomposition> {
    if g.total_self_loops() > 0 {
        return Err(Error::Precondition(
            "decomposition input must not carry self-loops".into(),
        ));
    }
    let alpha = alpha.unwrap_or_else(|| default_alpha(g.n()));
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::param("alpha", format!("{alpha} not in (0, 1]")));
    }
    let cap = round_cap(g.m());
    let log_n = (g.n().max(2) as f64).log2();
    let mut residual: Vec<usize> = (0..g.m()).collect();
    let mut parts = Vec::new();
    let mut stats = Vec::new();
    let mut violations = Vec::new();
    let mut round = 0;
    while !residual.is_empty() {
        round += 1;
        if round > cap {
            return Err(Error::Invariant(format!(
                "round {round} exceeds cap {cap} with {} residual edges; crossing edges did not halve",
                residual.len()
            )));
        }
        let rg = g.edge_subgraph(&residual);
        let components = peel_uniformly_dense(&rg)?;
        let splits: Vec<Result<ExpanderSplit>> = components
            .par_iter()
            .map(|c| decompose_expanders(&c.sub.graph, alpha))
            .collect();

        let mut crossing = Vec::new();
        let mut round_parts = 0;
        for (component, split) in components.iter().zip(splits) {
            let split = split?;
            // component ids -> residual-graph ids -> parent ids
            let to_parent_edge = |e: usize| residual[component.sub.edges[e]];
            for cp in split.parts {
                if !cp.certificate.weakly_regular {
                    violations.push(format!(
                        "round {round}: part on {} vertices is not {}-weakly-regular",
                        cp.sub.vertices.len(),
                        cp.certificate.gamma_claimed
                    ));
                }
                let sub = Subgraph {
                    vertices: cp
                        .sub
                        .vertices
                        .iter()
                        .map(|&v| component.sub.vertices[v])
                        .collect(),
                    edges: cp.sub.edges.iter().map(|&e| to_parent_edge(e)).collect(),
                    graph: cp.sub.graph,
                };
                parts.push(Part {
                    sub,
                    certificate: cp.certificate,
                    round,
                });
                round_parts += 1;
            }
            crossing.extend(split.crossing_edges.iter().map(|&e| to_parent_edge(e)));
        }
        crossing.sort_unstable();

        let bound = 2.0 * alpha * log_n * residual.len() as f64;
        if crossing.len() as f64 > bound {
            violations.push(format!(
                "round {round}: {} crossing edges exceed 2 alpha log2(n) m = {bound:.2}",
                crossing.len()
            ));
        }
        stats.push(RoundStats {
            round,
            residual_edges: residual.len(),
            components: components.len(),
            parts: round_parts,
            crossing: crossing.len(),
            crossing_bound: bound,
        });
        residual = crossing;
    }
    Decomposition::assemble(g, alpha, parts, round, stats, violations)
}

/// JSON form of a decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
    pub rounds: usize,
    pub parts: Vec<PartReport>,
    pub membership: Vec<usize>,
    pub membership_histogram: BTreeMap<usize, usize>,
    pub round_stats: Vec<RoundStats>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartReport {
    /// Parent vertex ids.
    pub vertices: Vec<usize>,
    /// Parent edge indices.
    pub edges: Vec<usize>,
    /// Self-loop count per listed vertex.
    pub self_loops: Vec<usize>,
    pub round: usize,
    pub certificate: SubgraphCertificate,
}

impl Decomposition {
    pub fn to_report(&self) -> DecompositionReport {
        DecompositionReport {
            n: self.n,
            m: self.m,
            alpha: self.alpha,
            rounds: self.rounds,
            parts: self
                .parts
                .iter()
                .map(|p| PartReport {
                    vertices: p.sub.vertices.clone(),
                    edges: p.sub.edges.clone(),
                    self_loops: p.sub.graph.self_loop_counts().to_vec(),
                    round: p.round,
                    certificate: p.certificate.clone(),
                })
                .collect(),
            membership: self.membership.clone(),
            membership_histogram: self.membership_histogram(),
            round_stats: self.round_stats.clone(),
            violations: self.violations.clone(),
        }
    }

    /// Rebuild a decomposition of `g` from its report.
    pub fn from_report(report: &DecompositionReport, g: &Graph) -> Result<Self> {
        if report.n != g.n() || report.m != g.m() {
            return Err(Error::Precondition(format!(
                "report is for n={}, m={}, graph has n={}, m={}",
                report.n,
                report.m,
                g.n(),
                g.m()
            )));
        }
        let mut parts = Vec::with_capacity(report.parts.len());
        for pr in &report.parts {
            if pr.self_loops.len() != pr.vertices.len() {
                return Err(Error::LengthMismatch {
                    left: pr.self_loops.len(),
                    right: pr.vertices.len(),
                });
            }
            let mut local = std::collections::HashMap::with_capacity(pr.vertices.len());
            for (i, &v) in pr.vertices.iter().enumerate() {
                if v >= g.n() {
                    return Err(Error::VertexOutOfRange { index: v, n: g.n() });
                }
                local.insert(v, i);
            }
            let mut edges = Vec::with_capacity(pr.edges.len());
            for &e in &pr.edges {
                if e >= g.m() {
                    return Err(Error::UnroutedEdge(e));
                }
                let (a, b) = g.edge(e);
                match (local.get(&a), local.get(&b)) {
                    (Some(&x), Some(&y)) => edges.push((x, y)),
                    _ => {
                        return Err(Error::Invariant(format!(
                            "edge {e} has an endpoint outside its part"
                        )))
                    }
                }
            }
            let graph = Graph::with_self_loops(pr.vertices.len(), edges, pr.self_loops.clone())?;
            parts.push(Part {
                sub: Subgraph {
                    vertices: pr.vertices.clone(),
                    graph,
                    edges: pr.edges.clone(),
                },
                certificate: pr.certificate.clone(),
                round: pr.round,
            });
        }
        Decomposition::assemble(
            g,
            report.alpha,
            parts,
            report.rounds,
            report.round_stats.clone(),
            report.violations.clone(),
        )
    }
}
