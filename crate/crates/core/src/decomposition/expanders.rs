//! Recursive sparse-cut splitting of a uniformly-dense graph into expanders.
//!
//! Pieces are processed in FIFO order. A piece with no cut of conductance
//! below `alpha` is emitted; otherwise it is split along the cut and every
//! vertex receives one self-loop per edge it loses, so its degree inside its
//! new piece equals its degree in the input.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::peel::UNIFORM_DENSITY_FACTOR;
use super::Subgraph;
use crate::error::{Error, Result};
use crate::graph::{
    component_cut, conductance_exact, is_uniformly_dense, is_weakly_regular, spectral_sweep, Cut,
    Graph, EXACT_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMethod {
    /// Minimum conductance computed by enumerating all cuts.
    Exact,
    /// Spectral sweep found no cut below the target; the true minimum may be lower.
    SweepCertified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgraphCertificate {
    pub alpha_claimed: f64,
    pub gamma_claimed: f64,
    pub method: CertificateMethod,
    /// Uniform-density factor guaranteed for the peeled component this part came from.
    pub uniform_density_alpha: f64,
    /// Exact minimum conductance, or the best sweep cut found (an upper bound).
    pub conductance: f64,
    /// `None` for exact certificates.
    pub eigensolver_converged: Option<bool>,
    /// `is_weakly_regular(gamma_claimed)` evaluated at emission.
    pub weakly_regular: bool,
}

/// Outcome of one sparse-cut search.
#[derive(Debug, Clone, PartialEq)]
pub struct CutSearch {
    pub cut: Option<Cut>,
    pub method: CertificateMethod,
    pub best_conductance: f64,
    pub converged: Option<bool>,
}

/// A cut of conductance below `alpha`, if the chosen method finds one.
///
/// Exact enumeration up to [`EXACT_LIMIT`] vertices, spectral sweep above.
/// Disconnected graphs yield a component cut of conductance 0.
pub fn find_sparse_cut(g: &Graph, alpha: f64) -> Result<Option<Cut>> {
    Ok(search_sparse_cut(g, alpha)?.cut)
}

pub fn search_sparse_cut(g: &Graph, alpha: f64) -> Result<CutSearch> {
    if g.n() < 2 {
        return Ok(CutSearch {
            cut: None,
            method: CertificateMethod::Exact,
            best_conductance: f64::INFINITY,
            converged: None,
        });
    }
    if let Some(cut) = component_cut(g) {
        return Ok(CutSearch {
            best_conductance: 0.0,
            cut: Some(cut),
            method: CertificateMethod::Exact,
            converged: None,
        });
    }
    if g.n() <= EXACT_LIMIT {
        let (value, cut) = conductance_exact(g)?;
        Ok(CutSearch {
            cut: (value < alpha).then_some(cut),
            method: CertificateMethod::Exact,
            best_conductance: value,
            converged: None,
        })
    } else {
        let report = spectral_sweep(g)?;
        let value = report.best.conductance;
        Ok(CutSearch {
            cut: (value < alpha).then_some(report.best),
            method: CertificateMethod::SweepCertified,
            best_conductance: value,
            converged: Some(report.converged),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedPart {
    /// Vertex and edge ids refer to the graph passed to [`decompose_expanders`].
    pub sub: Subgraph,
    pub certificate: SubgraphCertificate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpanderSplit {
    pub parts: Vec<CertifiedPart>,
    /// Input edge indices whose endpoints ended in different parts, ascending.
    pub crossing_edges: Vec<usize>,
}

/// Split a uniformly-dense graph into vertex-disjoint certified expanders.
///
/// Pieces left without edges after splitting own nothing and are dropped.
pub fn decompose_expanders(h: &Graph, alpha: f64) -> Result<ExpanderSplit> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::param("alpha", format!("{alpha} not in (0, 1]")));
    }
    if h.n() == 0 {
        return Ok(ExpanderSplit {
            parts: Vec::new(),
            crossing_edges: Vec::new(),
        });
    }
    if !is_uniformly_dense(h, UNIFORM_DENSITY_FACTOR)? {
        return Err(Error::Precondition(format!(
            "input is not {UNIFORM_DENSITY_FACTOR}-uniformly-dense (n={}, m={}, min degree {}, average {:.3})",
            h.n(),
            h.m(),
            h.min_degree(),
            h.average_degree()
        )));
    }

    let mut queue = VecDeque::new();
    queue.push_back(Subgraph {
        vertices: (0..h.n()).collect(),
        graph: h.clone(),
        edges: (0..h.m()).collect(),
    });
    let mut parts = Vec::new();
    let mut crossing_edges = Vec::new();
    while let Some(piece) = queue.pop_front() {
        if piece.graph.m() == 0 {
            continue;
        }
        let search = search_sparse_cut(&piece.graph, alpha)?;
        match search.cut {
            None => {
                let gamma = alpha / 4.0;
                let certificate = SubgraphCertificate {
                    alpha_claimed: alpha,
                    gamma_claimed: gamma,
                    method: search.method,
                    uniform_density_alpha: UNIFORM_DENSITY_FACTOR,
                    conductance: search.best_conductance,
                    eigensolver_converged: search.converged,
                    weakly_regular: is_weakly_regular(&piece.graph, gamma)?,
                };
                parts.push(CertifiedPart {
                    sub: piece,
                    certificate,
                });
            }
            Some(cut) => {
                let (left, right, crossing) = split_piece(&piece, &cut)?;
                crossing_edges.extend(crossing);
                queue.push_back(left);
                queue.push_back(right);
            }
        }
    }
    crossing_edges.sort_unstable();
    Ok(ExpanderSplit {
        parts,
        crossing_edges,
    })
}

/// Split along `cut`, adding one self-loop per lost edge at each endpoint.
fn split_piece(piece: &Subgraph, cut: &Cut) -> Result<(Subgraph, Subgraph, Vec<usize>)> {
    let g = &piece.graph;
    let mut in_s = vec![false; g.n()];
    for &v in &cut.side {
        in_s[v] = true;
    }
    let mut lost = vec![0usize; g.n()];
    let mut crossing = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if in_s[u] != in_s[v] {
            lost[u] += 1;
            lost[v] += 1;
            crossing.push(piece.edges[e]);
        }
    }
    if crossing.len() != cut.crossing {
        return Err(Error::Invariant(format!(
            "cut reports {} crossing edges, found {}",
            cut.crossing,
            crossing.len()
        )));
    }
    let side_s: Vec<usize> = (0..g.n()).filter(|&v| in_s[v]).collect();
    let side_rest: Vec<usize> = (0..g.n()).filter(|&v| !in_s[v]).collect();
    let mut out = Vec::with_capacity(2);
    for side in [side_s, side_rest] {
        let (induced, origin) = g.induced(&side);
        let loops: Vec<usize> = side
            .iter()
            .map(|&v| g.self_loops(v) + lost[v])
            .collect();
        let graph = Graph::with_self_loops(side.len(), induced.edges().to_vec(), loops)?;
        for (local, &v) in side.iter().enumerate() {
            if graph.degree(local) != g.degree(v) {
                return Err(Error::Invariant(format!(
                    "degree of vertex {} changed from {} to {} across a split",
                    piece.vertices[v],
                    g.degree(v),
                    graph.degree(local)
                )));
            }
        }
        out.push(Subgraph {
            vertices: side.iter().map(|&v| piece.vertices[v]).collect(),
            graph,
            edges: origin.iter().map(|&e| piece.edges[e]).collect(),
        });
    }
    let right = out.pop().expect("two sides");
    let left = out.pop().expect("two sides");
    Ok((left, right, crossing))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_sparse_cut_threshold() {
        let k4 = Graph::complete(4);
        assert!(find_sparse_cut(&k4, 0.5).unwrap().is_none());
        let cut = find_sparse_cut(&k4, 0.7).unwrap().unwrap();
        assert_eq!(cut.side.len(), 2);
        assert!((cut.conductance - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn disconnected_gives_component_cut() {
        let g = Graph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let cut = find_sparse_cut(&g, 0.01).unwrap().unwrap();
        assert_eq!(cut.conductance, 0.0);
    }

    #[test]
    fn k8_is_single_part() {
        let split = decompose_expanders(&Graph::complete(8), 0.3).unwrap();
        assert_eq!(split.parts.len(), 1);
        assert!(split.crossing_edges.is_empty());
        let c = &split.parts[0].certificate;
        assert_eq!(c.method, CertificateMethod::Exact);
        assert!((c.conductance - 4.0 / 7.0).abs() < 1e-15);
        assert!(c.weakly_regular);
    }

    #[test]
    fn barbell_splits_at_bridge_with_loops() {
        let g = Graph::barbell(8);
        let split = decompose_expanders(&g, 0.3).unwrap();
        assert_eq!(split.parts.len(), 2);
        let bridge = g.m() - 1;
        assert_eq!(split.crossing_edges, vec![bridge]);
        for part in &split.parts {
            assert_eq!(part.sub.vertices.len(), 8);
            assert_eq!(part.sub.graph.m(), 28);
            assert_eq!(part.sub.graph.total_self_loops(), 1);
            for (local, &v) in part.sub.vertices.iter().enumerate() {
                assert_eq!(part.sub.graph.degree(local), g.degree(v));
                let expected = usize::from(v == 7 || v == 8);
                assert_eq!(part.sub.graph.self_loops(local), expected);
            }
        }
    }

    #[test]
    fn single_edge_is_one_part() {
        let split = decompose_expanders(&Graph::path(2), 0.3).unwrap();
        assert_eq!(split.parts.len(), 1);
        assert!(split.crossing_edges.is_empty());
    }

    #[test]
    fn rejects_non_uniformly_dense_input() {
        // K_8 plus a pendant vertex: min degree 1 against average ~6.4
        let mut edges = Graph::complete(8).edges().to_vec();
        edges.push((7, 8));
        let g = Graph::new(9, edges).unwrap();
        assert!(matches!(
            decompose_expanders(&g, 0.3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rejects_bad_alpha() {
        assert!(decompose_expanders(&Graph::complete(3), 0.0).is_err());
        assert!(decompose_expanders(&Graph::complete(3), 1.5).is_err());
    }

    #[test]
    fn crossing_bound_and_degrees_on_cycles_of_cliques() {
        // ring of four K_5 joined by single edges
        let mut edges = Vec::new();
        for c in 0..4 {
            for u in 0..5 {
                for v in u + 1..5 {
                    edges.push((5 * c + u, 5 * c + v));
                }
            }
            edges.push((5 * c + 4, (5 * c + 5) % 20));
        }
        let g = Graph::new(20, edges).unwrap();
        let alpha = 0.1;
        let split = decompose_expanders(&g, alpha).unwrap();
        assert_eq!(split.parts.len(), 4);
        assert_eq!(split.crossing_edges.len(), 4);
        let bound = 2.0 * alpha * (g.n() as f64).log2() * g.m() as f64;
        assert!((split.crossing_edges.len() as f64) <= bound);
        for part in &split.parts {
            assert!(part.certificate.conductance >= alpha);
            for (local, &v) in part.sub.vertices.iter().enumerate() {
                assert_eq!(part.sub.graph.degree(local), g.degree(v));
            }
        }
    }
}
