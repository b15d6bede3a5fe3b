use rand::Rng;

use super::{OrientationState, OrientedEdge};
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};

/// Greedy orientation run independently inside every part of a decomposition.
///
/// Each arriving parent edge is oriented greedily against the discrepancies
/// of its own part only. The global state sums the per-part states.
#[derive(Debug, Clone)]
pub struct ComposedOrienter {
    parts: Vec<OrientationState>,
    global: OrientationState,
    // parent edge -> (part, local u, local v, parent u, parent v)
    routes: Vec<(usize, usize, usize, usize, usize)>,
    // part -> local vertex -> parent vertex
    vertex_maps: Vec<Vec<usize>>,
}

impl ComposedOrienter {
    pub fn new(decomposition: &Decomposition, lambda: f64) -> Result<Self> {
        let parts = decomposition
            .parts
            .iter()
            .map(|p| OrientationState::new(p.sub.vertices.len(), lambda))
            .collect::<Result<Vec<_>>>()?;
        let mut routes = Vec::with_capacity(decomposition.m);
        for e in 0..decomposition.m {
            let (p, slot) = decomposition.route(e)?;
            let sub = &decomposition.parts[p].sub;
            let (a, b) = sub.graph.edge(slot);
            routes.push((p, a, b, sub.vertices[a], sub.vertices[b]));
        }
        Ok(ComposedOrienter {
            parts,
            global: OrientationState::new(decomposition.n, lambda)?,
            routes,
            vertex_maps: decomposition
                .parts
                .iter()
                .map(|p| p.sub.vertices.clone())
                .collect(),
        })
    }

    /// Orient parent edge `edge` greedily within its part.
    pub fn step<R: Rng + ?Sized>(&mut self, edge: usize, rng: &mut R) -> Result<OrientedEdge> {
        let &(p, a, b, _, _) = self.routes.get(edge).ok_or(Error::UnroutedEdge(edge))?;
        let local = self.parts[p].greedy_step(a, b, rng)?;
        let map = &self.vertex_maps[p];
        self.global.orient(map[local.tail], map[local.head])
    }

    pub fn global(&self) -> &OrientationState {
        &self.global
    }

    pub fn part_states(&self) -> &[OrientationState] {
        &self.parts
    }

    /// `Σ_parts disc_part(v)` for each parent vertex.
    pub fn summed_part_disc(&self) -> Vec<i64> {
        let mut out = vec![0; self.global.n()];
        for (state, map) in self.parts.iter().zip(&self.vertex_maps) {
            for (local, &d) in state.disc().iter().enumerate() {
                out[map[local]] += d;
            }
        }
        out
    }

    /// Parent endpoints of `edge` as listed in the parent graph.
    pub fn endpoints(&self, edge: usize) -> Option<(usize, usize)> {
        self.routes.get(edge).map(|r| (r.3, r.4))
    }
}
