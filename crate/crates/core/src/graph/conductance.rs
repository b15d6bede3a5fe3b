use super::{component_cut, Cut, Graph, EXACT_LIMIT};
use crate::error::{Error, Result};

/// Minimum conductance over all proper cuts, by enumeration, with a minimizing cut.
///
/// Disconnected graphs have conductance 0 and a component as witness.
pub fn conductance_exact(g: &Graph) -> Result<(f64, Cut)> {
    conductance_exact_with_limit(g, EXACT_LIMIT)
}

pub fn conductance_exact_with_limit(g: &Graph, limit: usize) -> Result<(f64, Cut)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "conductance needs at least 2 vertices, got {n}"
        )));
    }
    if n > limit || n > 31 {
        return Err(Error::TooLargeForExact { n, limit });
    }
    if let Some(cut) = component_cut(g) {
        return Ok((0.0, cut));
    }

    // Vertex n-1 stays outside S, so each unordered cut is visited once.
    // Gray-code order flips one vertex per step.
    let free = n - 1;
    let total_vol = g.total_volume() as u64;
    let mut mask: u32 = 0;
    let mut crossing: u64 = 0;
    let mut vol_s: u64 = 0;
    // best as the fraction best_num / best_den
    let mut best: Option<(u64, u64, u32)> = None;
    for step in 1u64..(1u64 << free) {
        let v = step.trailing_zeros() as usize;
        let bit = 1u32 << v;
        let mut to_s: u64 = 0;
        for &(w, _) in g.neighbors(v) {
            if mask & (1 << w) != 0 {
                to_s += 1;
            }
        }
        let to_rest = g.edge_degree(v) as u64 - to_s;
        if mask & bit == 0 {
            crossing = crossing + to_rest - to_s;
            vol_s += g.degree(v) as u64;
        } else {
            crossing = crossing + to_s - to_rest;
            vol_s -= g.degree(v) as u64;
        }
        mask ^= bit;
        let den = vol_s.min(total_vol - vol_s);
        let better = match best {
            None => true,
            Some((bn, bd, _)) => crossing * bd < bn * den,
        };
        if better {
            best = Some((crossing, den, mask));
        }
    }
    let (_, _, best_mask) = best.expect("n >= 2 gives at least one cut");
    let membership: Vec<bool> = (0..n).map(|v| best_mask & (1 << v) != 0).collect();
    let cut = g.cut_from_mask(&membership);
    Ok((cut.conductance, cut))
}
