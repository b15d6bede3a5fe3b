use crate::error::{Error, Result};

/// Whether `a` majorizes `b`: after sorting both in descending order, every
/// prefix sum of `a` is at least the matching prefix sum of `b`.
pub fn majorizes(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let desc = |x: &[f64]| {
        let mut s = x.to_vec();
        s.sort_by(|p, q| q.total_cmp(p));
        s
    };
    let (sa, sb) = (desc(a), desc(b));
    let (mut pa, mut pb) = (0.0, 0.0);
    for (x, y) in sa.iter().zip(&sb) {
        pa += x;
        pb += y;
        if pa < pb {
            return Ok(false);
        }
    }
    Ok(true)
}
