//! Cut norm between two step kernels on the same equipartition, with the
//! cells aligned as given (no relabelling is searched).

use crate::error::{Error, Result};
use crate::marginal::MarginalKernel;

/// Largest partition size accepted by the exhaustive search.
pub const MAX_CUT_NORM_N: usize = 22;

/// `max_{S,T} |Σ_{i∈S, j∈T} (A_ij - B_ij)| / n²`.
///
/// Every row subset `S` is visited in Gray-code order; for a fixed `S` the
/// best `T` takes either all columns with positive or all with negative
/// partial sums, so the maximum over `T` is exact.
pub fn step_cut_norm(a: &MarginalKernel, b: &MarginalKernel) -> Result<f64> {
    let (a, b) = match (a.as_step(), b.as_step()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::CutNormNeedsStep),
    };
    if a.n() != b.n() {
        return Err(Error::PartitionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    if n > MAX_CUT_NORM_N {
        return Err(Error::CutNormTooLarge {
            n,
            max: MAX_CUT_NORM_N,
        });
    }
    let diff: Vec<f64> = a
        .values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| x - y)
        .collect();

    let mut col = vec![0.0f64; n];
    let mut in_s = vec![false; n];
    let mut best = 0.0f64;
    for step in 1u64..(1u64 << n) {
        let row = step.trailing_zeros() as usize;
        let sign = if in_s[row] { -1.0 } else { 1.0 };
        in_s[row] = !in_s[row];
        for (c, d) in col.iter_mut().zip(&diff[row * n..(row + 1) * n]) {
            *c += sign * d;
        }
        let (pos, neg) = col.iter().fold(
            (0.0, 0.0),
            |(p, q), &c| {
                if c > 0.0 {
                    (p + c, q)
                } else {
                    (p, q - c)
                }
            },
        );
        best = best.max(pos).max(neg);
    }
    Ok(best / (n * n) as f64)
}
