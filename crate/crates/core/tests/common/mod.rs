#![allow(dead_code)]

use complexon::complex::Combinations;
use complexon::{rng, SimplicialComplex, StepComplexon};
use proptest::prelude::*;

/// Complexes on 3..=max_n nodes with up to six facets of 1..=4 vertices.
pub fn arb_complex(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (3..=max_n).prop_flat_map(|n| {
        let facet = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=4.min(n));
        proptest::collection::vec(facet, 0..=6)
            .prop_map(move |facets| SimplicialComplex::from_zero_based(n, facets).unwrap())
    })
}

/// Every length-`len` tuple over `0..n`.
pub fn tuples(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        t
    })
}

/// Step complexon with random values on roughly half the cells, repeated
/// indices included.
pub fn random_step(seed: u64, n: usize, dim: usize) -> StepComplexon {
    let mut r = rng::seeded(seed);
    let mut cells = Vec::new();
    for d in 1..=dim {
        for key in tuples(n, d + 1).filter(|t| t.windows(2).all(|w| w[0] <= w[1])) {
            if rng::uniform(&mut r) < 0.5 {
                cells.push((key, rng::uniform(&mut r)));
            }
        }
    }
    StepComplexon::new(n, dim, cells).unwrap()
}

/// `W̄^(d)(i, j)` by summing the kernel over every ordered cell tuple of the
/// integrated coordinates.
pub fn marginal_oracle(w: &StepComplexon, d: usize) -> Vec<f64> {
    let n = w.n();
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let s: f64 = tuples(n, d - 1)
                .map(|c| {
                    let mut cell = vec![i, j];
                    cell.extend(c);
                    w.cell_value(&cell)
                })
                .sum();
            out[i * n + j] = s / (n as f64).powi(d as i32 - 1);
        }
    }
    out
}

/// `∫ W(x, z_1..z_d) (1/d) Σ X(z_k) dz` on each cell of x.
pub fn message_passing_oracle(w: &StepComplexon, d: usize, x: &[f64]) -> Vec<f64> {
    let n = w.n();
    (0..n)
        .map(|i| {
            let s: f64 = tuples(n, d)
                .map(|z| {
                    let mut cell = vec![i];
                    cell.extend(&z);
                    let avg = z.iter().map(|&k| x[k]).sum::<f64>() / d as f64;
                    w.cell_value(&cell) * avg
                })
                .sum();
            s / (n as f64).powi(d as i32)
        })
        .collect()
}

/// Number of (d-2)-simplices σ of `k` with `{i, j} ∪ σ` a d-simplex, found by
/// scanning every σ for every pair.
pub fn completion_oracle(k: &SimplicialComplex, d: usize) -> Vec<u64> {
    let n = k.n();
    let mut out = vec![0; n * n];
    if d < 2 || d > k.dim() {
        return out;
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for sigma in k.simplices(d - 2) {
                if sigma.contains(&i) || sigma.contains(&j) {
                    continue;
                }
                let mut s = sigma.clone();
                s.extend([i, j]);
                s.sort_unstable();
                if k.contains(&s) {
                    out[i * n + j] += 1;
                }
            }
        }
    }
    out
}

pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Complete d-skeleton check used by sampling tests.
pub fn is_closed(k: &SimplicialComplex) -> bool {
    (1..=k.dim()).all(|d| {
        k.simplices(d).iter().all(|s| {
            Combinations::new(s.len(), s.len() - 1)
                .all(|idx| k.contains(&idx.iter().map(|&i| s[i]).collect::<Vec<_>>()))
        })
    })
}
