//! Homomorphism counts and densities between finite complexes.
//!
//! A vertex map `phi: V(F) -> V(K)` is a homomorphism when the image *set* of
//! every d-simplex of `F` is a d-simplex of `K`. Maps that collapse a simplex
//! therefore never count.

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Default bound on the number of candidate maps or grid cells.
pub const DEFAULT_SEARCH_LIMIT: u128 = 100_000_000;

/// Upper bound on brute-force search spaces (`base^exponent`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub limit: u128,
}

impl Default for SizeGuard {
    fn default() -> Self {
        Self {
            limit: DEFAULT_SEARCH_LIMIT,
        }
    }
}

impl SizeGuard {
    pub fn new(limit: u128) -> Self {
        Self { limit }
    }

    pub fn check(&self, base: usize, exponent: usize) -> Result<u128> {
        let mut required: u128 = 1;
        for _ in 0..exponent {
            required = required.saturating_mul(base as u128);
        }
        if required > self.limit {
            return Err(Error::SizeGuard {
                required,
                limit: self.limit,
            });
        }
        Ok(required)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomDensity {
    pub value: f64,
    /// Exact number of homomorphisms, when counted combinatorially.
    pub hom_count: Option<u64>,
    /// Standard error of the mean for Monte Carlo estimates.
    pub std_error: Option<f64>,
}

/// Counts homomorphisms `F -> K` by depth-first assignment of `F`'s vertices.
///
/// A partial map is abandoned as soon as a simplex whose vertices are all
/// assigned fails, which visits the same maps as the full `V(K)^V(F)`
/// enumeration would accept.
pub fn hom_count(f: &SimplicialComplex, k: &SimplicialComplex) -> Result<u64> {
    hom_count_with_guard(f, k, SizeGuard::default())
}

pub fn hom_count_with_guard(
    f: &SimplicialComplex,
    k: &SimplicialComplex,
    guard: SizeGuard,
) -> Result<u64> {
    guard.check(k.n(), f.n())?;
    let closing = constraints_by_last_vertex(f);
    let mut image = vec![0usize; f.n()];
    let mut buf = Vec::new();
    Ok(extend(0, f.n(), k, &closing, &mut image, &mut buf))
}

/// `out[v]` lists the simplices of dimension ≥ 1 whose largest vertex is `v`.
pub(crate) fn constraints_by_last_vertex(f: &SimplicialComplex) -> Vec<Vec<&[usize]>> {
    let mut out = vec![Vec::new(); f.n()];
    for d in 1..=f.dim() {
        for s in f.simplices(d) {
            out[*s.last().unwrap()].push(s.as_slice());
        }
    }
    out
}

fn extend(
    v: usize,
    nf: usize,
    k: &SimplicialComplex,
    closing: &[Vec<&[usize]>],
    image: &mut [usize],
    buf: &mut Vec<usize>,
) -> u64 {
    if v == nf {
        return 1;
    }
    let mut total = 0;
    'target: for w in 0..k.n() {
        image[v] = w;
        for s in &closing[v] {
            buf.clear();
            buf.extend(s.iter().map(|&u| image[u]));
            buf.sort_unstable();
            buf.dedup();
            if buf.len() != s.len() || !k.contains(buf) {
                continue 'target;
            }
        }
        total += extend(v + 1, nf, k, closing, image, buf);
    }
    total
}

/// `t(F, K) = hom(F, K) / V(K)^V(F)`.
pub fn hom_density(f: &SimplicialComplex, k: &SimplicialComplex) -> Result<HomDensity> {
    hom_density_with_guard(f, k, SizeGuard::default())
}

pub fn hom_density_with_guard(
    f: &SimplicialComplex,
    k: &SimplicialComplex,
    guard: SizeGuard,
) -> Result<HomDensity> {
    let count = hom_count_with_guard(f, k, guard)?;
    Ok(HomDensity {
        value: count as f64 / (k.n() as f64).powi(f.n() as i32),
        hom_count: Some(count),
        std_error: None,
    })
}
