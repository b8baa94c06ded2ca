//! Random simplicial complexes drawn from a complexon.
//!
//! Stream order for a given seed (ChaCha8, one 64-bit word per draw):
//!
//! 1. `n` latent points `x_1..x_n`, in vertex order.
//! 2. For `d = 1..=D`, one draw for every `(d+1)`-subset of the vertices in
//!    lexicographic order, whether or not the subset is eligible.
//!
//! A subset is eligible when all of its d-1 dimensional faces were kept; an
//! eligible subset `σ` is kept when its draw is below `W^(d)(x_σ)`. Because the
//! draws do not depend on earlier outcomes, two complexons sampled with the
//! same seed see the same uniforms on every subset.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::complex::{Combinations, SimplicialComplex};
use crate::complexon::Complexon;
use crate::error::{Error, Result};
use crate::format::fmt_g;
use crate::rng;

/// Name of the generator behind every sampling routine.
pub const RNG_ALGORITHM: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub n: usize,
    /// Highest dimension to sample.
    pub dim: usize,
    pub seed: u64,
}

/// Per-dimension bookkeeping of one draw.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct DimensionStats {
    pub d: usize,
    /// Candidates whose whole boundary was present.
    pub eligible: u64,
    pub included: u64,
    /// Sum of `W^(d)(x_σ)` over eligible candidates.
    pub probability_sum: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub complex: SimplicialComplex,
    pub latent: Vec<f64>,
    pub stats: Vec<DimensionStats>,
}

/// Draws a complex and its latent points.
pub fn sample_complex(w: &Complexon, cfg: SampleConfig) -> Result<(SimplicialComplex, Vec<f64>)> {
    let s = sample_with_stats(w, cfg)?;
    Ok((s.complex, s.latent))
}

pub fn sample_with_stats(w: &Complexon, cfg: SampleConfig) -> Result<Sample> {
    if cfg.dim > w.dim() {
        return Err(Error::DimensionOutOfRange {
            d: cfg.dim,
            min: 0,
            max: w.dim(),
        });
    }
    if cfg.n < cfg.dim + 1 || cfg.n == 0 {
        return Err(Error::TooFewNodes {
            n: cfg.n,
            needed: cfg.dim + 1,
        });
    }
    let n = cfg.n;
    let mut rng = rng::seeded(cfg.seed);
    let latent: Vec<f64> = (0..n).map(|_| rng::uniform(&mut rng)).collect();

    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
    let mut stats = Vec::with_capacity(cfg.dim);
    let mut point = Vec::with_capacity(cfg.dim + 1);
    let mut face = Vec::with_capacity(cfg.dim + 1);
    for d in 1..=cfg.dim {
        let faces = FaceIndex::new(n, &levels[d - 1]);
        let mut kept = Vec::new();
        let mut st = DimensionStats {
            d,
            ..Default::default()
        };
        for cand in Combinations::new(n, d + 1) {
            let u = rng::uniform(&mut rng);
            let eligible = d == 1
                || (0..=d).all(|skip| {
                    face.clear();
                    face.extend(
                        cand.iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &v)| v),
                    );
                    faces.contains(&face)
                });
            if !eligible {
                continue;
            }
            point.clear();
            point.extend(cand.iter().map(|&v| latent[v]));
            let p = w.evaluate_unchecked(d, &point);
            st.eligible += 1;
            st.probability_sum += p;
            if u < p {
                st.included += 1;
                kept.push(cand);
            }
        }
        stats.push(st);
        levels.push(kept);
    }
    Ok(Sample {
        complex: SimplicialComplex::from_levels(n, levels),
        latent,
        stats,
    })
}

/// Membership test for the faces of one dimension. Vertex tuples are packed
/// into a base-`n` integer when that fits in 128 bits.
enum FaceIndex {
    Packed { n: u128, set: HashSet<u128> },
    Plain(HashSet<Vec<usize>>),
}

impl FaceIndex {
    fn new(n: usize, faces: &[Vec<usize>]) -> Self {
        let width = faces.first().map_or(0, Vec::len);
        let fits = (n as u128).checked_pow(width as u32).is_some();
        if fits {
            let n = n as u128;
            let set = faces.iter().map(|f| pack(n, f)).collect();
            FaceIndex::Packed { n, set }
        } else {
            FaceIndex::Plain(faces.iter().cloned().collect())
        }
    }

    fn contains(&self, face: &[usize]) -> bool {
        match self {
            FaceIndex::Packed { n, set } => set.contains(&pack(*n, face)),
            FaceIndex::Plain(set) => set.contains(face),
        }
    }
}

fn pack(n: u128, face: &[usize]) -> u128 {
    face.iter().fold(0u128, |acc, &v| acc * n + v as u128)
}

/// Sidecar text for latent points: one `index x` line per vertex, one-based
/// index, `%.17g` value.
pub fn latent_to_text(latent: &[f64]) -> String {
    latent
        .iter()
        .enumerate()
        .map(|(i, &x)| format!("{} {}\n", i + 1, fmt_g(x, 17)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateEstimate {
    /// Mean over trials of included / eligible d-simplices.
    pub rate: f64,
    /// Mean over trials of the average inclusion probability `W^(d)(x_σ)`
    /// over eligible candidates.
    pub expected: f64,
    pub trials: usize,
}

/// Average fraction of eligible d-simplices kept over `trials` independent
/// samples on `n` nodes. Trial `t` uses seed `derive_seed(seed, n, t)`.
pub fn empirical_simplex_rate(
    w: &Complexon,
    d: usize,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<RateEstimate> {
    if d == 0 {
        return Err(Error::DimensionOutOfRange {
            d,
            min: 1,
            max: w.dim(),
        });
    }
    if trials == 0 {
        return Err(Error::InvalidConfig("need at least one trial".into()));
    }
    let run = |t: usize| -> Result<(f64, f64)> {
        let cfg = SampleConfig {
            n,
            dim: d,
            seed: rng::derive_seed(seed, n as u64, t as u64),
        };
        let st = sample_with_stats(w, cfg)?.stats[d - 1];
        if st.eligible == 0 {
            return Ok((0.0, 0.0));
        }
        let e = st.eligible as f64;
        Ok((st.included as f64 / e, st.probability_sum / e))
    };

    #[cfg(feature = "parallel")]
    let per_trial: Vec<(f64, f64)> = {
        use rayon::prelude::*;
        (0..trials)
            .into_par_iter()
            .map(run)
            .collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let per_trial: Vec<(f64, f64)> = (0..trials).map(run).collect::<Result<_>>()?;

    let t = trials as f64;
    Ok(RateEstimate {
        rate: per_trial.iter().map(|p| p.0).sum::<f64>() / t,
        expected: per_trial.iter().map(|p| p.1).sum::<f64>() / t,
        trials,
    })
}
