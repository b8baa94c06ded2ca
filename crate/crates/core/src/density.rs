//! Homomorphism densities `t(F, W) = ∫ Π_{σ ∈ F} W(x_σ) dx` in complexons.

use crate::complex::SimplicialComplex;
use crate::complexon::{Complexon, StepComplexon};
use crate::error::{Error, Result};
use crate::hom::{constraints_by_last_vertex, HomDensity, SizeGuard};
use crate::rng;

/// Samples per independently seeded Monte Carlo chunk.
pub const MC_CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Estimator {
    /// Exact sum over all `n^V(F)` cell assignments of a step complexon.
    ExactGrid(SizeGuard),
    /// Sample mean over iid uniform points. Chunk `c` of [`MC_CHUNK`]
    /// samples draws from ChaCha stream `c` of `seed`.
    MonteCarlo { samples: usize, seed: u64 },
}

impl Estimator {
    pub fn exact() -> Self {
        Estimator::ExactGrid(SizeGuard::default())
    }
}

pub fn density_in_complexon(
    f: &SimplicialComplex,
    w: &Complexon,
    estimator: Estimator,
) -> Result<HomDensity> {
    // Simplices of F above W's dimension meet a zero kernel.
    match estimator {
        Estimator::ExactGrid(guard) => match w {
            Complexon::Step(s) => exact_grid(f, s, guard),
            Complexon::Polynomial(_) => Err(Error::ExactGridOnAnalytic),
        },
        Estimator::MonteCarlo { samples, seed } => monte_carlo(f, w, samples, seed),
    }
}

fn exact_grid(f: &SimplicialComplex, w: &StepComplexon, guard: SizeGuard) -> Result<HomDensity> {
    guard.check(w.n(), f.n())?;
    let closing = constraints_by_last_vertex(f);
    let mut cells = vec![0usize; f.n()];
    let mut key = Vec::new();
    let sum = grid_sum(0, 1.0, w, &closing, &mut cells, &mut key);
    let value = sum / (w.n() as f64).powi(f.n() as i32);
    let hom_count = w.is_indicator().then_some(sum as u64);
    Ok(HomDensity {
        value,
        hom_count,
        std_error: None,
    })
}

fn grid_sum(
    v: usize,
    weight: f64,
    w: &StepComplexon,
    closing: &[Vec<&[usize]>],
    cells: &mut [usize],
    key: &mut Vec<usize>,
) -> f64 {
    if v == cells.len() {
        return weight;
    }
    let mut total = 0.0;
    for g in 0..w.n() {
        cells[v] = g;
        let mut wt = weight;
        for s in &closing[v] {
            key.clear();
            key.extend(s.iter().map(|&u| cells[u]));
            wt *= w.cell_value(key);
            if wt == 0.0 {
                break;
            }
        }
        if wt != 0.0 {
            total += grid_sum(v + 1, wt, w, closing, cells, key);
        }
    }
    total
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.count;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if other.count == 0.0 {
            return self;
        }
        if self.count == 0.0 {
            return other;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        Moments {
            count,
            mean: self.mean + delta * other.count / count,
            m2: self.m2 + other.m2 + delta * delta * self.count * other.count / count,
        }
    }
}

fn monte_carlo(
    f: &SimplicialComplex,
    w: &Complexon,
    samples: usize,
    seed: u64,
) -> Result<HomDensity> {
    if samples == 0 {
        return Err(Error::InvalidQuadrature);
    }
    let simplices: Vec<(usize, &[usize])> = (1..=f.dim())
        .flat_map(|d| f.simplices(d).iter().map(move |s| (d, s.as_slice())))
        .collect();
    let chunks = samples.div_ceil(MC_CHUNK);
    let run_chunk = |c: usize| -> Moments {
        let mut rng = rng::stream(seed, c as u64);
        let len = MC_CHUNK.min(samples - c * MC_CHUNK);
        let mut x = vec![0.0; f.n()];
        let mut point = Vec::new();
        let mut m = Moments::default();
        for _ in 0..len {
            x.iter_mut().for_each(|xi| *xi = rng::uniform(&mut rng));
            let mut prod = 1.0;
            for &(d, s) in &simplices {
                if d > w.dim() {
                    prod = 0.0;
                    break;
                }
                point.clear();
                point.extend(s.iter().map(|&u| x[u]));
                prod *= w.evaluate_unchecked(d, &point);
                if prod == 0.0 {
                    break;
                }
            }
            m.push(prod);
        }
        m
    };

    #[cfg(feature = "parallel")]
    let parts: Vec<Moments> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(run_chunk).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Moments> = (0..chunks).map(run_chunk).collect();

    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let std_error = if total.count > 1.0 {
        (total.m2 / (total.count - 1.0) / total.count).sqrt()
    } else {
        0.0
    };
    Ok(HomDensity {
        value: total.mean,
        hom_count: None,
        std_error: Some(std_error),
    })
}
