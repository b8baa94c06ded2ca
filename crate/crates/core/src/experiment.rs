//! Eigenvalue convergence of sampled complex sequences.
//!
//! For every node count `n` in range and every trial, a complex is sampled
//! from the complexon, its d-dimensional CSO spectrum computed, and the
//! tracked signed eigenvalues recorded. Missing indices read as zero.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::complexon::Complexon;
use crate::error::{Error, Result};
use crate::format::fmt_g;
use crate::marginal::{marginal, Quadrature};
use crate::rng;
use crate::sampling::{sample_complex, SampleConfig};
use crate::spectral::{cso_spectrum, discretized_kernel_spectrum};

/// Grid size for reference eigenvalues of polynomial complexons without a
/// closed form.
pub const REFERENCE_GRID: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub dim: usize,
    pub indices: Vec<i64>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_min: 6,
            n_max: 149,
            dim: 2,
            indices: vec![1, 2, -1, -2],
            trials: 1,
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self, w: &Complexon) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.dim == 0 || self.dim > w.dim() {
            return Err(Error::DimensionOutOfRange {
                d: self.dim,
                min: 1,
                max: w.dim(),
            });
        }
        if self.n_min < self.dim + 1 {
            return bad(format!("n_min must be at least dim + 1 = {}", self.dim + 1));
        }
        if self.n_min > self.n_max {
            return bad(format!("n_min {} exceeds n_max {}", self.n_min, self.n_max));
        }
        if self.indices.is_empty() || self.indices.contains(&0) {
            return bad("tracked indices must be nonempty and nonzero".into());
        }
        if self.trials == 0 {
            return bad("need at least one trial".into());
        }
        Ok(())
    }

    /// Seed of trial `trial` at node count `n`.
    pub fn trial_seed(&self, n: usize, trial: usize) -> u64 {
        rng::derive_seed(self.seed, n as u64, trial as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub n: usize,
    pub trial: usize,
    /// One eigenvalue per tracked index, in config order.
    pub lambdas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub n: usize,
    pub trials: usize,
    pub mean: Vec<f64>,
    /// Sample standard deviation; zero for a single trial.
    pub std: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub dim: usize,
    pub indices: Vec<i64>,
    pub rows: Vec<TrialRow>,
    pub summary: Vec<SummaryRow>,
    /// Limit eigenvalue per tracked index, when known.
    pub reference: Vec<Option<f64>>,
}

/// Closed-form nonzero eigenvalues `1/4 ± √93/36` of the 2-dimensional CSO
/// of [`Complexon::mean_triangle`].
pub fn mean_triangle_limits() -> (f64, f64) {
    let r = 93f64.sqrt() / 36.0;
    (0.25 + r, 0.25 - r)
}

/// Limit eigenvalues of the CSO of `w` at the tracked indices, or `None` for
/// step complexons.
pub fn reference_eigenvalues(w: &Complexon, dim: usize, indices: &[i64]) -> Vec<Option<f64>> {
    if dim == 2 && *w == Complexon::mean_triangle() {
        let (top, bottom) = mean_triangle_limits();
        return indices
            .iter()
            .map(|&i| {
                Some(match i {
                    1 => top,
                    -1 => bottom,
                    _ => 0.0,
                })
            })
            .collect();
    }
    let spectrum = match w {
        Complexon::Polynomial(_) => marginal(w, dim, Quadrature::Exact)
            .and_then(|k| discretized_kernel_spectrum(&k, REFERENCE_GRID))
            .ok(),
        Complexon::Step(_) => None,
    };
    indices
        .iter()
        .map(|&i| spectrum.as_ref().map(|s| s.eigenvalue(i)))
        .collect()
}

pub fn run_convergence(cfg: &ExperimentConfig, w: &Complexon) -> Result<ConvergenceTable> {
    cfg.validate(w)?;
    let jobs: Vec<(usize, usize)> = (cfg.n_min..=cfg.n_max)
        .flat_map(|n| (0..cfg.trials).map(move |t| (n, t)))
        .collect();
    let run = |&(n, trial): &(usize, usize)| -> Result<TrialRow> {
        let sample = SampleConfig {
            n,
            dim: cfg.dim,
            seed: cfg.trial_seed(n, trial),
        };
        let (k, _) = sample_complex(w, sample)?;
        let spectrum = cso_spectrum(&k, cfg.dim)?;
        Ok(TrialRow {
            n,
            trial,
            lambdas: cfg
                .indices
                .iter()
                .map(|&i| spectrum.eigenvalue(i))
                .collect(),
        })
    };

    #[cfg(feature = "parallel")]
    let rows: Vec<TrialRow> = {
        use rayon::prelude::*;
        jobs.par_iter().map(run).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<TrialRow> = jobs.iter().map(run).collect::<Result<_>>()?;

    let summary = summarize(&rows, cfg.indices.len());
    Ok(ConvergenceTable {
        dim: cfg.dim,
        indices: cfg.indices.clone(),
        rows,
        summary,
        reference: reference_eigenvalues(w, cfg.dim, &cfg.indices),
    })
}

/// Per-n mean and sample standard deviation. `rows` must be sorted by `n`.
pub fn summarize(rows: &[TrialRow], width: usize) -> Vec<SummaryRow> {
    let mut out = Vec::new();
    for group in rows.chunk_by(|a, b| a.n == b.n) {
        let t = group.len() as f64;
        let mean: Vec<f64> = (0..width)
            .map(|k| group.iter().map(|r| r.lambdas[k]).sum::<f64>() / t)
            .collect();
        let std = (0..width)
            .map(|k| {
                if group.len() < 2 {
                    return 0.0;
                }
                let ss: f64 = group.iter().map(|r| (r.lambdas[k] - mean[k]).powi(2)).sum();
                (ss / (t - 1.0)).sqrt()
            })
            .collect();
        out.push(SummaryRow {
            n: group[0].n,
            trials: group.len(),
            mean,
            std,
        });
    }
    out
}

impl ConvergenceTable {
    fn column(i: i64) -> String {
        format!("lambda_{i}")
    }

    /// `n,trial,lambda_<i>...`, values as `%.12g`.
    pub fn write_trials_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut header = vec!["n".to_string(), "trial".to_string()];
        header.extend(self.indices.iter().map(|&i| Self::column(i)));
        writeln!(out, "{}", header.join(","))?;
        for r in &self.rows {
            let mut fields = vec![r.n.to_string(), r.trial.to_string()];
            fields.extend(r.lambdas.iter().map(|&x| fmt_g(x, 12)));
            writeln!(out, "{}", fields.join(","))?;
        }
        Ok(())
    }

    /// `n,trials,mean_lambda_<i>,std_lambda_<i>...` followed by
    /// `ref_lambda_<i>` columns for indices with a known limit.
    pub fn write_summary_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut header = vec!["n".to_string(), "trials".to_string()];
        for &i in &self.indices {
            header.push(format!("mean_{}", Self::column(i)));
            header.push(format!("std_{}", Self::column(i)));
        }
        for (&i, r) in self.indices.iter().zip(&self.reference) {
            if r.is_some() {
                header.push(format!("ref_{}", Self::column(i)));
            }
        }
        writeln!(out, "{}", header.join(","))?;
        for s in &self.summary {
            let mut fields = vec![s.n.to_string(), s.trials.to_string()];
            for (m, d) in s.mean.iter().zip(&s.std) {
                fields.push(fmt_g(*m, 12));
                fields.push(fmt_g(*d, 12));
            }
            fields.extend(self.reference.iter().flatten().map(|&r| fmt_g(r, 12)));
            writeln!(out, "{}", fields.join(","))?;
        }
        Ok(())
    }

    pub fn trials_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_trials_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii")
    }

    pub fn summary_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_summary_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii")
    }

    /// Mean of the tracked index `index` at node count `n`.
    pub fn mean(&self, n: usize, index: i64) -> Option<f64> {
        let k = self.indices.iter().position(|&i| i == index)?;
        self.summary.iter().find(|s| s.n == n).map(|s| s.mean[k])
    }
}
