//! Marginal complexons `W̄^(d)(x, y) = ∫ W^(d)(x, y, z_1..z_{d-1}) dz`.

use crate::complexon::{Complexon, Equipartition, StepComplexon};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::rng;

/// Above this many integration variables the midpoint rule hands over to
/// Monte Carlo.
pub const MAX_MIDPOINT_AXES: usize = 3;

/// How to integrate out the trailing `d - 1` arguments.
///
/// Step complexons are always summed exactly over cells; the rule only
/// affects polynomial complexons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Quadrature {
    /// Symbolic integration of polynomial components.
    #[default]
    Exact,
    /// Composite midpoint rule with `points` nodes per axis. Falls back to
    /// Monte Carlo with `points^3` samples when more than
    /// [`MAX_MIDPOINT_AXES`] variables are integrated.
    Midpoint {
        points: usize,
    },
    MonteCarlo {
        samples: usize,
        seed: u64,
    },
}

/// An n×n kernel that is constant on the cells of the n-equipartition.
#[derive(Debug, Clone, PartialEq)]
pub struct StepKernel {
    n: usize,
    values: Vec<f64>,
}

impl StepKernel {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoNodes);
        }
        if values.len() != n * n {
            return Err(Error::NotSquare {
                rows: n,
                cols: values.len() / n,
            });
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// Row-major cell values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Numerical marginal of a polynomial component on a fixed node set.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureKernel {
    component: Polynomial,
    /// Flattened integration nodes, `component.arity() - 2` coordinates each.
    nodes: Vec<f64>,
}

impl QuadratureKernel {
    pub fn node_count(&self) -> usize {
        let stride = self.component.arity() - 2;
        self.nodes.len().checked_div(stride).unwrap_or(1)
    }

    fn evaluate(&self, x: f64, y: f64) -> f64 {
        let stride = self.component.arity() - 2;
        if stride == 0 {
            return self.component.evaluate(&[x, y]);
        }
        let mut point = vec![x, y];
        point.resize(stride + 2, 0.0);
        let mut sum = 0.0;
        for z in self.nodes.chunks_exact(stride) {
            point[2..].copy_from_slice(z);
            sum += self.component.evaluate(&point);
        }
        sum / self.node_count() as f64
    }
}

/// A symmetric two-argument kernel on `[0,1]^2` (a graphon).
#[derive(Debug, Clone, PartialEq)]
pub enum MarginalKernel {
    Step(StepKernel),
    Polynomial(Polynomial),
    Quadrature(QuadratureKernel),
}

impl MarginalKernel {
    pub fn evaluate(&self, x: f64, y: f64) -> Result<f64> {
        for v in [x, y] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::CoordinateOutOfRange(v));
            }
        }
        Ok(self.evaluate_unchecked(x, y))
    }

    pub(crate) fn evaluate_unchecked(&self, x: f64, y: f64) -> f64 {
        match self {
            MarginalKernel::Step(s) => {
                let p = Equipartition::new(s.n);
                s.get(p.lookup(x), p.lookup(y))
            }
            MarginalKernel::Polynomial(p) => p.evaluate(&[x, y]),
            MarginalKernel::Quadrature(q) => q.evaluate(x, y),
        }
    }

    pub fn as_step(&self) -> Option<&StepKernel> {
        match self {
            MarginalKernel::Step(s) => Some(s),
            _ => None,
        }
    }

    /// Samples the kernel at the midpoints of the m-equipartition, row-major.
    pub fn midpoint_samples(&self, m: usize) -> Vec<f64> {
        let p = Equipartition::new(m);
        let mut out = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                out.push(self.evaluate_unchecked(p.midpoint(a), p.midpoint(b)));
            }
        }
        out
    }
}

/// The marginal complexon of `w` at dimension `d` (`1 <= d <= dim W`).
pub fn marginal(w: &Complexon, d: usize, quad: Quadrature) -> Result<MarginalKernel> {
    if d == 0 || d > w.dim() {
        return Err(Error::DimensionOutOfRange {
            d,
            min: 1,
            max: w.dim(),
        });
    }
    match quad {
        Quadrature::Midpoint { points: 0 } | Quadrature::MonteCarlo { samples: 0, .. } => {
            return Err(Error::InvalidQuadrature)
        }
        _ => {}
    }
    match w {
        Complexon::Step(s) => Ok(MarginalKernel::Step(step_marginal(s, d))),
        Complexon::Polynomial(p) => {
            let comp = p.component(d);
            let axes = d - 1;
            if axes == 0 {
                return Ok(MarginalKernel::Polynomial(comp.clone()));
            }
            let nodes = match quad {
                Quadrature::Exact => {
                    return Ok(MarginalKernel::Polynomial(comp.integrate_trailing(axes)))
                }
                Quadrature::Midpoint { points } if axes <= MAX_MIDPOINT_AXES => {
                    midpoint_nodes(points, axes)
                }
                Quadrature::Midpoint { points } => {
                    monte_carlo_nodes(points.saturating_pow(3), axes, FALLBACK_SEED)
                }
                Quadrature::MonteCarlo { samples, seed } => monte_carlo_nodes(samples, axes, seed),
            };
            Ok(MarginalKernel::Quadrature(QuadratureKernel {
                component: comp.clone(),
                nodes,
            }))
        }
    }
}

const FALLBACK_SEED: u64 = 0x6d61_7267;

fn midpoint_nodes(m: usize, axes: usize) -> Vec<f64> {
    let total = m.pow(axes as u32);
    let mut nodes = Vec::with_capacity(total * axes);
    for code in 0..total {
        let mut c = code;
        for _ in 0..axes {
            nodes.push(((c % m) as f64 + 0.5) / m as f64);
            c /= m;
        }
    }
    nodes
}

fn monte_carlo_nodes(samples: usize, axes: usize, seed: u64) -> Vec<f64> {
    let mut rng = rng::seeded(seed);
    (0..samples * axes)
        .map(|_| rng::uniform(&mut rng))
        .collect()
}

/// Exact cell summation: for each stored cell multiset and each ordered pair
/// `(i, j)` drawn from it, the remaining `d - 1` indices can be ordered in
/// `multinomial` ways, each contributing a cell of volume `n^-(d-1)`.
fn step_marginal(s: &StepComplexon, d: usize) -> StepKernel {
    let n = s.n();
    let mut acc = vec![0.0; n * n];
    for (key, &v) in s.cells(d) {
        let groups = group_counts(key);
        for (a, &(i, ci)) in groups.iter().enumerate() {
            for (b, &(j, _)) in groups.iter().enumerate() {
                if a == b && ci < 2 {
                    continue;
                }
                let mut rest: Vec<usize> = groups.iter().map(|g| g.1).collect();
                rest[a] -= 1;
                rest[b] -= 1;
                acc[i * n + j] += v * arrangements(&rest);
            }
        }
    }
    let volume = (n as f64).powi(d as i32 - 1);
    for x in &mut acc {
        *x /= volume;
    }
    StepKernel { n, values: acc }
}

/// `(value, multiplicity)` runs of a sorted key.
pub(crate) fn group_counts(key: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &g in key {
        match out.last_mut() {
            Some((v, c)) if *v == g => *c += 1,
            _ => out.push((g, 1)),
        }
    }
    out
}

/// Number of distinct orderings of a multiset with the given multiplicities.
pub(crate) fn arrangements(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    let mut out = factorial(total);
    for &c in counts {
        out /= factorial(c);
    }
    out
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}
