//! Raised adjacency matrices and complexon shift operators (CSOs).
//!
//! The d-dimensional CSO of a complexon `W` is the integral operator with
//! kernel `W̄^(d)`. For the complexon induced by an n-node complex `K` that
//! kernel is the step function with cell values `N^(d)`, so the operator's
//! nonzero spectrum is the spectrum of `N^(d)` divided by `n`, with step
//! eigenfunctions `√n · v` on the equipartition.

use crate::complex::SimplicialComplex;
use crate::complexon::Complexon;
use crate::error::{Error, Result};
use crate::linalg::{sym_eig, Matrix, Spectrum, JACOBI_TOL};
use crate::marginal::{arrangements, group_counts, marginal, MarginalKernel, Quadrature};
use crate::polynomial::Polynomial;

/// The d-raised adjacency matrix of an n-node complex.
#[derive(Debug, Clone, PartialEq)]
pub struct RaisedAdjacency {
    pub n: usize,
    pub d: usize,
    pub matrix: Matrix,
}

impl RaisedAdjacency {
    /// Matrix dump with header `n d`.
    pub fn dump(&self) -> String {
        self.matrix.dump(self.d)
    }
}

/// Number of d-simplices of `k` containing both `v_i` and `v_j` (`i ≠ j`),
/// row-major. Each such simplex has exactly one (d-2)-dimensional complement.
pub fn completion_counts(k: &SimplicialComplex, d: usize) -> Vec<u64> {
    let n = k.n();
    let mut counts = vec![0u64; n * n];
    if d < 1 {
        return counts;
    }
    for s in k.simplices(d) {
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                counts[i * n + j] += 1;
                counts[j * n + i] += 1;
            }
        }
    }
    counts
}

/// `N^(d)` for `d >= 1`.
///
/// For `d = 1` this is the 0/1 adjacency of the 1-skeleton. For `d >= 2`,
/// entry `(i, j)` counts the ordered `(d-1)`-tuples of further vertices that
/// complete `{v_i, v_j}` to a d-simplex, divided by `n^(d-1)`: each completing
/// simplex contributes `(d-1)!` orderings. This is exactly the cell value of
/// the induced complexon's marginal. For `d > dim K` the matrix is zero.
pub fn raised_adjacency(k: &SimplicialComplex, d: usize) -> Result<RaisedAdjacency> {
    if d == 0 {
        return Err(Error::DimensionOutOfRange {
            d,
            min: 1,
            max: usize::MAX,
        });
    }
    let n = k.n();
    let counts = completion_counts(k, d);
    let orderings: f64 = (1..d).map(|i| i as f64).product();
    let volume = (n as f64).powi(d as i32 - 1);
    let data = counts
        .iter()
        .map(|&c| c as f64 * orderings / volume)
        .collect();
    Ok(RaisedAdjacency {
        n,
        d,
        matrix: Matrix::from_row_major(n, data)?,
    })
}

/// Eigenpairs of the d-dimensional CSO of the complexon induced by `k`.
///
/// Eigenvalues are `λ_i(N^(d)) / n`; each pair's vector holds the cell values
/// `√n · (v_i)_j` of the step eigenfunction.
pub fn cso_spectrum(k: &SimplicialComplex, d: usize) -> Result<Spectrum> {
    let adj = raised_adjacency(k, d)?;
    let n = k.n() as f64;
    Ok(sym_eig(&adj.matrix, JACOBI_TOL)?.scaled(1.0 / n, n.sqrt()))
}

/// Nyström-type spectrum of a kernel operator: the kernel sampled at the
/// midpoints of the m-equipartition, decomposed, and scaled by `1/m`.
/// Vectors hold step eigenfunction values `√m · v`.
pub fn discretized_kernel_spectrum(kernel: &MarginalKernel, m: usize) -> Result<Spectrum> {
    if m < 2 {
        return Err(Error::InvalidConfig(format!(
            "grid resolution must be at least 2, got {m}"
        )));
    }
    let samples = kernel.midpoint_samples(m);
    let mut mat = Matrix::from_row_major(m, samples)?;
    // Polynomial evaluation order can differ by an ulp between (x,y) and (y,x).
    for i in 0..m {
        for j in i + 1..m {
            let avg = 0.5 * (mat[(i, j)] + mat[(j, i)]);
            mat[(i, j)] = avg;
            mat[(j, i)] = avg;
        }
    }
    let mf = m as f64;
    Ok(sym_eig(&mat, JACOBI_TOL)?.scaled(1.0 / mf, mf.sqrt()))
}

/// A square-integrable signal on `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum ComplexonSignal {
    /// Values on the cells of the n-equipartition.
    Step(Vec<f64>),
    /// A univariate polynomial.
    Polynomial(Polynomial),
}

impl ComplexonSignal {
    pub fn polynomial(coeffs: &[f64]) -> Self {
        ComplexonSignal::Polynomial(Polynomial::univariate(coeffs))
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        match self {
            ComplexonSignal::Step(v) => v[crate::complexon::Equipartition::new(v.len()).lookup(x)],
            ComplexonSignal::Polynomial(p) => p.evaluate(&[x]),
        }
    }

    pub fn as_step(&self) -> Option<&[f64]> {
        match self {
            ComplexonSignal::Step(v) => Some(v),
            _ => None,
        }
    }

    /// `∫_0^1 X(x) Y(x) dx`, exact for step/step and polynomial/polynomial.
    pub fn inner_product(&self, other: &ComplexonSignal) -> Result<f64> {
        match (self, other) {
            (ComplexonSignal::Step(a), ComplexonSignal::Step(b)) => {
                if a.len() != b.len() {
                    return Err(Error::PartitionMismatch {
                        left: a.len(),
                        right: b.len(),
                    });
                }
                Ok(a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / a.len() as f64)
            }
            (ComplexonSignal::Polynomial(a), ComplexonSignal::Polynomial(b)) => {
                Ok(a.mul_univariate(0, b).integrate_var(0).evaluate(&[]))
            }
            _ => Err(Error::IncompatibleSignal(
                "inner product of step and polynomial signals".into(),
            )),
        }
    }
}

/// Which of the two equivalent CSO definitions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftForm {
    /// `(T X)(x) = ∫ W̄^(d)(x, y) X(y) dy`.
    Marginal,
    /// `(T X)(x) = ∫ W(x, z_1..z_d) X̄(z) dz` with `X̄(z) = (1/d) Σ X(z_i)`.
    MessagePassing,
}

/// Applies the d-dimensional CSO of `w` to `x`.
pub fn apply_cso(
    w: &Complexon,
    d: usize,
    x: &ComplexonSignal,
    form: ShiftForm,
) -> Result<ComplexonSignal> {
    if d == 0 || d > w.dim() {
        return Err(Error::DimensionOutOfRange {
            d,
            min: 1,
            max: w.dim(),
        });
    }
    match (w, x) {
        (Complexon::Step(s), ComplexonSignal::Step(values)) => {
            if values.len() != s.n() {
                return Err(Error::PartitionMismatch {
                    left: s.n(),
                    right: values.len(),
                });
            }
            let out = match form {
                ShiftForm::Marginal => {
                    let k = marginal(w, d, Quadrature::Exact)?;
                    let k = k.as_step().expect("step complexon has a step marginal");
                    let n = s.n() as f64;
                    (0..s.n())
                        .map(|i| (0..s.n()).map(|j| k.get(i, j) * values[j]).sum::<f64>() / n)
                        .collect()
                }
                ShiftForm::MessagePassing => step_message_passing(s, d, values),
            };
            Ok(ComplexonSignal::Step(out))
        }
        (Complexon::Polynomial(p), ComplexonSignal::Polynomial(g)) => {
            let out = match form {
                ShiftForm::Marginal => {
                    let k = p.component(d).integrate_trailing(d - 1);
                    k.mul_univariate(1, g).integrate_var(1)
                }
                ShiftForm::MessagePassing => {
                    let comp = p.component(d);
                    let mut acc = Polynomial::zero(d + 1);
                    for var in 1..=d {
                        acc = acc.add(&comp.mul_univariate(var, g));
                    }
                    acc.scale(1.0 / d as f64).integrate_trailing(d)
                }
            };
            Ok(ComplexonSignal::Polynomial(out))
        }
        (Complexon::Step(_), ComplexonSignal::Polynomial(_)) => Err(Error::IncompatibleSignal(
            "step complexon needs a step signal".into(),
        )),
        (Complexon::Polynomial(_), ComplexonSignal::Step(_)) => Err(Error::IncompatibleSignal(
            "polynomial complexon needs a polynomial signal".into(),
        )),
    }
}

/// Cell-wise evaluation of the message-passing form: a stored multiset with
/// `x` in cell `i` leaves `d` further cells whose orderings all share the same
/// average signal.
fn step_message_passing(s: &crate::complexon::StepComplexon, d: usize, values: &[f64]) -> Vec<f64> {
    let n = s.n();
    let mut out = vec![0.0; n];
    for (key, &v) in s.cells(d) {
        let groups = group_counts(key);
        for (a, &(i, _)) in groups.iter().enumerate() {
            let mut rest: Vec<usize> = groups.iter().map(|g| g.1).collect();
            rest[a] -= 1;
            let signal_sum: f64 = groups
                .iter()
                .zip(&rest)
                .map(|(&(g, _), &c)| c as f64 * values[g])
                .sum();
            out[i] += v * arrangements(&rest) * signal_sum / d as f64;
        }
    }
    let volume = (n as f64).powi(d as i32);
    out.iter_mut().for_each(|x| *x /= volume);
    out
}
