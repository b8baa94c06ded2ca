//! Dense square matrices and the cyclic Jacobi eigensolver.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::fmt_g;

/// Off-diagonal Frobenius threshold, relative to `‖M‖_F`.
pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Largest allowed `|M_ij - M_ji|`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::NotSquare {
                rows: n,
                cols: data.len().checked_div(n).unwrap_or(data.len()),
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: r.len(),
            });
        }
        Ok(Self {
            n,
            data: rows.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// First `(row, col)` with `|M_ij - M_ji| > tol`, if any.
    pub fn asymmetry(&self, tol: f64) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if (self[(i, j)] - self[(j, i)]).abs() > tol {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Plain-text dump: header line `n d`, then one row per line with
    /// `%.17g` entries separated by spaces.
    pub fn dump(&self, d: usize) -> String {
        let mut out = format!("{} {}\n", self.n, d);
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|&x| fmt_g(x, 17)).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// One eigenpair with its signed position in the ordering.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    pub index: i64,
    pub value: f64,
    pub vector: Vec<f64>,
}

/// Eigenpairs under signed indexing: `1, 2, ...` enumerate eigenvalues ≥ 0
/// in descending order and `-1, -2, ...` the negative ones in ascending
/// order, so `λ_{-1} ≤ λ_{-2} ≤ ... ≤ 0 ≤ ... ≤ λ_2 ≤ λ_1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    /// Positive indices first (`1, 2, ...`), then `-1, -2, ...`.
    pairs: Vec<EigenPair>,
}

impl Spectrum {
    /// Orders raw eigenpairs. Eigenvalues with `|λ| <= zero_tol` become exactly
    /// zero and take positive indices after all strictly positive ones.
    /// Each vector's largest-magnitude component (first on ties) is made
    /// positive, and eigenvalues within `tie_tol` of each other are ordered
    /// by the position of that component.
    pub fn from_raw(raw: Vec<(f64, Vec<f64>)>, zero_tol: f64, tie_tol: f64) -> Self {
        let mut items: Vec<(f64, Vec<f64>, usize)> = raw
            .into_iter()
            .map(|(mut value, mut vector)| {
                if value.abs() <= zero_tol {
                    value = 0.0;
                }
                let lead = lead_index(&vector);
                if vector.get(lead).is_some_and(|&x| x < 0.0) {
                    vector.iter_mut().for_each(|x| *x = -*x);
                }
                (value, vector, lead)
            })
            .collect();

        let (mut nonneg, mut neg): (Vec<_>, Vec<_>) =
            items.drain(..).partition(|(v, _, _)| *v >= 0.0);
        nonneg.sort_by(|a, b| b.0.total_cmp(&a.0));
        neg.sort_by(|a, b| a.0.total_cmp(&b.0));
        break_ties(&mut nonneg, tie_tol);
        break_ties(&mut neg, tie_tol);

        let pairs = nonneg
            .into_iter()
            .enumerate()
            .map(|(k, (value, vector, _))| EigenPair {
                index: k as i64 + 1,
                value,
                vector,
            })
            .chain(
                neg.into_iter()
                    .enumerate()
                    .map(|(k, (value, vector, _))| EigenPair {
                        index: -(k as i64) - 1,
                        value,
                        vector,
                    }),
            )
            .collect();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[EigenPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, index: i64) -> Option<&EigenPair> {
        assert_ne!(index, 0, "eigenvalue indices are nonzero");
        let positives = self.pairs.iter().take_while(|p| p.index > 0).count();
        let pos = if index > 0 {
            (index - 1) as usize
        } else {
            positives + (-index - 1) as usize
        };
        self.pairs.get(pos).filter(|p| p.index == index)
    }

    /// `λ_index`, or zero when the spectrum has no pair at that index.
    pub fn eigenvalue(&self, index: i64) -> f64 {
        self.get(index).map_or(0.0, |p| p.value)
    }

    pub fn values(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    /// Multiplies eigenvalues by `value_factor` and vectors by `vector_factor`.
    pub fn scaled(mut self, value_factor: f64, vector_factor: f64) -> Self {
        for p in &mut self.pairs {
            p.value *= value_factor;
            p.vector.iter_mut().for_each(|x| *x *= vector_factor);
        }
        self
    }

    /// One `index value` line per pair, `%.17g` values.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for p in &self.pairs {
            out.push_str(&format!("{} {}\n", p.index, fmt_g(p.value, 17)));
        }
        out
    }
}

fn lead_index(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    best
}

fn break_ties(items: &mut [(f64, Vec<f64>, usize)], tol: f64) {
    let mut start = 0;
    while start < items.len() {
        let mut end = start + 1;
        while end < items.len() && (items[end].0 - items[start].0).abs() <= tol {
            end += 1;
        }
        items[start..end].sort_by_key(|it| it.2);
        start = end;
    }
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius norm is at most
/// `tol * ‖M‖_F`; more than [`JACOBI_MAX_SWEEPS`] sweeps is an error.
pub fn sym_eig(m: &Matrix, tol: f64) -> Result<Spectrum> {
    if let Some((row, col)) = m.asymmetry(SYMMETRY_TOL) {
        return Err(Error::NotSymmetric { row, col });
    }
    let n = m.n();
    let norm = m.frobenius();
    let mut a = m.clone();
    let mut v = Matrix::identity(n);

    let mut converged = norm == 0.0;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if converged {
            break;
        }
        if off_diagonal(&a) <= tol * norm {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal(&a) > tol * norm {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let raw = (0..n)
        .map(|k| (a[(k, k)], (0..n).map(|i| v[(i, k)]).collect()))
        .collect();
    let scale = norm.max(f64::MIN_POSITIVE);
    Ok(Spectrum::from_raw(raw, tol * scale, tol * scale))
}

fn off_diagonal(a: &Matrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with a plane rotation and accumulates it into `v`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = a.n();
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let np = c * akp - s * akq;
        let nq = s * akp + c * akq;
        a[(k, p)] = np;
        a[(p, k)] = np;
        a[(k, q)] = nq;
        a[(q, k)] = nq;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}
