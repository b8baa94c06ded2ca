//! Dense-coefficient multivariate polynomials over `[0, 1]^k`.
//!
//! Terms are kept canonical: sorted by exponent vector, merged, zero
//! coefficients dropped. Integration over the unit interval is exact
//! (`∫ z^e dz = 1 / (e + 1)`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    arity: usize,
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn new(arity: usize, terms: impl IntoIterator<Item = (f64, Vec<u32>)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (coeff, exponents) in terms {
            if exponents.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: exponents.len(),
                });
            }
            if !coeff.is_finite() {
                return Err(Error::InvalidComplexon(format!(
                    "non-finite coefficient {coeff}"
                )));
            }
            *map.entry(exponents).or_insert(0.0) += coeff;
        }
        Ok(Self::from_map(arity, map))
    }

    fn from_map(arity: usize, map: BTreeMap<Vec<u32>, f64>) -> Self {
        let terms = map
            .into_iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(exponents, coeff)| Monomial { coeff, exponents })
            .collect();
        Self { arity, terms }
    }

    pub fn constant(arity: usize, c: f64) -> Self {
        Self::from_map(arity, BTreeMap::from([(vec![0; arity], c)]))
    }

    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: Vec::new(),
        }
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn univariate(coeffs: &[f64]) -> Self {
        let map = coeffs
            .iter()
            .enumerate()
            .map(|(e, &c)| (vec![e as u32], c))
            .collect();
        Self::from_map(1, map)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.exponents.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.arity);
        self.terms
            .iter()
            .map(|t| {
                t.exponents
                    .iter()
                    .zip(x)
                    .fold(t.coeff, |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum()
    }

    /// Integrates variable `var` over `[0, 1]`, lowering the arity by one.
    pub fn integrate_var(&self, var: usize) -> Self {
        assert!(var < self.arity);
        let mut map = BTreeMap::new();
        for t in &self.terms {
            let mut e = t.exponents.clone();
            let k = e.remove(var);
            *map.entry(e).or_insert(0.0) += t.coeff / (k as f64 + 1.0);
        }
        Self::from_map(self.arity - 1, map)
    }

    /// Integrates out the last `count` variables.
    pub fn integrate_trailing(&self, count: usize) -> Self {
        (0..count).fold(self.clone(), |p, _| p.integrate_var(p.arity - 1))
    }

    /// Multiplies by `g(x_var)` for a univariate `g`.
    pub fn mul_univariate(&self, var: usize, g: &Polynomial) -> Self {
        assert_eq!(g.arity, 1);
        assert!(var < self.arity);
        let mut map = BTreeMap::new();
        for t in &self.terms {
            for s in &g.terms {
                let mut e = t.exponents.clone();
                e[var] += s.exponents[0];
                *map.entry(e).or_insert(0.0) += t.coeff * s.coeff;
            }
        }
        Self::from_map(self.arity, map)
    }

    pub fn add(&self, other: &Polynomial) -> Self {
        assert_eq!(self.arity, other.arity);
        let mut map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for t in self.terms.iter().chain(&other.terms) {
            *map.entry(t.exponents.clone()).or_insert(0.0) += t.coeff;
        }
        Self::from_map(self.arity, map)
    }

    pub fn scale(&self, factor: f64) -> Self {
        let map = self
            .terms
            .iter()
            .map(|t| (t.exponents.clone(), t.coeff * factor))
            .collect();
        Self::from_map(self.arity, map)
    }

    /// Largest coefficient mismatch between a term and any permutation of its
    /// exponent vector; zero for a symmetric polynomial.
    pub fn asymmetry(&self) -> f64 {
        let map: BTreeMap<&[u32], f64> = self
            .terms
            .iter()
            .map(|t| (t.exponents.as_slice(), t.coeff))
            .collect();
        let mut worst = 0.0f64;
        for t in &self.terms {
            let mut perm = t.exponents.clone();
            perm.sort_unstable();
            loop {
                let c = map.get(perm.as_slice()).copied().unwrap_or(0.0);
                worst = worst.max((c - t.coeff).abs());
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        worst
    }
}

/// Advances to the next lexicographic permutation; false after the last one.
fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
