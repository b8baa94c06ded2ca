//! Complexons: graded symmetric kernels `W^(d): [0,1]^(d+1) -> [0,1]` with
//! `W^(0) ≡ 1`.
//!
//! Two concrete families are supported. Step complexons are constant on the
//! cells of a standard n-equipartition (the complexon induced by a finite
//! complex is the main example). Polynomial complexons carry one symmetric
//! multivariate polynomial per dimension, which keeps marginals symbolic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::rng;

/// Tolerance for the symmetry and range checks on polynomial components.
pub const VALIDATION_TOL: f64 = 1e-12;

/// The standard n-equipartition `I_j = [(j-1)/n, j/n)`, with `I_n` closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Equipartition {
    n: usize,
}

impl Equipartition {
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "equipartition needs at least one interval");
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Zero-based index of the interval containing `x`.
    pub fn lookup(&self, x: f64) -> usize {
        debug_assert!((0.0..=1.0).contains(&x));
        let nf = self.n as f64;
        let mut j = ((x * nf).floor() as usize).min(self.n - 1);
        // Settle rounding at the boundaries against the stored endpoints.
        if j > 0 && x < j as f64 / nf {
            j -= 1;
        } else if j + 1 < self.n && x >= (j + 1) as f64 / nf {
            j += 1;
        }
        j
    }

    /// Midpoint of interval `j` (zero-based).
    pub fn midpoint(&self, j: usize) -> f64 {
        (j as f64 + 0.5) / self.n as f64
    }
}

/// A complexon that is constant on equipartition cells.
///
/// `tables[d]` maps a sorted tuple of `d + 1` zero-based cell indices (repeats
/// allowed) to the kernel value on every cell obtained by permuting it. Absent
/// cells are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct StepComplexon {
    n: usize,
    dim: usize,
    tables: Vec<BTreeMap<Vec<usize>, f64>>,
}

impl StepComplexon {
    pub fn new(
        n: usize,
        dim: usize,
        cells: impl IntoIterator<Item = (Vec<usize>, f64)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoNodes);
        }
        let mut tables = vec![BTreeMap::new(); dim + 1];
        for (mut key, value) in cells {
            let d = key.len().checked_sub(1).ok_or(Error::EmptySimplex)?;
            if d == 0 || d > dim {
                return Err(Error::DimensionOutOfRange {
                    d,
                    min: 1,
                    max: dim,
                });
            }
            if let Some(&g) = key.iter().find(|&&g| g >= n) {
                return Err(Error::VertexOutOfRange { vertex: g + 1, n });
            }
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidComplexon(format!(
                    "cell value {value} outside [0, 1]"
                )));
            }
            key.sort_unstable();
            if let Some(prev) = tables[d].insert(key.clone(), value) {
                if prev != value {
                    return Err(Error::InvalidComplexon(format!(
                        "conflicting values for cell {key:?}"
                    )));
                }
            }
        }
        for t in &mut tables {
            t.retain(|_, v| *v != 0.0);
        }
        Ok(Self { n, dim, tables })
    }

    /// The complexon induced by `k`: `W^(d) = 1` exactly on cells whose
    /// indices form a d-simplex of `k`.
    pub fn induced(k: &SimplicialComplex) -> Self {
        let mut tables = vec![BTreeMap::new(); k.dim() + 1];
        for (d, table) in tables.iter_mut().enumerate().skip(1) {
            *table = k.simplices(d).iter().map(|s| (s.clone(), 1.0)).collect();
        }
        Self {
            n: k.n(),
            dim: k.dim(),
            tables,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn partition(&self) -> Equipartition {
        Equipartition::new(self.n)
    }

    /// Nonzero cells of dimension `d`, keyed by sorted cell indices.
    pub fn cells(&self, d: usize) -> &BTreeMap<Vec<usize>, f64> {
        static EMPTY: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        self.tables.get(d).unwrap_or(&EMPTY)
    }

    /// Value on the cell with (unsorted) indices `cell`.
    pub fn cell_value(&self, cell: &[usize]) -> f64 {
        match cell.len() {
            0 => 0.0,
            1 => 1.0,
            k => {
                let mut key = cell.to_vec();
                key.sort_unstable();
                self.cells(k - 1).get(&key).copied().unwrap_or(0.0)
            }
        }
    }

    /// True when every nonzero cell value is exactly one.
    pub fn is_indicator(&self) -> bool {
        self.tables
            .iter()
            .flat_map(|t| t.values())
            .all(|&v| v == 1.0)
    }
}

/// A complexon with one symmetric polynomial per dimension `1..=dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialComplexon {
    dim: usize,
    /// `components[d]` has arity `d + 1`; index 0 holds the constant 1.
    components: Vec<Polynomial>,
}

impl PolynomialComplexon {
    /// Components not listed are zero. Each component is checked for symmetry
    /// exactly and for range on the cube corners plus a fixed set of sample
    /// points.
    pub fn new(dim: usize, components: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut slots: Vec<Option<Polynomial>> = vec![None; dim + 1];
        for p in components {
            let d = p.arity().checked_sub(1).ok_or(Error::ArityMismatch {
                expected: 1,
                got: 0,
            })?;
            if d > dim {
                return Err(Error::DimensionOutOfRange {
                    d,
                    min: 0,
                    max: dim,
                });
            }
            if slots[d].is_some() {
                return Err(Error::InvalidComplexon(format!(
                    "dimension {d} given twice"
                )));
            }
            slots[d] = Some(p);
        }
        let mut components = Vec::with_capacity(dim + 1);
        for (d, slot) in slots.into_iter().enumerate() {
            let p = slot.unwrap_or_else(|| {
                if d == 0 {
                    Polynomial::constant(1, 1.0)
                } else {
                    Polynomial::zero(d + 1)
                }
            });
            if d == 0 && p != Polynomial::constant(1, 1.0) {
                return Err(Error::InvalidComplexon(
                    "the 0-dimensional component must be identically 1".into(),
                ));
            }
            validate_component(d, &p)?;
            components.push(p);
        }
        Ok(Self { dim, components })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn component(&self, d: usize) -> &Polynomial {
        &self.components[d]
    }
}

fn validate_component(d: usize, p: &Polynomial) -> Result<()> {
    let asym = p.asymmetry();
    if asym > VALIDATION_TOL {
        return Err(Error::InvalidComplexon(format!(
            "component {d} is not symmetric (coefficient mismatch {asym:e})"
        )));
    }
    let k = d + 1;
    let check = |x: &[f64]| {
        let v = p.evaluate(x);
        if !(-VALIDATION_TOL..=1.0 + VALIDATION_TOL).contains(&v) {
            return Err(Error::InvalidComplexon(format!(
                "component {d} takes value {v} at {x:?}"
            )));
        }
        Ok(())
    };
    if k <= 12 {
        for mask in 0u32..(1 << k) {
            let corner: Vec<f64> = (0..k).map(|b| (mask >> b & 1) as f64).collect();
            check(&corner)?;
        }
    }
    let mut rng = rng::seeded(0x5eed);
    let mut x = vec![0.0; k];
    for _ in 0..512 {
        x.iter_mut().for_each(|xi| *xi = rng::uniform(&mut rng));
        check(&x)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Complexon {
    Step(StepComplexon),
    Polynomial(PolynomialComplexon),
}

impl Complexon {
    /// `W^(1) ≡ 1`, `W^(2)(x, y, z) = (x + y + z) / 3`.
    pub fn mean_triangle() -> Self {
        let third = 1.0 / 3.0;
        let w1 = Polynomial::constant(2, 1.0);
        let w2 = Polynomial::new(
            3,
            [
                (third, vec![1, 0, 0]),
                (third, vec![0, 1, 0]),
                (third, vec![0, 0, 1]),
            ],
        )
        .expect("arity is consistent");
        Complexon::Polynomial(PolynomialComplexon::new(2, [w1, w2]).expect("valid complexon"))
    }

    /// Polynomial complexon with constant components `values[d - 1]` for
    /// `d = 1..=values.len()`.
    pub fn constant(values: &[f64]) -> Result<Self> {
        let comps = values
            .iter()
            .enumerate()
            .map(|(i, &c)| Polynomial::constant(i + 2, c));
        Ok(Complexon::Polynomial(PolynomialComplexon::new(
            values.len(),
            comps,
        )?))
    }

    pub fn induced(k: &SimplicialComplex) -> Self {
        Complexon::Step(StepComplexon::induced(k))
    }

    pub fn dim(&self) -> usize {
        match self {
            Complexon::Step(s) => s.dim(),
            Complexon::Polynomial(p) => p.dim(),
        }
    }

    /// `W^(d)(x)` for a point of length `d + 1` in the unit cube.
    pub fn evaluate(&self, d: usize, x: &[f64]) -> Result<f64> {
        if d > self.dim() {
            return Err(Error::DimensionOutOfRange {
                d,
                min: 0,
                max: self.dim(),
            });
        }
        if x.len() != d + 1 {
            return Err(Error::ArityMismatch {
                expected: d + 1,
                got: x.len(),
            });
        }
        if let Some(&bad) = x.iter().find(|xi| !(0.0..=1.0).contains(*xi)) {
            return Err(Error::CoordinateOutOfRange(bad));
        }
        Ok(self.evaluate_unchecked(d, x))
    }

    /// As [`Complexon::evaluate`] without argument validation.
    pub(crate) fn evaluate_unchecked(&self, d: usize, x: &[f64]) -> f64 {
        if d == 0 {
            return 1.0;
        }
        match self {
            Complexon::Step(s) => {
                let part = s.partition();
                let cell: Vec<usize> = x.iter().map(|&xi| part.lookup(xi)).collect();
                s.cell_value(&cell)
            }
            Complexon::Polynomial(p) => p.component(d).evaluate(x),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ComplexonSpec::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ComplexonSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidComplexon(e.to_string()))?;
        spec.try_into()
    }
}

/// Serialized form of a [`Complexon`]. Cell indices are one-based.
///
/// ```json
/// {"type": "polynomial", "dim": 2, "components": [
///   {"d": 1, "monomials": [[1, [0, 0]]]},
///   {"d": 2, "monomials": [["1/3", [1, 0, 0]], ["1/3", [0, 1, 0]], ["1/3", [0, 0, 1]]]}]}
/// {"type": "step", "n": 3, "dim": 1, "components": [{"d": 1, "cells": [[[1, 2], 1.0]]}]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ComplexonSpec {
    Step {
        n: usize,
        dim: usize,
        components: Vec<StepComponentSpec>,
    },
    Polynomial {
        dim: usize,
        components: Vec<PolynomialComponentSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepComponentSpec {
    pub d: usize,
    pub cells: Vec<(Vec<usize>, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialComponentSpec {
    pub d: usize,
    pub monomials: Vec<(Coefficient, Vec<u32>)>,
}

/// A coefficient written either as a JSON number or as a `"p/q"` string.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CoefficientRepr", into = "f64")]
pub struct Coefficient(pub f64);

#[derive(Deserialize)]
#[serde(untagged)]
enum CoefficientRepr {
    Number(f64),
    Text(String),
}

impl TryFrom<CoefficientRepr> for Coefficient {
    type Error = String;

    fn try_from(repr: CoefficientRepr) -> std::result::Result<Self, String> {
        match repr {
            CoefficientRepr::Number(x) => Ok(Coefficient(x)),
            CoefficientRepr::Text(s) => parse_rational(&s).map(Coefficient),
        }
    }
}

impl From<Coefficient> for f64 {
    fn from(c: Coefficient) -> f64 {
        c.0
    }
}

fn parse_rational(s: &str) -> std::result::Result<f64, String> {
    let bad = || format!("bad coefficient `{s}`");
    match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            Ok(p / q)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

impl From<&Complexon> for ComplexonSpec {
    fn from(w: &Complexon) -> Self {
        match w {
            Complexon::Step(s) => ComplexonSpec::Step {
                n: s.n(),
                dim: s.dim(),
                components: (1..=s.dim())
                    .filter(|&d| !s.cells(d).is_empty())
                    .map(|d| StepComponentSpec {
                        d,
                        cells: s
                            .cells(d)
                            .iter()
                            .map(|(k, &v)| (k.iter().map(|g| g + 1).collect(), v))
                            .collect(),
                    })
                    .collect(),
            },
            Complexon::Polynomial(p) => ComplexonSpec::Polynomial {
                dim: p.dim(),
                components: (1..=p.dim())
                    .filter(|&d| !p.component(d).is_zero())
                    .map(|d| PolynomialComponentSpec {
                        d,
                        monomials: p
                            .component(d)
                            .terms()
                            .iter()
                            .map(|t| (Coefficient(t.coeff), t.exponents.clone()))
                            .collect(),
                    })
                    .collect(),
            },
        }
    }
}

impl TryFrom<ComplexonSpec> for Complexon {
    type Error = Error;

    fn try_from(spec: ComplexonSpec) -> Result<Self> {
        match spec {
            ComplexonSpec::Step { n, dim, components } => {
                let mut cells = Vec::new();
                for c in components {
                    for (key, v) in c.cells {
                        if key.len() != c.d + 1 {
                            return Err(Error::ArityMismatch {
                                expected: c.d + 1,
                                got: key.len(),
                            });
                        }
                        if key.contains(&0) {
                            return Err(Error::VertexOutOfRange { vertex: 0, n });
                        }
                        cells.push((key.iter().map(|g| g - 1).collect(), v));
                    }
                }
                Ok(Complexon::Step(StepComplexon::new(n, dim, cells)?))
            }
            ComplexonSpec::Polynomial { dim, components } => {
                let polys = components
                    .into_iter()
                    .map(|c| {
                        Polynomial::new(c.d + 1, c.monomials.into_iter().map(|(k, e)| (k.0, e)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Complexon::Polynomial(PolynomialComplexon::new(dim, polys)?))
            }
        }
    }
}
