//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a JSON string. The `*_json` functions hold the logic
//! and are plain Rust so they can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use complexon::experiment::{run_convergence, ExperimentConfig};
use complexon::sampling::{sample_complex, SampleConfig};
use complexon::spectral::{cso_spectrum, raised_adjacency};
use complexon::{Complexon, SimplicialComplex, Spectrum};

/// Largest node count accepted from the page.
pub const MAX_NODES: usize = 120;

#[derive(Serialize)]
struct Eigen {
    index: i64,
    value: f64,
}

#[derive(Serialize)]
struct ComplexReport {
    n: usize,
    counts: Vec<usize>,
    facets: Vec<Vec<usize>>,
    latent: Option<Vec<f64>>,
    raised: Vec<f64>,
    spectrum: Vec<Eigen>,
}

#[derive(Serialize)]
struct ConvergenceReport {
    indices: Vec<i64>,
    n: Vec<usize>,
    mean: Vec<Vec<f64>>,
    reference: Vec<Option<f64>>,
}

fn report(k: &SimplicialComplex, dim: usize, latent: Option<Vec<f64>>) -> Result<String, String> {
    if k.n() > MAX_NODES {
        return Err(format!("at most {MAX_NODES} nodes"));
    }
    let raised = raised_adjacency(k, dim).map_err(|e| e.to_string())?;
    let spectrum: Spectrum = cso_spectrum(k, dim).map_err(|e| e.to_string())?;
    let r = ComplexReport {
        n: k.n(),
        counts: (0..=k.dim()).map(|d| k.count(d)).collect(),
        facets: k
            .facets()
            .iter()
            .map(|f| f.iter().map(|v| v + 1).collect())
            .collect(),
        latent,
        raised: raised.matrix.as_slice().to_vec(),
        spectrum: spectrum
            .pairs()
            .iter()
            .map(|p| Eigen {
                index: p.index,
                value: p.value,
            })
            .collect(),
    };
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

/// Parses a complex in the text format and reports its raised adjacency
/// matrix and CSO spectrum at dimension `dim`.
pub fn spectrum_json(text: &str, dim: usize) -> Result<String, String> {
    let k = SimplicialComplex::from_text(text).map_err(|e| e.to_string())?;
    report(&k, dim, None)
}

/// Samples a 2-dimensional complex on `n` nodes from the mean-triangle
/// complexon and reports it.
pub fn sample_json(n: usize, seed: u64) -> Result<String, String> {
    if n > MAX_NODES {
        return Err(format!("at most {MAX_NODES} nodes"));
    }
    let cfg = SampleConfig { n, dim: 2, seed };
    let (k, x) = sample_complex(&Complexon::mean_triangle(), cfg).map_err(|e| e.to_string())?;
    report(&k, 2, Some(x))
}

/// Mean tracked eigenvalues `λ_1, λ_2, λ_-1, λ_-2` for `n_min..=n_max`.
pub fn convergence_json(
    n_min: usize,
    n_max: usize,
    trials: usize,
    seed: u64,
) -> Result<String, String> {
    if n_max > MAX_NODES {
        return Err(format!("at most {MAX_NODES} nodes"));
    }
    let cfg = ExperimentConfig {
        n_min,
        n_max,
        trials,
        seed,
        ..ExperimentConfig::default()
    };
    let table = run_convergence(&cfg, &Complexon::mean_triangle()).map_err(|e| e.to_string())?;
    let r = ConvergenceReport {
        indices: table.indices.clone(),
        n: table.summary.iter().map(|s| s.n).collect(),
        mean: table.summary.iter().map(|s| s.mean.clone()).collect(),
        reference: table.reference.clone(),
    };
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn spectrum(text: &str, dim: usize) -> Result<String, JsError> {
    spectrum_json(text, dim).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sample(n: usize, seed: u32) -> Result<String, JsError> {
    sample_json(n, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn convergence(
    n_min: usize,
    n_max: usize,
    trials: usize,
    seed: u32,
) -> Result<String, JsError> {
    convergence_json(n_min, n_max, trials, seed as u64).map_err(|e| JsError::new(&e))
}
