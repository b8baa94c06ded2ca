//! Simplicial complexes, complexons and complexon shift operators.
//!
//! A complexon is a family of symmetric kernels `W^(d): [0,1]^(d+1) -> [0,1]`
//! that acts as the limit object of a sequence of simplicial complexes. This
//! crate builds complexes, counts homomorphisms, evaluates marginals and raised
//! adjacency matrices, computes CSO spectra and samples complexes from a
//! complexon.
//!
//! ```
//! use complexon::{cso_spectrum, SimplicialComplex};
//!
//! let k = SimplicialComplex::new(3, &[vec![1, 2, 3]]).unwrap();
//! let s = cso_spectrum(&k, 2).unwrap();
//! assert!((s.eigenvalue(1) - 2.0 / 9.0).abs() < 1e-12);
//! ```

pub mod complex;
pub mod complexon;
pub mod cut_norm;
pub mod density;
pub mod error;
pub mod experiment;
pub mod format;
pub mod hom;
pub mod linalg;
pub mod marginal;
pub mod plot;
pub mod polynomial;
pub mod rng;
pub mod sampling;
pub mod spectral;

pub use complex::SimplicialComplex;
pub use complexon::{Complexon, Equipartition, PolynomialComplexon, StepComplexon};
pub use cut_norm::step_cut_norm;
pub use density::{density_in_complexon, Estimator};
pub use error::{Error, Result};
pub use experiment::{run_convergence, ConvergenceTable, ExperimentConfig};
pub use hom::{hom_count, hom_density, HomDensity, SizeGuard};
pub use linalg::{sym_eig, EigenPair, Matrix, Spectrum};
pub use marginal::{marginal, MarginalKernel, Quadrature};
pub use polynomial::Polynomial;
pub use sampling::{empirical_simplex_rate, sample_complex, SampleConfig};
pub use spectral::{
    apply_cso, cso_spectrum, discretized_kernel_spectrum, raised_adjacency, ComplexonSignal,
    RaisedAdjacency, ShiftForm,
};
