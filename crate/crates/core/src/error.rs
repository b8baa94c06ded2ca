use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a complex needs at least one node")]
    NoNodes,
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("empty simplex in input")]
    EmptySimplex,
    #[error("simplex with {size} vertices is too large to close (limit {limit})")]
    SimplexTooLarge { size: usize, limit: usize },
    #[error("search space of {required} exceeds the configured limit {limit}")]
    SizeGuard { required: u128, limit: u128 },
    #[error("dimension {d} is outside the supported range {min}..={max}")]
    DimensionOutOfRange { d: usize, min: usize, max: usize },
    #[error("coordinate {0} is outside [0, 1]")]
    CoordinateOutOfRange(f64),
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("quadrature resolution must be positive")]
    InvalidQuadrature,
    #[error("exact grid summation requires a step complexon")]
    ExactGridOnAnalytic,
    #[error("partition sizes differ: {left} vs {right}")]
    PartitionMismatch { left: usize, right: usize },
    #[error("exhaustive cut norm limited to n <= {max}, got {n}")]
    CutNormTooLarge { n: usize, max: usize },
    #[error("cut norm requires step kernels")]
    CutNormNeedsStep,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("signal and complexon are incompatible: {0}")]
    IncompatibleSignal(String),
    #[error("need at least {needed} nodes, got {n}")]
    TooFewNodes { n: usize, needed: usize },
    #[error("invalid complexon: {0}")]
    InvalidComplexon(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
