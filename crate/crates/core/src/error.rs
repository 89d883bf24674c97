use thiserror::Error;

/// Errors raised by the numeric and combinatorial routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M^dagger| = {deviation:e} exceeds {tol:e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("matrix is not unitary: |U^dagger U - I|_F = {deviation:e} exceeds {tol:e}")]
    NotUnitary { deviation: f64, tol: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid matrix data: {0}")]
    InvalidMatrix(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(DensityViolation),

    #[error("expected {expected} new eigenvalues, got {got}")]
    ValueCountMismatch { expected: usize, got: usize },

    #[error("eigenvalue assignment is not a distribution: {0}")]
    NotADistribution(String),

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange { what: &'static str, value: i64, range: &'static str },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{partition} is not a partition of {n}")]
    NotAPartitionOfN { partition: String, n: usize },

    #[error("invalid local structure: {0}")]
    InvalidLocalStructure(String),

    #[error("Werner parameters (e={e}, f={f}) lie outside the admissible triangle e >= 0, 0 <= f <= 1 - e")]
    OutOfTriangle { e: f64, f: f64 },

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
}

/// The density-matrix invariant a candidate matrix violated.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DensityViolation {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("not Hermitian (max |M - M^dagger| = {0:e})")]
    NotHermitian(f64),
    #[error("trace is {0}, expected 1")]
    TraceNotOne(f64),
    #[error("not positive semidefinite (min eigenvalue {0:e})")]
    NegativeEigenvalue(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
