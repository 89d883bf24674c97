//! Dense complex linear algebra: matrices, the Hermitian eigensolver, density
//! matrices and Haar sampling.

pub mod density;
pub mod eigen;
pub mod haar;
pub mod matrix;

pub use density::{
    conjugate, partial_trace, partial_trace_matrix, DensityMatrix, DensityTolerances,
    DEFAULT_TOL_HERM, DEFAULT_TOL_PSD, DEFAULT_TOL_TRACE, DEFAULT_TOL_UNITARY,
};
pub use eigen::{expm_anti_hermitian, hermitian_eig, hermitian_eigenvalues, HermitianEigen};
pub use haar::{haar_unitary, haar_unitary_from, seeded_rng};
pub use matrix::{frobenius_distance, kron, kron_all, ComplexMatrix};
