//! Local unitary equivalence of multipartite density matrices through double
//! cosets `U_n \ U(n) / U_lambda` of the unitary group.
//!
//! A state `rho = g Lambda g^dagger` of type `lambda` is determined up to
//! global unitaries by its spectrum, and up to local unitaries by the double
//! coset of its eigenbasis `g` under the local group `U_n` and the block group
//! `U_lambda`. The crate provides
//!
//! - [`linalg`]: complex matrices, a Jacobi eigensolver, partial traces and Haar sampling;
//! - [`spectral`]: the type and canonical form of a state;
//! - [`young`]: the additive and multiplicative Young subgroups and stabilizers;
//! - [`lu`]: certificate-producing local equivalence and double-coset tests;
//! - [`partitions`]: partition enumeration, counting and orbit dimensions;
//! - [`werner`]: the two-qubit Werner family and its strata.
//!
//! ```
//! use lucoset::linalg::{conjugate, DensityMatrix, ComplexMatrix};
//! use lucoset::lu::{certify_lu_equivalence, OptimizerConfig, VerdictTag};
//! use lucoset::young::{embed_multiplicative, LocalStructure};
//!
//! let dims = LocalStructure::new(vec![2, 2]).unwrap();
//! let rho = DensityMatrix::new(ComplexMatrix::from_real_diag(&[0.4, 0.3, 0.2, 0.1])).unwrap();
//! let x = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
//! let k = embed_multiplicative(&[x, ComplexMatrix::identity(2)], &dims).unwrap();
//! let flipped = conjugate(&rho, &k).unwrap();
//!
//! let verdict = certify_lu_equivalence(&flipped, &rho, &dims, &OptimizerConfig::with_seed(1)).unwrap();
//! assert_eq!(verdict.tag, VerdictTag::Equivalent);
//! ```

pub mod error;
pub mod linalg;
pub mod lu;
pub mod partitions;
pub mod spectral;
pub mod werner;
pub mod young;

pub use error::{DensityViolation, Error, Result};
pub use num_complex::Complex64;
