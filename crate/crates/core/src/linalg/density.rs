//! Density matrices, unitary conjugation and partial traces.

use num_complex::Complex64;

use super::eigen::{hermitian_eig, HermitianEigen};
use super::matrix::ComplexMatrix;
use crate::error::{DensityViolation, Error, Result};
use crate::young::LocalStructure;

pub const DEFAULT_TOL_HERM: f64 = 1e-10;
pub const DEFAULT_TOL_TRACE: f64 = 1e-10;
pub const DEFAULT_TOL_PSD: f64 = 1e-9;
/// Unitarity required of a conjugating matrix.
pub const DEFAULT_TOL_UNITARY: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityTolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub psd: f64,
}

impl Default for DensityTolerances {
    fn default() -> Self {
        Self { hermitian: DEFAULT_TOL_HERM, trace: DEFAULT_TOL_TRACE, psd: DEFAULT_TOL_PSD }
    }
}

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, DensityTolerances::default())
    }

    pub fn with_tolerances(matrix: ComplexMatrix, tol: DensityTolerances) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols {
            return Err(Error::InvalidDensity(DensityViolation::NotSquare { rows, cols }));
        }
        let herm = matrix.hermitian_deviation();
        if herm > tol.hermitian {
            return Err(Error::InvalidDensity(DensityViolation::NotHermitian(herm)));
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol.trace || trace.im.abs() > tol.trace {
            return Err(Error::InvalidDensity(DensityViolation::TraceNotOne(trace.re)));
        }
        let eig = hermitian_eig(&matrix, tol.hermitian)?;
        let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -tol.psd {
            return Err(Error::InvalidDensity(DensityViolation::NegativeEigenvalue(min)));
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix known to be a density matrix up to rounding.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.is_square());
        Self { matrix }
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(n).scale_real(1.0 / n as f64) }
    }

    /// `|psi><psi|` for a normalized state vector.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(psi, psi))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigen(&self) -> HermitianEigen {
        hermitian_eig(&self.matrix, f64::INFINITY).expect("density matrix is square")
    }

    /// Eigenvalues, non-increasing.
    pub fn spectrum(&self) -> Vec<f64> {
        self.eigen().eigenvalues
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.matrix.as_slice().iter().map(Complex64::norm_sqr).sum()
    }
}

/// `g rho g^dagger`.
pub fn conjugate(rho: &DensityMatrix, g: &ComplexMatrix) -> Result<DensityMatrix> {
    g.check_square()?;
    if g.rows() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "unitary is {0}x{0}, state has dimension {1}",
            g.rows(),
            rho.dim()
        )));
    }
    g.check_unitary(DEFAULT_TOL_UNITARY)?;
    let out = rho.matrix.conjugate_by(g).hermitian_part();
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Partial trace keeping the factors listed in `keep` (0-based, any order,
/// duplicates ignored). The result lives on `prod_{i in keep} n_i`.
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    dims: &LocalStructure,
    keep: &[usize],
) -> Result<ComplexMatrix> {
    m.check_square()?;
    if m.rows() != dims.total() {
        return Err(Error::DimensionMismatch(format!(
            "matrix dimension {} but factor dimensions {dims} multiply to {}",
            m.rows(),
            dims.total()
        )));
    }
    let r = dims.len();
    let mut kept = vec![false; r];
    for &k in keep {
        if k >= r {
            return Err(Error::DimensionMismatch(format!(
                "factor index {k} out of range for {r} factors"
            )));
        }
        kept[k] = true;
    }
    if !kept.iter().any(|&k| k) {
        return Err(Error::DimensionMismatch("no factor kept".into()));
    }

    let n = m.rows();
    let keep_dim: usize = dims.dims().iter().zip(&kept).filter(|(_, &k)| k).map(|(d, _)| d).product();
    // split every global index into (kept multi-index, traced multi-index)
    let mut kept_idx = vec![0usize; n];
    let mut traced_idx = vec![0usize; n];
    for (idx, (ki, ti)) in kept_idx.iter_mut().zip(traced_idx.iter_mut()).enumerate() {
        let mut rem = idx;
        let mut kmul = 1;
        let mut tmul = 1;
        for (f, &d) in dims.dims().iter().enumerate().rev() {
            let digit = rem % d;
            rem /= d;
            if kept[f] {
                *ki += digit * kmul;
                kmul *= d;
            } else {
                *ti += digit * tmul;
                tmul *= d;
            }
        }
    }

    let mut out = ComplexMatrix::zeros(keep_dim, keep_dim);
    for row in 0..n {
        for col in 0..n {
            if traced_idx[row] == traced_idx[col] {
                out[(kept_idx[row], kept_idx[col])] += m[(row, col)];
            }
        }
    }
    Ok(out)
}

/// Reduced state on the factors in `keep`.
pub fn partial_trace(
    rho: &DensityMatrix,
    dims: &LocalStructure,
    keep: &[usize],
) -> Result<ComplexMatrix> {
    partial_trace_matrix(&rho.matrix, dims, keep)
}
