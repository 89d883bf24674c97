//! Moving the eigenvalues of a state while keeping its spectral projectors.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::spectral::canonical_form;

const NORMALIZATION_TOL: f64 = 1e-9;

/// `sum_i new_values[i] P_i`, with `P_i` the spectral projector of the `i`-th
/// largest distinct eigenvalue of `rho`.
///
/// `new_values` must be strictly decreasing, non-negative, separated by more
/// than the cluster threshold (so the type survives) and normalized against
/// the multiplicities.
pub fn spectral_remap(rho: &DensityMatrix, new_values: &[f64], cluster_tol: f64) -> Result<DensityMatrix> {
    let cf = canonical_form(rho, cluster_tol)?;
    let ty = &cf.spectral_type;
    if new_values.len() != ty.len() {
        return Err(Error::ValueCountMismatch { expected: ty.len(), got: new_values.len() });
    }
    if let Some(v) = new_values.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(Error::NotADistribution(format!("value {v} is negative or not finite")));
    }
    let threshold = cluster_tol * new_values[0].max(1.0);
    if new_values.windows(2).any(|w| w[0] - w[1] <= threshold) {
        return Err(Error::NotADistribution("values are not strictly decreasing".into()));
    }
    let total: f64 = new_values.iter().zip(ty.multiplicities()).map(|(v, &m)| v * m as f64).sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotADistribution(format!("weighted sum is {total}, expected 1")));
    }
    let expanded: Vec<f64> = new_values
        .iter()
        .zip(ty.multiplicities())
        .flat_map(|(&v, &m)| std::iter::repeat_n(v, m))
        .collect();
    let m = ComplexMatrix::from_real_diag(&expanded).conjugate_by(&cf.g).hermitian_part();
    Ok(DensityMatrix::from_matrix_unchecked(m))
}
