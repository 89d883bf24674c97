//! Distance from `rho_1` to the local orbit of `rho_2`, and its Riemannian gradient.

use crate::error::{Error, Result};
use crate::linalg::{kron_all, partial_trace_matrix, ComplexMatrix, DensityMatrix};
use crate::young::LocalStructure;

/// Unitarity demanded of certificate factors.
pub const FACTOR_UNITARY_TOL: f64 = 1e-9;

/// Factor dimensions implied by a list of square factors.
pub fn structure_of(factors: &[ComplexMatrix]) -> Result<LocalStructure> {
    let dims = factors
        .iter()
        .map(|f| f.check_square().map(|_| f.rows()))
        .collect::<Result<Vec<_>>>()?;
    LocalStructure::new(dims)
}

/// `|rho_1 - G rho_2 G^dagger|_F^2` with `G = u_1 (x) ... (x) u_r`.
pub fn objective(rho1: &DensityMatrix, rho2: &DensityMatrix, factors: &[ComplexMatrix]) -> Result<f64> {
    let dims = structure_of(factors)?;
    if rho1.dim() != rho2.dim() || dims.total() != rho1.dim() {
        return Err(Error::DimensionMismatch(format!(
            "states of dimension {} and {} with factors {dims}",
            rho1.dim(),
            rho2.dim()
        )));
    }
    for f in factors {
        f.check_unitary(FACTOR_UNITARY_TOL)?;
    }
    Ok(orbit_residual(rho1.matrix(), rho2.matrix(), factors))
}

/// Unchecked objective on raw matrices.
pub(crate) fn orbit_residual(rho1: &ComplexMatrix, rho2: &ComplexMatrix, factors: &[ComplexMatrix]) -> f64 {
    let g = kron_all(factors).expect("non-empty factors");
    let r = rho1 - &rho2.conjugate_by(&g);
    r.as_slice().iter().map(|z| z.norm_sqr()).sum()
}

/// Objective value and per-factor Euclidean gradients in the anti-Hermitian
/// chart `u_k -> u_k exp(A_k)` about `A = 0`.
///
/// With `R = rho_1 - G rho_2 G^dagger`, `R' = G^dagger R G` and
/// `C = rho_2 R' - R' rho_2`, the gradient block `k` is `2 Tr_{not k}(C)`,
/// anti-Hermitian because `C` is.
pub(crate) fn value_and_gradient(
    rho1: &ComplexMatrix,
    rho2: &ComplexMatrix,
    dims: &LocalStructure,
    factors: &[ComplexMatrix],
) -> (f64, Vec<ComplexMatrix>) {
    let g = kron_all(factors).expect("non-empty factors");
    let g_adj = g.adjoint();
    let r = rho1 - &g.matmul(rho2).matmul(&g_adj);
    let value = r.as_slice().iter().map(|z| z.norm_sqr()).sum();
    let r_pulled = g_adj.matmul(&r).matmul(&g);
    let c = rho2.commutator(&r_pulled);
    let grads = (0..dims.len())
        .map(|k| {
            partial_trace_matrix(&c, dims, &[k])
                .expect("dimensions checked by caller")
                .scale_real(2.0)
        })
        .collect();
    (value, grads)
}

/// Frobenius inner product `Re Tr(a^dagger b)`.
pub fn real_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| (x.conj() * y).re).sum()
}

/// Analytic derivative of `t -> objective(u_k exp(t A_k))` at `t = 0` for
/// anti-Hermitian directions `A_k`.
pub fn directional_derivative(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    factors: &[ComplexMatrix],
    directions: &[ComplexMatrix],
) -> Result<f64> {
    let dims = structure_of(factors)?;
    if directions.len() != factors.len()
        || directions.iter().zip(factors).any(|(d, f)| d.shape() != f.shape())
    {
        return Err(Error::ShapeMismatch("one direction per factor, same shapes".into()));
    }
    objective(rho1, rho2, factors)?;
    let (_, grads) = value_and_gradient(rho1.matrix(), rho2.matrix(), &dims, factors);
    Ok(directions.iter().zip(&grads).map(|(d, g)| real_inner(d, g)).sum())
}
