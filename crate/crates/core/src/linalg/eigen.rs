//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Off-diagonal Frobenius mass, relative to `|M|_F`, at which the sweeps stop.
pub const JACOBI_CONVERGENCE: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;
/// Components below this modulus are skipped when fixing eigenvector phases.
const PHASE_PIVOT_EPS: f64 = 1e-12;

/// Spectral decomposition `M = V diag(eigenvalues) V^dagger`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Non-increasing.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `j` pairs with `eigenvalues[j]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let d = ComplexMatrix::from_real_diag(&self.eigenvalues);
        v.matmul(&d).matmul(&v.adjoint())
    }
}

/// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations.
///
/// Eigenvalues come back non-increasing. Exact ties keep the order in which
/// the sweeps left them on the diagonal, and every eigenvector column is
/// rephased so its first non-negligible component is real and positive, so the
/// output is a deterministic function of the input.
pub fn hermitian_eig(m: &ComplexMatrix, tol: f64) -> Result<HermitianEigen> {
    m.check_square()?;
    let deviation = m.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation, tol });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let norm = a.frobenius_norm();

    if norm > 0.0 {
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) < JACOBI_CONVERGENCE * norm {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: exact ties keep first-encounter order
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let pivot = (0..n)
            .map(|k| v[(k, src)])
            .find(|z| z.norm() > PHASE_PIVOT_EPS)
            .unwrap_or(Complex64::new(1.0, 0.0));
        let phase = pivot.conj() / pivot.norm();
        for k in 0..n {
            eigenvectors[(k, dst)] = v[(k, src)] * phase;
        }
    }
    Ok(HermitianEigen { eigenvalues, eigenvectors })
}

/// Eigenvalues only, non-increasing.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    hermitian_eig(m, tol).map(|e| e.eigenvalues)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Applies `A <- J^dagger A J`, `V <- V J` with the unitary plane rotation that
/// annihilates `A[p, q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let s_phase = phase * s;
    let n = a.rows();

    // columns: A J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s_phase.conj();
        a[(k, q)] = akp * s_phase + akq * c;
    }
    // rows: J^dagger (A J)
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s_phase;
        a[(q, k)] = apk * s_phase.conj() + aqk * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s_phase.conj();
        v[(k, q)] = vkp * s_phase + vkq * c;
    }
}

/// `exp(A)` for anti-Hermitian `A`, via the eigendecomposition of `iA`.
///
/// `A = -iH` with `H = iA` Hermitian, so `exp(A) = V diag(exp(-i h)) V^dagger`
/// is unitary to eigensolver accuracy.
pub fn expm_anti_hermitian(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let h = a.scale(Complex64::new(0.0, 1.0));
    let eig = hermitian_eig(&h, 1e-8 * (1.0 + h.frobenius_norm()))?;
    let phases: Vec<Complex64> =
        eig.eigenvalues.iter().map(|&x| Complex64::from_polar(1.0, -x)).collect();
    let v = &eig.eigenvectors;
    Ok(v.matmul(&ComplexMatrix::from_diag(&phases)).matmul(&v.adjoint()))
}
