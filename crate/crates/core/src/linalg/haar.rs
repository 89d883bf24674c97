//! Haar-distributed random unitaries.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;

/// The generator behind every seeded routine in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-random element of `U(n)`, a pure function of `seed`.
pub fn haar_unitary(n: usize, seed: u64) -> ComplexMatrix {
    haar_unitary_from(n, &mut seeded_rng(seed))
}

/// Haar-random element of `U(n)` drawn from `rng`.
///
/// Orthonormalizes a complex Gaussian matrix column by column (modified
/// Gram-Schmidt) and multiplies column `j` by `conj(r_jj)/|r_jj|`, where
/// `r_jj` is the diagonal of the triangular factor.
pub fn haar_unitary_from<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    assert!(n >= 1, "unitary dimension must be positive");
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();

    for j in 0..n {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let qk = &done[k];
            let proj: Complex64 = qk.iter().zip(rest[0].iter()).map(|(q, x)| q.conj() * x).sum();
            for (x, q) in rest[0].iter_mut().zip(qk) {
                *x -= proj * q;
            }
        }
        let r_jj = Complex64::new(cols[j].iter().map(Complex64::norm_sqr).sum::<f64>().sqrt(), 0.0);
        // Gram-Schmidt leaves r_jj real positive; keep the phase fix explicit.
        let fix = r_jj.conj() / r_jj.norm();
        for x in cols[j].iter_mut() {
            *x = *x / r_jj * fix;
        }
    }

    let mut u = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            u[(i, j)] = x;
        }
    }
    u
}
