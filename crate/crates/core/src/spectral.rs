//! Spectral type and canonical form `rho = g Lambda g^dagger` of a density matrix.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::young::Partition;

/// Relative gap below which neighbouring eigenvalues are one eigenvalue.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Distinct eigenvalues (descending) with their multiplicities, and the
/// multiplicities re-sorted into a partition.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralType {
    distinct_values: Vec<f64>,
    multiplicities: Vec<usize>,
    partition: Partition,
}

impl SpectralType {
    /// Strictly decreasing, non-negative.
    pub fn distinct_values(&self) -> &[f64] {
        &self.distinct_values
    }

    /// Paired with [`Self::distinct_values`], in eigenvalue order.
    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Number of distinct eigenvalues `l`.
    pub fn len(&self) -> usize {
        self.distinct_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distinct_values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Column ranges of each eigenvalue block, in eigenvalue order.
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.multiplicities
            .iter()
            .map(|&m| {
                let r = start..start + m;
                start += m;
                r
            })
            .collect()
    }

    /// The eigenvalues repeated by multiplicity, descending.
    pub fn expanded_values(&self) -> Vec<f64> {
        self.distinct_values
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&v, &m)| std::iter::repeat_n(v, m))
            .collect()
    }
}

/// `rho = g Lambda g^dagger` with `Lambda = diag(a_1 I, ..., a_l I)`.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub big_lambda: DensityMatrix,
    /// Orthonormal eigenstates as columns, grouped to match `big_lambda`.
    pub g: ComplexMatrix,
    pub spectral_type: SpectralType,
}

impl CanonicalForm {
    /// Spectral projectors `P_i = G_i G_i^dagger`, in eigenvalue order.
    pub fn projectors(&self) -> Vec<ComplexMatrix> {
        let n = self.g.rows();
        self.spectral_type
            .block_ranges()
            .into_iter()
            .map(|range| {
                let mut p = ComplexMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        p[(i, j)] = range.clone().map(|k| self.g[(i, k)] * self.g[(j, k)].conj()).sum();
                    }
                }
                p
            })
            .collect()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.big_lambda.matrix().conjugate_by(&self.g)
    }
}

fn check_cluster_tol(cluster_tol: f64) -> Result<()> {
    if cluster_tol > 0.0 && cluster_tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("cluster tolerance must be positive, got {cluster_tol}")))
    }
}

/// Groups a non-increasing eigenvalue sequence by single linkage: neighbours
/// within `cluster_tol * max(1, values[0])` join one cluster, valued at the
/// cluster mean.
pub fn cluster_eigenvalues(values: &[f64], cluster_tol: f64) -> (Vec<f64>, Vec<usize>) {
    let Some(&top) = values.first() else {
        return (Vec::new(), Vec::new());
    };
    let threshold = cluster_tol * top.max(1.0);
    let mut distinct = Vec::new();
    let mut mults = Vec::new();
    let mut sum = top;
    let mut count = 1;
    for w in values.windows(2) {
        if w[0] - w[1] <= threshold {
            sum += w[1];
            count += 1;
        } else {
            distinct.push((sum / count as f64).max(0.0));
            mults.push(count);
            sum = w[1];
            count = 1;
        }
    }
    distinct.push((sum / count as f64).max(0.0));
    mults.push(count);
    (distinct, mults)
}

fn type_from_eigenvalues(values: &[f64], cluster_tol: f64) -> SpectralType {
    let (distinct_values, multiplicities) = cluster_eigenvalues(values, cluster_tol);
    let mut parts = multiplicities.clone();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    SpectralType { distinct_values, multiplicities, partition: Partition::from_parts_unchecked(parts) }
}

/// The type `lambda` of `rho`: the partition formed by its eigenvalue multiplicities.
pub fn spectral_type(rho: &DensityMatrix, cluster_tol: f64) -> Result<SpectralType> {
    check_cluster_tol(cluster_tol)?;
    Ok(type_from_eigenvalues(&rho.spectrum(), cluster_tol))
}

pub fn canonical_form(rho: &DensityMatrix, cluster_tol: f64) -> Result<CanonicalForm> {
    check_cluster_tol(cluster_tol)?;
    let eig = rho.eigen();
    let spectral_type = type_from_eigenvalues(&eig.eigenvalues, cluster_tol);
    let big_lambda =
        DensityMatrix::from_matrix_unchecked(ComplexMatrix::from_real_diag(&spectral_type.expanded_values()));
    Ok(CanonicalForm { big_lambda, g: eig.eigenvectors, spectral_type })
}

/// The eigenbasis `g` of the canonical form.
///
/// Only the double coset `U_n g U_lambda` is determined by `rho`; individual
/// entries of `g` are not invariants.
pub fn coset_representative(rho: &DensityMatrix, cluster_tol: f64) -> Result<ComplexMatrix> {
    canonical_form(rho, cluster_tol).map(|cf| cf.g)
}

/// `g diag(values) g^dagger`, where `values` lists one entry per column of `g`.
pub fn state_from_eigensystem(g: &ComplexMatrix, values: &[f64]) -> Result<DensityMatrix> {
    g.check_square()?;
    if values.len() != g.rows() {
        return Err(Error::ValueCountMismatch { expected: g.rows(), got: values.len() });
    }
    g.check_unitary(1e-8)?;
    DensityMatrix::new(ComplexMatrix::from_real_diag(values).conjugate_by(g).hermitian_part())
}
