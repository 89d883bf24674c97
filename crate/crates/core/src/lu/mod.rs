//! Local unitary equivalence of density matrices and equality of double
//! cosets `U_n g U_lambda`.
//!
//! Two states of the same type `lambda` are locally equivalent exactly when
//! their eigenbases lie in the same double coset of `U(n)` by the local group
//! `U_n` (left) and the block group `U_lambda` (right). Deciding this is split
//! asymmetrically:
//!
//! 1. the global spectra are compared;
//! 2. a fingerprint of local invariants is compared, and any mismatch is a
//!    proof of inequivalence;
//! 3. otherwise a multi-start descent searches for local factors with
//!    `rho_1 = (u_1 (x) ... (x) u_r) rho_2 (...)^dagger`, and a factor set that
//!    meets the tolerance is a proof of equivalence.
//!
//! Anything else is reported as [`VerdictTag::Inconclusive`].

pub mod fingerprint;
pub mod objective;
pub mod optimize;
pub mod remap;

use crate::error::{Error, Result};
use crate::linalg::{frobenius_distance, kron_all, ComplexMatrix, DensityMatrix};
use crate::spectral::DEFAULT_CLUSTER_TOL;
use crate::young::{LocalStructure, Partition};

pub use fingerprint::{
    factor_subsets, first_difference, lu_fingerprint, ComponentKind, Fingerprint, FingerprintComponent,
    Witness, WitnessComponent,
};
pub use objective::{directional_derivative, objective, real_inner, FACTOR_UNITARY_TOL};
pub use optimize::{descend, multi_start, starting_point, DescentRun, MultiStartResult};
pub use remap::spectral_remap;

/// Unitarity demanded of double-coset representatives.
pub const COSET_UNITARY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Threshold on the squared Frobenius objective.
    pub tol_success: f64,
    pub step_init: f64,
    pub seed: u64,
    /// Tolerance of the spectrum and fingerprint screens.
    pub screen_tol: f64,
    /// Eigenvalue clustering used to find spectral projectors.
    pub cluster_tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_iters: 500,
            tol_success: 1e-9,
            step_init: 0.1,
            seed: 0,
            screen_tol: 1e-7,
            cluster_tol: DEFAULT_CLUSTER_TOL,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x > 0.0 && x.is_finite();
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(Error::InvalidConfig("restarts and max_iters must be at least 1".into()));
        }
        if !positive(self.tol_success)
            || !positive(self.step_init)
            || !positive(self.screen_tol)
            || !positive(self.cluster_tol)
        {
            return Err(Error::InvalidConfig("tolerances and step must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictTag {
    Equivalent,
    Inequivalent,
    Inconclusive,
}

impl VerdictTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictTag::Equivalent => "Equivalent",
            VerdictTag::Inequivalent => "Inequivalent",
            VerdictTag::Inconclusive => "Inconclusive",
        }
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, VerdictTag::Inconclusive)
    }
}

#[derive(Debug, Clone)]
pub struct EquivalenceVerdict {
    pub tag: VerdictTag,
    /// Local factors `u_k` with `rho_1 = (x)u_k rho_2 (x)u_k^dagger`, when equivalent.
    pub certificate: Option<Vec<ComplexMatrix>>,
    /// Separating fingerprint entry, when inequivalent.
    pub witness: Option<Witness>,
    /// Best objective value seen; the value at identity factors when a screen fired.
    pub residual: f64,
    /// Descent restarts executed; zero means a screen decided.
    pub restarts_run: usize,
}

/// Whether the sorted spectra agree entrywise within `tol`.
pub fn global_equivalent(rho1: &DensityMatrix, rho2: &DensityMatrix, tol: f64) -> Result<bool> {
    check_same_dim(rho1, rho2)?;
    let (a, b) = (rho1.spectrum(), rho2.spectrum());
    Ok(a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol))
}

fn check_same_dim(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<()> {
    if rho1.dim() == rho2.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "states of dimension {} and {}",
            rho1.dim(),
            rho2.dim()
        )))
    }
}

fn identity_factors(dims: &LocalStructure) -> Vec<ComplexMatrix> {
    dims.dims().iter().map(|&d| ComplexMatrix::identity(d)).collect()
}

/// Re-checks a certificate from scratch: unitary factors and
/// `|rho_1 - G rho_2 G^dagger|_F^2 <= tol`.
pub fn verify_certificate(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    factors: &[ComplexMatrix],
    tol: f64,
) -> Result<bool> {
    let dims = objective::structure_of(factors)?;
    dims.check_total(rho1.dim())?;
    check_same_dim(rho1, rho2)?;
    if factors.iter().any(|f| f.unitarity_deviation() > FACTOR_UNITARY_TOL) {
        return Ok(false);
    }
    let g = kron_all(factors).expect("non-empty");
    let d = frobenius_distance(rho1.matrix(), &rho2.matrix().conjugate_by(&g))?;
    Ok(d * d <= tol)
}

/// Decides whether `rho_1` and `rho_2` are related by a local unitary on `dims`.
pub fn certify_lu_equivalence(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    dims: &LocalStructure,
    cfg: &OptimizerConfig,
) -> Result<EquivalenceVerdict> {
    cfg.validate()?;
    check_same_dim(rho1, rho2)?;
    dims.check_total(rho1.dim())?;

    let fp1 = lu_fingerprint(rho1, dims, cfg.cluster_tol)?;
    let fp2 = lu_fingerprint(rho2, dims, cfg.cluster_tol)?;
    if let Some(witness) = first_difference(&fp1, &fp2, cfg.screen_tol) {
        let residual = objective::orbit_residual(rho1.matrix(), rho2.matrix(), &identity_factors(dims));
        return Ok(EquivalenceVerdict {
            tag: VerdictTag::Inequivalent,
            certificate: None,
            witness: Some(witness),
            residual,
            restarts_run: 0,
        });
    }

    let result = multi_start(rho1.matrix(), rho2.matrix(), dims, cfg);
    let best = result.best;
    let certified = best.value <= cfg.tol_success && verify_certificate(rho1, rho2, &best.factors, cfg.tol_success)?;
    Ok(EquivalenceVerdict {
        tag: if certified { VerdictTag::Equivalent } else { VerdictTag::Inconclusive },
        certificate: certified.then_some(best.factors),
        witness: None,
        residual: best.value,
        restarts_run: result.restarts_run,
    })
}

/// Probe eigenvalues `a_i = 2(l-i+1) / sum_j l_j 2(l-j+1)`, one per part of `lambda`.
pub fn probe_spectrum(lambda: &Partition) -> Vec<f64> {
    let l = lambda.len();
    let weight = |i: usize| 2.0 * (l - i) as f64;
    let total: f64 = lambda.parts().iter().enumerate().map(|(i, &m)| m as f64 * weight(i)).sum();
    (0..l).map(|i| weight(i) / total).collect()
}

/// `diag(a_1 I_{l_1}, ..., a_k I_{l_k})` for the probe values.
pub fn probe_lambda(lambda: &Partition) -> Vec<f64> {
    probe_spectrum(lambda)
        .into_iter()
        .zip(lambda.parts())
        .flat_map(|(v, &m)| std::iter::repeat_n(v, m))
        .collect()
}

/// `g Lambda* g^dagger` for the probe `Lambda*` of `lambda`.
pub fn probe_state(g: &ComplexMatrix, lambda: &Partition) -> Result<DensityMatrix> {
    g.check_unitary(COSET_UNITARY_TOL)?;
    lambda.check_partitions(g.rows())?;
    let diag = ComplexMatrix::from_real_diag(&probe_lambda(lambda));
    Ok(DensityMatrix::from_matrix_unchecked(diag.conjugate_by(g).hermitian_part()))
}

/// Whether `U_n g_1 U_lambda = U_n g_2 U_lambda`, decided through the probe
/// states `g_i Lambda* g_i^dagger`.
pub fn same_double_coset(
    g1: &ComplexMatrix,
    g2: &ComplexMatrix,
    lambda: &Partition,
    dims: &LocalStructure,
    cfg: &OptimizerConfig,
) -> Result<EquivalenceVerdict> {
    for g in [g1, g2] {
        g.check_square()?;
        dims.check_total(g.rows())?;
        g.check_unitary(COSET_UNITARY_TOL)?;
    }
    lambda.check_partitions(dims.total()).map_err(|_| {
        Error::DimensionMismatch(format!("{lambda} does not partition {}", dims.total()))
    })?;
    let rho1 = probe_state(g1, lambda)?;
    let rho2 = probe_state(g2, lambda)?;
    certify_lu_equivalence(&rho1, &rho2, dims, cfg)
}
