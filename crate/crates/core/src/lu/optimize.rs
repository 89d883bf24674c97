//! Multi-start Riemannian gradient descent over `U(n_1) x ... x U(n_r)`.

use super::objective::{orbit_residual, real_inner, value_and_gradient};
use super::OptimizerConfig;
use crate::linalg::{expm_anti_hermitian, seeded_rng, ComplexMatrix};
use crate::young::{random_local_unitary, LocalStructure};

const ARMIJO_C: f64 = 1e-4;
const SHRINK: f64 = 0.5;
const GROW: f64 = 2.0;
const MIN_STEP: f64 = 1e-18;
const MAX_STEP: f64 = 1e3;
/// Descent keeps going past `tol_success` down to `tol_success * POLISH`,
/// so certificates survive rescaling of the eigenvalues.
const POLISH: f64 = 1e-6;

/// Outcome of one descent.
#[derive(Debug, Clone)]
pub struct DescentRun {
    pub factors: Vec<ComplexMatrix>,
    pub value: f64,
    pub iterations: usize,
}

/// Best result over all restarts, with the restart (0-based) that produced it.
#[derive(Debug, Clone)]
pub struct MultiStartResult {
    pub best: DescentRun,
    pub best_restart: usize,
    pub restarts_run: usize,
}

fn restart_seed(seed: u64, restart: usize) -> u64 {
    seed ^ (restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Starting factors: identities on restart 0, Haar-random afterwards.
pub fn starting_point(dims: &LocalStructure, seed: u64, restart: usize) -> Vec<ComplexMatrix> {
    if restart == 0 {
        dims.dims().iter().map(|&d| ComplexMatrix::identity(d)).collect()
    } else {
        random_local_unitary(dims, &mut seeded_rng(restart_seed(seed, restart)))
    }
}

/// Steepest descent with Armijo backtracking, retracting by `u_k exp(-t grad_k)`.
///
/// Each line search starts from a Barzilai-Borwein step computed from the last
/// two gradients (in the right-trivialized algebra), falling back to doubling
/// the last accepted step when curvature information is unusable.
pub fn descend(
    rho1: &ComplexMatrix,
    rho2: &ComplexMatrix,
    dims: &LocalStructure,
    start: Vec<ComplexMatrix>,
    cfg: &OptimizerConfig,
) -> DescentRun {
    let target = cfg.tol_success * POLISH;
    let mut factors = start;
    let mut step = cfg.step_init;
    let mut iterations = 0;
    let (mut value, mut grads) = value_and_gradient(rho1, rho2, dims, &factors);

    while iterations < cfg.max_iters && value > target {
        let grad_sq: f64 = grads.iter().map(|g| g.frobenius_norm().powi(2)).sum();
        if grad_sq == 0.0 {
            break;
        }
        let mut accepted = None;
        while step >= MIN_STEP {
            let trial: Vec<ComplexMatrix> = factors
                .iter()
                .zip(&grads)
                .map(|(u, g)| {
                    let rot = expm_anti_hermitian(&g.scale_real(-step)).expect("gradient is anti-Hermitian");
                    u.matmul(&rot)
                })
                .collect();
            let trial_value = orbit_residual(rho1, rho2, &trial);
            if trial_value <= value - ARMIJO_C * step * grad_sq {
                accepted = Some(trial);
                break;
            }
            step *= SHRINK;
        }
        let Some(next) = accepted else {
            break;
        };
        iterations += 1;
        factors = next;
        let (new_value, new_grads) = value_and_gradient(rho1, rho2, dims, &factors);
        // s = -step * g_old, y = g_new - g_old
        let (mut ss, mut sy) = (0.0, 0.0);
        for (g_old, g_new) in grads.iter().zip(&new_grads) {
            let y = g_new - g_old;
            ss += step * step * g_old.frobenius_norm().powi(2);
            sy -= step * real_inner(g_old, &y);
        }
        step = if sy > 0.0 && (ss / sy).is_finite() { ss / sy } else { step * GROW };
        step = step.clamp(MIN_STEP, MAX_STEP);
        value = new_value;
        grads = new_grads;
    }
    DescentRun { factors, value, iterations }
}

/// Runs restarts in order and stops at the first whose value reaches
/// `tol_success`. Ties on the value keep the earliest restart.
pub fn multi_start(
    rho1: &ComplexMatrix,
    rho2: &ComplexMatrix,
    dims: &LocalStructure,
    cfg: &OptimizerConfig,
) -> MultiStartResult {
    let mut best: Option<(DescentRun, usize)> = None;
    let mut restarts_run = 0;
    for restart in 0..cfg.restarts {
        let run = descend(rho1, rho2, dims, starting_point(dims, cfg.seed, restart), cfg);
        restarts_run += 1;
        let improves = best.as_ref().is_none_or(|(b, _)| run.value < b.value);
        if improves {
            best = Some((run, restart));
        }
        if best.as_ref().is_some_and(|(b, _)| b.value <= cfg.tol_success) {
            break;
        }
    }
    let (best, best_restart) = best.expect("at least one restart");
    MultiStartResult { best, best_restart, restarts_run }
}
