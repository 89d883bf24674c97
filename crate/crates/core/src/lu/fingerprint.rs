//! Local-unitary invariants used to prove inequivalence.
//!
//! For every proper non-empty subset `S` of the factors, the fingerprint holds
//! the spectrum of the reduced state on `S` and the spectrum of the reduced
//! normalized spectral projector `P_i / m_i` for every eigenvalue `i`. Local
//! unitaries act on reduced operators by local conjugation, so none of these
//! spectra move.

use std::fmt;

use crate::error::Result;
use crate::linalg::{partial_trace_matrix, hermitian_eigenvalues, DensityMatrix};
use crate::spectral::canonical_form;
use crate::young::LocalStructure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    /// Reduced density matrix.
    ReducedState,
    /// Reduced `P_i / m_i`, `i` counting distinct eigenvalues from the largest.
    ReducedProjector(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FingerprintComponent {
    pub kind: ComponentKind,
    /// 0-based factor indices kept.
    pub subset: Vec<usize>,
    /// Non-increasing.
    pub spectrum: Vec<f64>,
}

impl FingerprintComponent {
    fn same_slot(&self, other: &Self) -> bool {
        self.kind == other.kind && self.subset == other.subset
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fingerprint {
    /// Non-increasing.
    pub global_spectrum: Vec<f64>,
    pub components: Vec<FingerprintComponent>,
}

/// Which fingerprint entry separated two states.
#[derive(Debug, Clone, PartialEq)]
pub enum WitnessComponent {
    GlobalSpectrum,
    Reduced { kind: ComponentKind, subset: Vec<usize> },
}

/// A fingerprint entry that differs between two states.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub component: WitnessComponent,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    /// Largest entrywise difference.
    pub difference: f64,
}

impl fmt::Display for WitnessComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessComponent::GlobalSpectrum => f.write_str("global spectrum"),
            WitnessComponent::Reduced { kind, subset } => {
                // factors are numbered from 1 in messages
                let labels: Vec<String> = subset.iter().map(|k| (k + 1).to_string()).collect();
                let on = labels.join(",");
                match kind {
                    ComponentKind::ReducedState => write!(f, "reduced spectrum of the state on factors {{{on}}}"),
                    ComponentKind::ReducedProjector(i) => write!(
                        f,
                        "reduced spectrum of normalized spectral projector {} on factors {{{on}}}",
                        i + 1
                    ),
                }
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?} vs {:?}", self.component, self.left, self.right)
    }
}

/// Proper non-empty subsets of `0..r`: by size, lexicographic within a size.
pub fn factor_subsets(r: usize) -> Vec<Vec<usize>> {
    fn combinations(start: usize, r: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            combinations(i + 1, r, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..r {
        combinations(0, r, size, &mut Vec::new(), &mut out);
    }
    out
}

pub fn lu_fingerprint(rho: &DensityMatrix, dims: &LocalStructure, cluster_tol: f64) -> Result<Fingerprint> {
    dims.check_total(rho.dim())?;
    let cf = canonical_form(rho, cluster_tol)?;
    let normalized: Vec<_> = cf
        .projectors()
        .into_iter()
        .zip(cf.spectral_type.multiplicities())
        .map(|(p, &m)| p.scale_real(1.0 / m as f64))
        .collect();

    let spectrum_of = |m| hermitian_eigenvalues(&m, f64::INFINITY);
    let mut components = Vec::new();
    for subset in factor_subsets(dims.len()) {
        components.push(FingerprintComponent {
            kind: ComponentKind::ReducedState,
            subset: subset.clone(),
            spectrum: spectrum_of(partial_trace_matrix(rho.matrix(), dims, &subset)?)?,
        });
        for (i, p) in normalized.iter().enumerate() {
            components.push(FingerprintComponent {
                kind: ComponentKind::ReducedProjector(i),
                subset: subset.clone(),
                spectrum: spectrum_of(partial_trace_matrix(p, dims, &subset)?)?,
            });
        }
    }
    Ok(Fingerprint { global_spectrum: rho.spectrum(), components })
}

fn max_difference(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// First entry, in fingerprint order, on which `a` and `b` differ by more than
/// `tol`. Entries present in only one fingerprint (projectors of types that
/// cluster differently) are skipped.
pub fn first_difference(a: &Fingerprint, b: &Fingerprint, tol: f64) -> Option<Witness> {
    let d = max_difference(&a.global_spectrum, &b.global_spectrum);
    if d > tol {
        return Some(Witness {
            component: WitnessComponent::GlobalSpectrum,
            left: a.global_spectrum.clone(),
            right: b.global_spectrum.clone(),
            difference: d,
        });
    }
    for ca in &a.components {
        let Some(cb) = b.components.iter().find(|cb| cb.same_slot(ca)) else {
            continue;
        };
        let d = max_difference(&ca.spectrum, &cb.spectrum);
        if d > tol {
            return Some(Witness {
                component: WitnessComponent::Reduced { kind: ca.kind, subset: ca.subset.clone() },
                left: ca.spectrum.clone(),
                right: cb.spectrum.clone(),
                difference: d,
            });
        }
    }
    None
}
