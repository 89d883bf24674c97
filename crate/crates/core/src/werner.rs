//! The two-parameter two-qubit Werner family and its stratification by type.
//!
//! For `e >= 0` and `0 <= f <= 1 - e` the state has eigenvalues
//! `(1-f+e)/3, (1-f)/3, (1-f-e)/3, f`. The first three separate as soon as
//! `e > 0`; `f` meets them on the lines `f = (1+e)/4`, `f = 1/4` and
//! `f = (1-e)/4` respectively.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::spectral::spectral_type;
use crate::young::Partition;

/// Slack on the triangle constraints, so grid points computed in floating
/// point on the boundary `f = 1 - e` stay admissible.
const TRIANGLE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParams {
    e: f64,
    f: f64,
}

impl WernerParams {
    pub fn new(e: f64, f: f64) -> Result<Self> {
        let admissible = e.is_finite()
            && f.is_finite()
            && e >= 0.0
            && f >= 0.0
            && f <= 1.0 - e + TRIANGLE_SLACK;
        if admissible {
            Ok(Self { e, f })
        } else {
            Err(Error::OutOfTriangle { e, f })
        }
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn f(&self) -> f64 {
        self.f
    }
}

/// The 4x4 Werner matrix in the computational basis `|00>, |01>, |10>, |11>`.
pub fn werner_state(p: WernerParams) -> DensityMatrix {
    let (e, f) = (p.e, p.f);
    let mut m = ComplexMatrix::zeros(4, 4);
    let re = |x: f64| Complex64::new(x, 0.0);
    m[(0, 0)] = re((1.0 - e - f) / 3.0);
    m[(1, 1)] = re((1.0 + 2.0 * f) / 6.0);
    m[(2, 2)] = re((1.0 + 2.0 * f) / 6.0);
    m[(1, 2)] = re((1.0 - 4.0 * f) / 6.0);
    m[(2, 1)] = re((1.0 - 4.0 * f) / 6.0);
    m[(3, 3)] = re((1.0 + e - f) / 3.0);
    DensityMatrix::from_matrix_unchecked(m)
}

/// `[(1-f+e)/3, (1-f)/3, (1-f-e)/3, f]`, in that order.
pub fn werner_spectrum(p: WernerParams) -> [f64; 4] {
    let (e, f) = (p.e, p.f);
    [(1.0 - f + e) / 3.0, (1.0 - f) / 3.0, (1.0 - f - e) / 3.0, f]
}

/// Closed-form type of the Werner state.
///
/// Coincidences are tested on the defining equations with absolute tolerance:
/// `e <= tol` merges the first three eigenvalues, and
/// `|f - (1+e)/4|`, `|f - 1/4|`, `|f - (1-e)/4| <= tol` merge `f` with the
/// first, second and third respectively. Every coincidence that fires is merged.
pub fn werner_stratum(p: WernerParams, tol: f64) -> Partition {
    let (e, f) = (p.e, p.f);
    let mut uf = UnionFind::new(4);
    if e <= tol {
        uf.union(0, 1);
        uf.union(1, 2);
    }
    if (f - (1.0 + e) / 4.0).abs() <= tol {
        uf.union(3, 0);
    }
    if (f - 0.25).abs() <= tol {
        uf.union(3, 1);
    }
    if (f - (1.0 - e) / 4.0).abs() <= tol {
        uf.union(3, 2);
    }
    Partition::from_multiplicities(&uf.sizes()).expect("four eigenvalues")
}

/// Where a stratum label came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StratumSource {
    ClosedForm,
    Numeric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StratumRecord {
    pub e: f64,
    pub f: f64,
    /// Closed-form case analysis.
    pub partition: Partition,
    /// `spectral_type` of the constructed matrix.
    pub partition_numeric: Partition,
}

impl StratumRecord {
    pub fn agree(&self) -> bool {
        self.partition == self.partition_numeric
    }

    pub fn partition_from(&self, source: StratumSource) -> &Partition {
        match source {
            StratumSource::ClosedForm => &self.partition,
            StratumSource::Numeric => &self.partition_numeric,
        }
    }
}

/// Admissible points of the uniform `grid_e x grid_f` grid on `[0,1]^2`,
/// ordered by (e index, f index). Includes the boundary `e = 0` and,
/// where grid points land on it, `f = 1 - e`.
pub fn werner_grid(grid_e: usize, grid_f: usize) -> Result<Vec<WernerParams>> {
    if grid_e < 2 || grid_f < 2 {
        return Err(Error::OutOfRange {
            what: "grid count",
            value: grid_e.min(grid_f) as i64,
            range: ">= 2",
        });
    }
    let mut out = Vec::new();
    for i in 0..grid_e {
        let e = i as f64 / (grid_e - 1) as f64;
        for j in 0..grid_f {
            let f = j as f64 / (grid_f - 1) as f64;
            if let Ok(p) = WernerParams::new(e, f) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Labels every grid point by both the closed-form and the numeric stratum;
/// `tol` serves as the coincidence tolerance and as the cluster tolerance.
pub fn werner_scan(grid_e: usize, grid_f: usize, tol: f64) -> Result<Vec<StratumRecord>> {
    werner_grid(grid_e, grid_f)?
        .into_iter()
        .map(|p| {
            let numeric = spectral_type(&werner_state(p), tol)?;
            Ok(StratumRecord {
                e: p.e,
                f: p.f,
                partition: werner_stratum(p, tol),
                partition_numeric: numeric.partition().clone(),
            })
        })
        .collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.parent[x] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn sizes(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut counts = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            counts[r] += 1;
        }
        counts.into_iter().filter(|&c| c > 0).collect()
    }
}
