//! Additive and multiplicative Young subgroups of `U(n)` and stabilizer
//! subgroups of density matrices.
//!
//! The additive Young subgroup `U_lambda = U(l_1) x ... x U(l_k)` sits in
//! `U(n)` as block-diagonal matrices; the multiplicative one
//! `U_n = U(n_1) (x) ... (x) U(n_r)` as Kronecker products. The stabilizer of a
//! state of type `lambda` with eigenbasis `g` is `g U_lambda g^dagger`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{haar_unitary_from, kron_all, seeded_rng, ComplexMatrix, DensityMatrix};
use crate::spectral::CanonicalForm;

/// Default commutator-norm threshold for [`stabilizer_contains`].
pub const DEFAULT_STABILIZER_TOL: f64 = 1e-8;
/// Unitarity demanded of group elements handed to the embeddings.
pub const EMBED_UNITARY_TOL: f64 = 1e-10;

/// A partition of `n`: non-increasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        Ok(Self { parts })
    }

    /// Sorts arbitrary positive multiplicities into a partition.
    pub fn from_multiplicities(mults: &[usize]) -> Result<Self> {
        let mut parts = mults.to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(Self::new(parts.clone()).is_ok());
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn check_partitions(&self, n: usize) -> Result<()> {
        if self.n() == n {
            Ok(())
        } else {
            Err(Error::NotAPartitionOfN { partition: self.to_string(), n })
        }
    }

    /// Whether `self` is obtained from `finer` by merging groups of its parts.
    pub fn is_coarsening_of(&self, finer: &Partition) -> bool {
        if self.n() != finer.n() {
            return false;
        }
        // assign finer parts (largest first) to bins with the coarse capacities
        fn place(items: &[usize], bins: &mut [usize]) -> bool {
            let Some((&first, rest)) = items.split_first() else {
                return bins.iter().all(|&b| b == 0);
            };
            for i in 0..bins.len() {
                if bins[i] >= first && !bins[..i].contains(&bins[i]) {
                    bins[i] -= first;
                    if place(rest, bins) {
                        return true;
                    }
                    bins[i] += first;
                }
            }
            false
        }
        let mut bins = self.parts.clone();
        place(&finer.parts, &mut bins)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        f.write_str(&s.join("-"))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the `2-1-1` form.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim()
            .split('-')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// Ordered factor dimensions `(n_1, ..., n_r)` of `H = H_1 (x) ... (x) H_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalStructure {
    dims: Vec<usize>,
}

impl LocalStructure {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidLocalStructure("no factors".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidLocalStructure(format!("{dims:?} has a zero dimension")));
        }
        Ok(Self { dims })
    }

    /// The trivial factorization `n = n`.
    pub fn global(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of factors `r`.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Global dimension `n = prod n_i`.
    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn check_total(&self, n: usize) -> Result<()> {
        if self.total() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "factor dimensions {self} multiply to {}, expected {n}",
                self.total()
            )))
        }
    }
}

impl fmt::Display for LocalStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.dims.iter().map(usize::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for LocalStructure {
    type Err = Error;

    /// Parses the `2,3` form.
    fn from_str(s: &str) -> Result<Self> {
        let dims = s
            .trim()
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidLocalStructure(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims)
    }
}

/// Block-diagonal embedding `g_1 x ... x g_l` of `U(s_1) x ... x U(s_l)`.
///
/// `block_sizes` is taken in the given order, so it may be the eigenvalue-ordered
/// multiplicities of a canonical form rather than a sorted partition.
pub fn embed_additive(blocks: &[ComplexMatrix], block_sizes: &[usize]) -> Result<ComplexMatrix> {
    if blocks.len() != block_sizes.len() || blocks.is_empty() {
        return Err(Error::ShapeMismatch(format!(
            "{} blocks for {} block sizes",
            blocks.len(),
            block_sizes.len()
        )));
    }
    for (i, (b, &s)) in blocks.iter().zip(block_sizes).enumerate() {
        if b.shape() != (s, s) {
            return Err(Error::ShapeMismatch(format!(
                "block {i} is {}x{}, expected {s}x{s}",
                b.rows(),
                b.cols()
            )));
        }
        b.check_unitary(EMBED_UNITARY_TOL)?;
    }
    let n: usize = block_sizes.iter().sum();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut offset = 0;
    for (b, &s) in blocks.iter().zip(block_sizes) {
        for i in 0..s {
            for j in 0..s {
                out[(offset + i, offset + j)] = b[(i, j)];
            }
        }
        offset += s;
    }
    Ok(out)
}

/// Tensor embedding `g_1 (x) ... (x) g_r` of the local unitary group.
pub fn embed_multiplicative(factors: &[ComplexMatrix], dims: &LocalStructure) -> Result<ComplexMatrix> {
    if factors.len() != dims.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} factors for {} subsystems",
            factors.len(),
            dims.len()
        )));
    }
    for (i, (g, &d)) in factors.iter().zip(dims.dims()).enumerate() {
        if g.shape() != (d, d) {
            return Err(Error::ShapeMismatch(format!(
                "factor {i} is {}x{}, expected {d}x{d}",
                g.rows(),
                g.cols()
            )));
        }
        g.check_unitary(EMBED_UNITARY_TOL)?;
    }
    Ok(kron_all(factors).expect("at least one factor"))
}

/// Haar-random element of the local group `U_n`.
pub fn random_local_unitary<R: Rng + ?Sized>(dims: &LocalStructure, rng: &mut R) -> Vec<ComplexMatrix> {
    dims.dims().iter().map(|&d| haar_unitary_from(d, rng)).collect()
}

/// Haar-random element of `U(s_1) x ... x U(s_l)`, as its blocks.
pub fn random_young_blocks<R: Rng + ?Sized>(block_sizes: &[usize], rng: &mut R) -> Vec<ComplexMatrix> {
    block_sizes.iter().map(|&s| haar_unitary_from(s, rng)).collect()
}

/// Whether `g` fixes `rho` under conjugation, tested as `|g rho - rho g|_F <= tol`.
pub fn stabilizer_contains(rho: &DensityMatrix, g: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(commutator_norm(rho, g)? <= tol)
}

/// `|g rho - rho g|_F`, after checking that `g` is a unitary of matching size.
pub fn commutator_norm(rho: &DensityMatrix, g: &ComplexMatrix) -> Result<f64> {
    g.check_square()?;
    if g.rows() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "unitary is {0}x{0}, state has dimension {1}",
            g.rows(),
            rho.dim()
        )));
    }
    g.check_unitary(EMBED_UNITARY_TOL)?;
    Ok(g.commutator(rho.matrix()).frobenius_norm())
}

/// Random element `g c g^dagger` of the stabilizer, with `c` Haar in the
/// block subgroup aligned with the canonical form's eigenvalue blocks.
pub fn random_stabilizer_element(cf: &CanonicalForm, seed: u64) -> ComplexMatrix {
    let mut rng = seeded_rng(seed);
    let sizes = cf.spectral_type.multiplicities();
    let blocks = random_young_blocks(sizes, &mut rng);
    let c = embed_additive(&blocks, sizes).expect("Haar blocks match their sizes");
    c.conjugate_by(&cf.g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_unitary, DensityTolerances};
    use crate::spectral::{canonical_form, DEFAULT_CLUSTER_TOL};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn partition_parsing_and_display() {
        let p: Partition = "2-1-1".parse().unwrap();
        assert_eq!(p.parts(), &[2, 1, 1]);
        assert_eq!(p.to_string(), "2-1-1");
        assert_eq!(p.n(), 4);
        assert!("1-2".parse::<Partition>().is_err());
        assert!("2-0".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(Partition::from_multiplicities(&[1, 3]).unwrap().parts(), &[3, 1]);
    }

    #[test]
    fn local_structure_parsing() {
        let d: LocalStructure = "2,3".parse().unwrap();
        assert_eq!(d.total(), 6);
        assert_eq!(d.to_string(), "2,3");
        assert!("2,0".parse::<LocalStructure>().is_err());
        assert!(LocalStructure::new(vec![]).is_err());
    }

    #[test]
    fn coarsening_order() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert!(p("3-1").is_coarsening_of(&p("2-1-1")));
        assert!(p("2-2").is_coarsening_of(&p("2-1-1")));
        assert!(p("4").is_coarsening_of(&p("1-1-1-1")));
        assert!(p("2-1-1").is_coarsening_of(&p("2-1-1")));
        assert!(!p("2-1-1").is_coarsening_of(&p("3-1")));
        assert!(!p("2-2").is_coarsening_of(&p("3-1")));
        assert!(!p("3-3").is_coarsening_of(&p("2-2-2")));
    }

    #[test]
    fn additive_embedding_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(embed_additive(&[i2.clone(), i2.clone()], &[2, 2]).unwrap(), ComplexMatrix::identity(4));
        let a = ComplexMatrix::from_diag(&[c(0.0, 1.0)]);
        let b = ComplexMatrix::from_diag(&[c(-1.0, 0.0)]);
        assert_eq!(
            embed_additive(&[a, b], &[1, 1]).unwrap(),
            ComplexMatrix::from_diag(&[c(0.0, 1.0), c(-1.0, 0.0)])
        );
        assert!(matches!(embed_additive(std::slice::from_ref(&i2), &[3]), Err(Error::ShapeMismatch(_))));
        assert!(matches!(
            embed_additive(&[i2.scale_real(2.0)], &[2]),
            Err(Error::NotUnitary { .. })
        ));
    }

    // The commutator with diag(a1 I, a2 I) vanishes for block-diagonal unitaries.
    #[test]
    fn additive_embedding_commutes_with_block_scalars() {
        for seed in 0..20 {
            let mut rng = seeded_rng(seed);
            let blocks = random_young_blocks(&[2, 1], &mut rng);
            let g = embed_additive(&blocks, &[2, 1]).unwrap();
            let lam = ComplexMatrix::from_real_diag(&[0.4, 0.4, 0.2]);
            assert!(g.commutator(&lam).frobenius_norm() < 1e-14);
            assert!(g.unitarity_deviation() < 1e-10);
        }
    }

    #[test]
    fn multiplicative_embedding_examples() {
        let i2 = ComplexMatrix::identity(2);
        let dims = LocalStructure::new(vec![2, 2]).unwrap();
        assert_eq!(embed_multiplicative(&[i2.clone(), i2.clone()], &dims).unwrap(), ComplexMatrix::identity(4));
        let x = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let g = embed_multiplicative(&[x, i2.clone()], &dims).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            vec![0.0, 0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(g, expected);
        assert!(matches!(embed_multiplicative(&[i2], &dims), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn multiplicative_embedding_is_unitary() {
        let dims = LocalStructure::new(vec![2, 3]).unwrap();
        for seed in 0..20 {
            let f = random_local_unitary(&dims, &mut seeded_rng(seed));
            let g = embed_multiplicative(&f, &dims).unwrap();
            assert!(g.unitarity_deviation() <= 1e-10);
        }
    }

    #[test]
    fn stabilizer_examples() {
        let rho = DensityMatrix::new(ComplexMatrix::from_real_diag(&[0.6, 0.4])).unwrap();
        let phase = ComplexMatrix::identity(2).scale(Complex64::from_polar(1.0, 1.3));
        assert!(stabilizer_contains(&rho, &phase, DEFAULT_STABILIZER_TOL).unwrap());
        let swap = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(!stabilizer_contains(&rho, &swap, DEFAULT_STABILIZER_TOL).unwrap());

        let lam = DensityMatrix::new(ComplexMatrix::from_real_diag(&[0.3, 0.3, 0.3, 0.1])).unwrap();
        let blocks = random_young_blocks(&[3, 1], &mut seeded_rng(5));
        let g = embed_additive(&blocks, &[3, 1]).unwrap();
        assert!(stabilizer_contains(&lam, &g, DEFAULT_STABILIZER_TOL).unwrap());

        assert!(matches!(
            stabilizer_contains(&lam, &swap, 1e-8),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            stabilizer_contains(&rho, &swap.scale_real(0.5), 1e-8),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn random_stabilizer_for_maximally_mixed_and_distinct() {
        let rho = DensityMatrix::maximally_mixed(3);
        let cf = canonical_form(&rho, DEFAULT_CLUSTER_TOL).unwrap();
        let s = random_stabilizer_element(&cf, 11);
        assert!(s.unitarity_deviation() < 1e-10);
        // a single block: a full Haar unitary, not merely diagonal
        assert!(s[(0, 1)].norm() > 1e-6);

        let rho = DensityMatrix::new(ComplexMatrix::from_real_diag(&[0.5, 0.3, 0.2])).unwrap();
        let cf = canonical_form(&rho, DEFAULT_CLUSTER_TOL).unwrap();
        let s = random_stabilizer_element(&cf, 11);
        for i in 0..3 {
            assert!((s[(i, i)].norm() - 1.0).abs() < 1e-12);
            for j in 0..3 {
                if i != j {
                    assert!(s[(i, j)].norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn random_stabilizer_commutes_on_type_2_1() {
        let g = haar_unitary(3, 77);
        let lam = ComplexMatrix::from_real_diag(&[0.4, 0.4, 0.2]);
        let rho =
            DensityMatrix::with_tolerances(lam.conjugate_by(&g).hermitian_part(), DensityTolerances::default())
                .unwrap();
        let cf = canonical_form(&rho, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(cf.spectral_type.partition().parts(), &[2, 1]);
        for seed in 0..100 {
            let s = random_stabilizer_element(&cf, seed);
            assert!(stabilizer_contains(&rho, &s, DEFAULT_STABILIZER_TOL).unwrap());
        }
    }
}
