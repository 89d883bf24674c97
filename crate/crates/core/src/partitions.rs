//! Integer partitions: the global unitary classes of a fixed dimension.
//!
//! - [`enumerate_partitions`]: every partition of `n`, reverse lexicographic
//! - [`partition_count`]: `p(n)` via Euler's pentagonal number recurrence
//! - [`orbit_dimension`]: real dimension `n^2 - sum l_i^2` of `U(n)/U_lambda`

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::young::Partition;

pub const MAX_ENUMERATE: usize = 60;
pub const MAX_COUNT: usize = 1000;

/// All partitions of `n`, reverse lexicographically ordered.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionList {
    pub n: usize,
    pub items: Vec<Partition>,
}

impl PartitionList {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

pub fn enumerate_partitions(n: usize) -> Result<PartitionList> {
    if !(1..=MAX_ENUMERATE).contains(&n) {
        return Err(Error::OutOfRange { what: "n", value: n as i64, range: "1..=60" });
    }
    let mut items = Vec::new();
    let mut current = vec![n];
    loop {
        items.push(Partition::from_parts_unchecked(current.clone()));
        // rightmost part larger than one
        let Some(pos) = current.iter().rposition(|&p| p > 1) else {
            break;
        };
        let ones = current.len() - pos - 1;
        let part = current[pos] - 1;
        current.truncate(pos);
        let mut remaining = ones + 1 + part;
        while remaining > 0 {
            let next = part.min(remaining);
            current.push(next);
            remaining -= next;
        }
    }
    Ok(PartitionList { n, items })
}

/// `p(n)`, the coefficient of `q^n` in `prod_k (1 - q^k)^-1`.
///
/// Uses `p(n) = sum_{k >= 1} (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]`.
pub fn partition_count(n: usize) -> Result<BigUint> {
    if n > MAX_COUNT {
        return Err(Error::OutOfRange { what: "n", value: n as i64, range: "0..=1000" });
    }
    Ok(partition_counts_up_to(n).pop().expect("table has n + 1 entries"))
}

/// `[p(0), ..., p(n)]`.
pub fn partition_counts_up_to(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = Vec::with_capacity(n + 1);
    p.push(BigUint::from(1u32));
    for m in 1..=n {
        let mut plus = BigUint::from(0u32);
        let mut minus = BigUint::from(0u32);
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
            *acc += &p[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                *acc += &p[m - g2];
            }
        }
        p.push(plus - minus);
    }
    p
}

/// Real dimension of the homogeneous space `U(n)/U_lambda`: `n^2 - sum l_i^2`.
pub fn orbit_dimension(n: usize, lambda: &Partition) -> Result<usize> {
    lambda.check_partitions(n)?;
    Ok(n * n - lambda.parts().iter().map(|l| l * l).sum::<usize>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(list: &PartitionList) -> Vec<Vec<usize>> {
        list.items.iter().map(|p| p.parts().to_vec()).collect()
    }

    // Exhaustive recursion: parts bounded by `max`, largest first.
    fn brute_force(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=max.min(n)).rev() {
            for mut rest in brute_force(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(parts(&enumerate_partitions(1).unwrap()), vec![vec![1]]);
        assert_eq!(
            parts(&enumerate_partitions(4).unwrap()),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=15 {
            assert_eq!(parts(&enumerate_partitions(n).unwrap()), brute_force(n, n), "n={n}");
        }
        for p in &enumerate_partitions(10).unwrap().items {
            assert_eq!(p.n(), 10);
        }
    }

    #[test]
    fn enumeration_range() {
        assert!(enumerate_partitions(0).is_err());
        assert!(enumerate_partitions(61).is_err());
        assert_eq!(enumerate_partitions(60).unwrap().len(), 966_467);
    }

    #[test]
    fn counts() {
        assert_eq!(partition_count(0).unwrap(), BigUint::from(1u32));
        assert_eq!(partition_count(4).unwrap(), BigUint::from(5u32));
        assert_eq!(partition_count(100).unwrap(), BigUint::from(190_569_292u64));
        let p1000: BigUint = "24061467864032622473692149727991".parse().unwrap();
        assert_eq!(partition_count(1000).unwrap(), p1000);
        assert!(partition_count(1001).is_err());
    }

    #[test]
    fn orbit_dimensions() {
        for n in 1..=6 {
            let full = Partition::new(vec![n]).unwrap();
            assert_eq!(orbit_dimension(n, &full).unwrap(), 0);
            let ones = Partition::new(vec![1; n]).unwrap();
            assert_eq!(orbit_dimension(n, &ones).unwrap(), n * n - n);
        }
        assert_eq!(orbit_dimension(2, &Partition::new(vec![1, 1]).unwrap()).unwrap(), 2);
        assert_eq!(orbit_dimension(4, &Partition::new(vec![2, 2]).unwrap()).unwrap(), 8);
        assert!(matches!(
            orbit_dimension(5, &Partition::new(vec![2, 2]).unwrap()),
            Err(Error::NotAPartitionOfN { .. })
        ));
    }

    #[test]
    fn orbit_dimension_extremes_are_unique() {
        for n in 1..=8 {
            for p in &enumerate_partitions(n).unwrap().items {
                let d = orbit_dimension(n, p).unwrap();
                assert_eq!(d == 0, p.parts() == [n]);
                assert_eq!(d == n * n - n, p.len() == n);
            }
        }
    }
}
