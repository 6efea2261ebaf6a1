//! Vector partition functions by dynamic programming.

use std::fmt;

use crate::{Error, Result};

/// A finite list of nonzero vectors of `ℤ^d` in the closed positive orthant.
/// Repetitions are allowed and counted separately.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorList {
    d: usize,
    vectors: Vec<Vec<i64>>,
}

impl VectorList {
    pub fn new(vectors: Vec<Vec<i64>>) -> Result<Self> {
        let d = vectors.first().map(Vec::len).ok_or_else(|| Error::Domain("empty vector list".into()))?;
        for v in &vectors {
            if v.len() != d {
                return Err(Error::Domain("vectors of different lengths".into()));
            }
            if v.iter().any(|&c| c < 0) || v.iter().all(|&c| c == 0) {
                return Err(Error::Domain(format!("vector {v:?} is not a nonzero vector of the positive orthant")));
            }
        }
        Ok(Self { d, vectors })
    }

    pub fn from_arrays<const D: usize>(vs: &[[i64; D]]) -> Result<Self> {
        Self::new(vs.iter().map(|v| v.to_vec()).collect())
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }
}

impl fmt::Display for VectorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.vectors.iter().map(|v| format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Partition counts for every lattice point of the box `[0, corner]`.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    corner: Vec<usize>,
    counts: Vec<u128>,
}

impl PartitionTable {
    /// Runs the knapsack recurrence `T[x] += T[x − v]` once per vector.
    pub fn build(a: &VectorList, corner: &[i64]) -> Result<Self> {
        if corner.len() != a.dim() {
            return Err(Error::Domain("target dimension does not match the vector list".into()));
        }
        let corner: Vec<usize> = corner.iter().map(|&c| c.max(0) as usize).collect();
        let sides: Vec<usize> = corner.iter().map(|c| c + 1).collect();
        let len = sides.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).ok_or(Error::Overflow("partition table size"))?;
        let mut strides = vec![1usize; sides.len()];
        for i in (0..sides.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sides[i + 1];
        }
        let mut counts = vec![0u128; len];
        counts[0] = 1;
        for v in a.vectors() {
            if v.iter().zip(&corner).any(|(&x, &c)| x as usize > c) {
                continue;
            }
            let shift: usize = v.iter().zip(&strides).map(|(&x, s)| x as usize * s).sum();
            let mut idx = vec![0usize; sides.len()];
            for flat in 0..len {
                if flat > 0 {
                    // Advance the multi-index odometer.
                    let mut k = sides.len() - 1;
                    loop {
                        idx[k] += 1;
                        if idx[k] < sides[k] {
                            break;
                        }
                        idx[k] = 0;
                        k -= 1;
                    }
                }
                if idx.iter().zip(v).all(|(&i, &x)| i >= x as usize) {
                    let prev = counts[flat - shift];
                    counts[flat] = counts[flat].checked_add(prev).ok_or(Error::Overflow("partition count"))?;
                }
            }
        }
        Ok(Self { corner, counts })
    }

    /// Count at `x`: zero outside the orthant, `None` beyond the box corner.
    pub fn get(&self, x: &[i64]) -> Option<u128> {
        if x.iter().any(|&c| c < 0) {
            return Some(0);
        }
        if x.iter().zip(&self.corner).any(|(&c, &m)| c as usize > m) {
            return None;
        }
        let mut flat = 0usize;
        for (&c, &m) in x.iter().zip(&self.corner) {
            flat = flat * (m + 1) + c as usize;
        }
        Some(self.counts[flat])
    }
}

/// Number of ways to write `target` as a nonnegative integer combination of `A`.
pub fn vector_partition_count(a: &VectorList, target: &[i64]) -> Result<u128> {
    if target.iter().any(|&c| c < 0) {
        return Ok(0);
    }
    let table = PartitionTable::build(a, target)?;
    Ok(table.get(target).expect("target is the box corner"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(a: &[[i64; 2]], t: [i64; 2]) -> u128 {
        fn rec(a: &[[i64; 2]], t: [i64; 2]) -> u128 {
            if t[0] < 0 || t[1] < 0 {
                return 0;
            }
            match a.split_first() {
                None => u128::from(t == [0, 0]),
                Some((v, rest)) => (0..=20).map(|c| rec(rest, [t[0] - c * v[0], t[1] - c * v[1]])).sum(),
            }
        }
        rec(a, t)
    }

    #[test]
    fn examples() {
        let a = VectorList::from_arrays(&[[1, 0], [0, 1]]).unwrap();
        assert_eq!(vector_partition_count(&a, &[2, 3]).unwrap(), 1);
        let b = VectorList::from_arrays(&[[1], [1]]).unwrap();
        assert_eq!(vector_partition_count(&b, &[5]).unwrap(), 6);
        let c = VectorList::from_arrays(&[[1, 0], [0, 1], [1, 1]]).unwrap();
        assert_eq!(vector_partition_count(&c, &[2, 2]).unwrap(), 3);
        assert_eq!(vector_partition_count(&c, &[-1, 2]).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_lists() {
        assert!(VectorList::new(vec![]).is_err());
        assert!(VectorList::new(vec![vec![0, 0]]).is_err());
        assert!(VectorList::new(vec![vec![1, -1]]).is_err());
    }

    #[test]
    fn table_matches_brute_force() {
        let vs = [[1, 2], [2, 1], [1, 1], [3, 0]];
        let a = VectorList::from_arrays(&vs).unwrap();
        let t = PartitionTable::build(&a, &[9, 8]).unwrap();
        for x in 0..=9 {
            for y in 0..=8 {
                assert_eq!(t.get(&[x, y]).unwrap(), brute(&vs, [x, y]), "({x},{y})");
            }
        }
        assert_eq!(t.get(&[10, 0]), None);
    }
}
