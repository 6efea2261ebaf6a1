//! Integer lattices spanned by vector lists: Hermite normal form and index.

use crate::{Error, Result};

/// Full-rank sublattice of `ℤ^d`, stored as an upper-triangular Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    basis: Vec<Vec<i64>>,
}

impl Lattice {
    /// Rows of the Hermite normal form: upper triangular, positive pivots,
    /// entries above each pivot reduced into `[0, pivot)`.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `[ℤ^d : Λ]`, the product of the pivots.
    pub fn index(&self) -> i64 {
        (0..self.basis.len()).map(|i| self.basis[i][i]).product()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        assert_eq!(x.len(), self.dim());
        let mut r: Vec<i128> = x.iter().map(|&c| c as i128).collect();
        for (i, row) in self.basis.iter().enumerate() {
            let p = row[i] as i128;
            if r[i] % p != 0 {
                return false;
            }
            let q = r[i] / p;
            for (rj, &bj) in r.iter_mut().zip(row) {
                *rj -= q * bj as i128;
            }
        }
        r.iter().all(|&c| c == 0)
    }
}

/// Row-style Hermite normal form of an integer matrix. Returns the nonzero
/// rows and the pivot columns.
#[allow(clippy::needless_range_loop)]
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, Vec<usize>)> {
    let d = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&c| c as i128).collect()).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..d {
        if top == m.len() {
            break;
        }
        // Euclid on column c among rows top.., keeping the smallest entry on top.
        loop {
            let best = (top..m.len()).filter(|&i| m[i][c] != 0).min_by_key(|&i| m[i][c].abs());
            let Some(best) = best else { break };
            m.swap(top, best);
            let mut done = true;
            for i in top + 1..m.len() {
                if m[i][c] != 0 {
                    let q = m[i][c].div_euclid(m[top][c]);
                    for j in 0..d {
                        m[i][j] -= q * m[top][j];
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[top][c] == 0 {
            continue;
        }
        if m[top][c] < 0 {
            m[top].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..top {
            let q = m[i][c].div_euclid(m[top][c]);
            for j in 0..d {
                m[i][j] -= q * m[top][j];
            }
        }
        pivots.push(c);
        top += 1;
    }
    let out = m[..top]
        .iter()
        .map(|r| r.iter().map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("Hermite normal form"))).collect())
        .collect::<Result<Vec<Vec<i64>>>>()?;
    Ok((out, pivots))
}

/// Basis of the lattice spanned by `vectors` and its index in `ℤ^d`.
pub fn lattice_span_and_index(vectors: &[Vec<i64>]) -> Result<(Lattice, i64)> {
    let d = vectors.first().map_or(0, Vec::len);
    let (basis, pivots) = hermite_normal_form(vectors)?;
    if pivots.len() < d {
        return Err(Error::Rank { rank: pivots.len(), expected: d });
    }
    let lattice = Lattice { basis };
    let index = lattice.index();
    Ok((lattice, index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        let (l, idx) = lattice_span_and_index(&[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(idx, 4);
        assert!(l.contains(&[2, -4]));
        assert!(!l.contains(&[1, 0]));
        let (_, idx) = lattice_span_and_index(&[vec![2, 1], vec![1, 2], vec![1, 1]]).unwrap();
        assert_eq!(idx, 1);
        assert_eq!(
            lattice_span_and_index(&[vec![1, 2], vec![2, 4]]).unwrap_err(),
            Error::Rank { rank: 1, expected: 2 }
        );
    }

    #[test]
    fn hnf_shape() {
        let (h, piv) = hermite_normal_form(&[vec![4, 0, 0], vec![3, 0, 1], vec![0, 1, 0], vec![0, 3, 0]]).unwrap();
        assert_eq!(piv, vec![0, 1, 2]);
        assert_eq!(h, vec![vec![1, 0, 3], vec![0, 1, 0], vec![0, 0, 4]]);
    }

    proptest! {
        #[test]
        fn index_is_abs_determinant(a in prop::collection::vec(-6i64..6, 9)) {
            let rows = vec![a[0..3].to_vec(), a[3..6].to_vec(), a[6..9].to_vec()];
            let det = a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
                + a[2] * (a[3] * a[7] - a[4] * a[6]);
            match lattice_span_and_index(&rows) {
                Ok((l, idx)) => {
                    prop_assert_eq!(idx, det.abs());
                    for r in &rows {
                        prop_assert!(l.contains(r));
                    }
                }
                Err(_) => prop_assert_eq!(det, 0),
            }
        }
    }
}
