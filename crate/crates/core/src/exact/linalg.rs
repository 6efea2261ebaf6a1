//! Small dense linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::BigRational;

pub type Matrix = Vec<Vec<BigRational>>;

/// Reduces `m` to row echelon form in place and returns the pivot columns.
#[allow(clippy::needless_range_loop)]
fn echelon(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &piv;
            for j in c..cols {
                let d = &f * &m[r][j];
                m[i][j] -= d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    let mut work = m.to_vec();
    echelon(&mut work).len()
}

#[allow(clippy::needless_range_loop)]
pub fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant needs a square matrix");
    let mut work = m.to_vec();
    let mut sign_flips = 0usize;
    let mut det = BigRational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !work[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            work.swap(p, c);
            sign_flips += 1;
        }
        let piv = work[c][c].clone();
        for i in c + 1..n {
            if work[i][c].is_zero() {
                continue;
            }
            let f = &work[i][c] / &piv;
            for j in c..n {
                let d = &f * &work[c][j];
                work[i][j] -= d;
            }
        }
        det *= piv;
    }
    if sign_flips % 2 == 1 {
        -det
    } else {
        det
    }
}

/// Unique solution of the square system `a·x = b`, or `None` when `a` is singular.
///
/// Rows are cleared of denominators and reduced by fraction-free (Bareiss)
/// elimination, so intermediate values stay integral.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let den = row.iter().chain(std::iter::once(bi)).fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            row.iter().chain(std::iter::once(bi)).map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..=n {
                row[j] = (&row[j] * &pivot_row[k] - &row[k] * &pivot_row[j]) / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut s = BigRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            s -= BigRational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = s / BigRational::from_integer(m[i][i].clone());
    }
    Some(x)
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Largest absolute entry; handy for bounding rounding in float cross-checks.
pub fn max_abs(v: &[BigRational]) -> BigRational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero)
}

pub fn cross3(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn rank_i64(vs: &[Vec<i64>]) -> usize {
    let m: Matrix = vs.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    rank(&m)
}
