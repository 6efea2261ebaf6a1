//! Dimensions of invariants of the principal `SL₂` in irreducible
//! `SL_{N+1}`-representations: the constant-term oracle, the closed-form
//! generating function for `N = 3`, and the decomposition of section spaces.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::exact::LaurentPoly;
use crate::rootdata::{RootSystemA, Weight};
use crate::{Error, Result};

/// Numerator terms `(coefficient, [e₁, e₂, e₃])` of the `N = 3` generating
/// function, sorted by exponent.
const MESS_NUMERATOR: [(i64, [u32; 3]); 61] = [
    (1, [0, 0, 0]), (-1, [0, 1, 2]), (1, [0, 2, 4]), (1, [1, 1, 5]),
    (1, [1, 2, 1]), (1, [1, 2, 3]), (-1, [1, 2, 7]), (-1, [1, 3, 3]),
    (1, [2, 0, 2]), (-1, [2, 1, 0]), (1, [2, 1, 2]), (2, [2, 2, 2]),
    (-1, [2, 2, 4]), (-1, [2, 2, 6]), (-1, [2, 3, 4]), (1, [3, 0, 3]),
    (1, [3, 1, 3]), (-1, [3, 1, 5]), (1, [3, 2, 1]), (1, [3, 2, 3]),
    (-3, [3, 2, 5]), (-1, [3, 3, 1]), (-1, [3, 3, 3]), (-1, [3, 3, 5]),
    (1, [3, 3, 7]), (1, [3, 4, 3]), (1, [4, 1, 4]), (-1, [4, 1, 6]),
    (1, [4, 2, 0]), (-1, [4, 2, 2]), (-2, [4, 2, 4]), (-1, [4, 2, 6]),
    (1, [4, 2, 8]), (-1, [4, 3, 2]), (1, [4, 3, 4]), (1, [5, 0, 5]),
    (1, [5, 1, 1]), (-1, [5, 1, 3]), (-1, [5, 1, 5]), (-1, [5, 1, 7]),
    (-3, [5, 2, 3]), (1, [5, 2, 5]), (1, [5, 2, 7]), (-1, [5, 3, 3]),
    (1, [5, 3, 5]), (1, [5, 4, 5]), (-1, [6, 1, 4]), (-1, [6, 2, 2]),
    (-1, [6, 2, 4]), (2, [6, 2, 6]), (1, [6, 3, 6]), (-1, [6, 3, 8]),
    (1, [6, 4, 6]), (-1, [7, 1, 5]), (-1, [7, 2, 1]), (1, [7, 2, 5]),
    (1, [7, 2, 7]), (1, [7, 3, 3]), (1, [8, 2, 4]), (-1, [8, 3, 6]),
    (1, [8, 4, 8]),
];

/// Denominator factors `(1 − z^a)` of the `N = 3` generating function.
const MESS_DENOMINATOR: [[u32; 3]; 8] =
    [[4, 0, 0], [3, 0, 1], [1, 0, 3], [0, 0, 4], [0, 1, 0], [0, 3, 0], [2, 1, 0], [0, 1, 2]];

/// Restriction of the character of `V_λ` to the principal `SL₂`:
/// `∏_{i≤j} (t^{S_ij} − t^{−S_ij}) / ∏_{i≤j} (t^{j−i+1} − t^{−(j−i+1)})`.
///
/// The full products are divided at once; single factors do not divide.
pub fn restriction_character(rs: &RootSystemA, lam: &Weight) -> Result<LaurentPoly> {
    rs.check_rank(lam)?;
    lam.require_dominant()?;
    let num: LaurentPoly =
        rs.positive_roots().iter().map(|&r| LaurentPoly::antisymmetric(rs.shifted_height(lam, r))).product();
    let den: LaurentPoly =
        rs.positive_roots().iter().map(|&(i, j)| LaurentPoly::antisymmetric((j - i + 1) as i64)).product();
    num.divide_exact(&den)
}

/// `dim V_λ^{SL₂}`: the `t⁰` coefficient of `(1 − t⁻²)` times the restricted character.
pub fn sl2_invariant_dim(rs: &RootSystemA, lam: &Weight) -> Result<u64> {
    if rs.rank() < 2 {
        return Err(Error::Domain("the embedded SL₂ needs rank at least 2".into()));
    }
    let chi = restriction_character(rs, lam)?;
    let c = chi.coeff(0) - chi.coeff(2);
    c.to_u64().ok_or(Error::Overflow("invariant dimension"))
}

/// `numerator / ∏ (1 − z^a)` as a formal power series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeriesRep {
    numerator: BTreeMap<Vec<u32>, i64>,
    denominator_factors: Vec<Vec<u32>>,
}

impl RationalSeriesRep {
    pub fn new(numerator: BTreeMap<Vec<u32>, i64>, denominator_factors: Vec<Vec<u32>>) -> Result<Self> {
        let k = numerator.keys().next().map(Vec::len).or_else(|| denominator_factors.first().map(Vec::len)).unwrap_or(0);
        if numerator.keys().chain(&denominator_factors).any(|e| e.len() != k) {
            return Err(Error::Domain("exponent vectors of different lengths".into()));
        }
        if denominator_factors.iter().any(|a| a.iter().all(|&x| x == 0)) {
            return Err(Error::Domain("denominator factor 1 − z⁰ vanishes".into()));
        }
        let numerator = numerator.into_iter().filter(|(_, c)| *c != 0).collect();
        Ok(Self { numerator, denominator_factors })
    }

    pub fn num_vars(&self) -> usize {
        self.denominator_factors.first().or_else(|| self.numerator.keys().next()).map_or(0, Vec::len)
    }

    pub fn numerator(&self) -> &BTreeMap<Vec<u32>, i64> {
        &self.numerator
    }

    pub fn denominator_factors(&self) -> &[Vec<u32>] {
        &self.denominator_factors
    }

    pub fn numerator_coeff(&self, e: &[u32]) -> i64 {
        self.numerator.get(e).copied().unwrap_or(0)
    }
}

/// The generating function `Σ_λ dim V_λ^{SL₂} z^λ` for `SL₄`.
pub fn theorem_mess_series() -> RationalSeriesRep {
    let numerator = MESS_NUMERATOR.iter().map(|(c, e)| (e.to_vec(), *c)).collect();
    let den = MESS_DENOMINATOR.iter().map(|a| a.to_vec()).collect();
    RationalSeriesRep::new(numerator, den).expect("well-formed built-in series")
}

/// Dense array of series coefficients over the box `[0, bound]^k`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesArray {
    bound: usize,
    k: usize,
    data: Vec<i64>,
}

impl SeriesArray {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn num_vars(&self) -> usize {
        self.k
    }

    fn index(&self, e: &[usize]) -> Option<usize> {
        if e.len() != self.k || e.iter().any(|&x| x > self.bound) {
            return None;
        }
        Some(e.iter().fold(0, |acc, &x| acc * (self.bound + 1) + x))
    }

    pub fn get(&self, e: &[usize]) -> Option<i64> {
        self.index(e).map(|i| self.data[i])
    }

    /// All multidegrees in the box, row-major.
    pub fn multidegrees(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let side = self.bound + 1;
        (0..self.data.len()).map(move |mut i| {
            let mut e = vec![0; self.k];
            for slot in e.iter_mut().rev() {
                *slot = i % side;
                i /= side;
            }
            e
        })
    }
}

/// Coefficients of `s` for all multidegrees `≤ (bound, …, bound)`.
///
/// The numerator is laid into the array and each factor `1/(1 − z^a)` is
/// applied by the in-place recurrence `c[e] += c[e − a]` in row-major order.
pub fn series_coefficients(s: &RationalSeriesRep, bound: usize) -> SeriesArray {
    let k = s.num_vars();
    let side = bound + 1;
    let len = side.pow(k as u32);
    let mut arr = SeriesArray { bound, k, data: vec![0; len] };
    for (e, &c) in &s.numerator {
        let ue: Vec<usize> = e.iter().map(|&x| x as usize).collect();
        if let Some(i) = arr.index(&ue) {
            arr.data[i] += c;
        }
    }
    let strides: Vec<usize> = (0..k).map(|j| side.pow((k - 1 - j) as u32)).collect();
    for a in &s.denominator_factors {
        if a.iter().any(|&x| x as usize > bound) {
            continue;
        }
        let shift: usize = a.iter().zip(&strides).map(|(&x, s)| x as usize * s).sum();
        let degrees: Vec<Vec<usize>> = arr.multidegrees().collect();
        for (i, e) in degrees.iter().enumerate() {
            if e.iter().zip(a).all(|(&x, &y)| x >= y as usize) {
                arr.data[i] += arr.data[i - shift];
            }
        }
    }
    arr
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenfunMismatch {
    pub weight: Weight,
    pub series: i64,
    pub oracle: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenfunReport {
    pub bound: usize,
    pub checked: usize,
    pub mismatches: Vec<GenfunMismatch>,
}

/// Compares the closed-form series with the constant-term oracle on `[0, bound]³`.
pub fn verify_genfun(bound: usize) -> Result<GenfunReport> {
    let rs = RootSystemA::new(3)?;
    let arr = series_coefficients(&theorem_mess_series(), bound);
    let degrees: Vec<Vec<usize>> = arr.multidegrees().collect();
    let results: Vec<Result<Option<GenfunMismatch>>> = degrees
        .par_iter()
        .map(|e| {
            let weight = Weight::new(e.iter().map(|&x| x as i64).collect::<Vec<_>>());
            let oracle = sl2_invariant_dim(&rs, &weight)?;
            let series = arr.get(e).expect("inside the box");
            Ok((series != oracle as i64).then_some(GenfunMismatch { weight, series, oracle }))
        })
        .collect();
    let mut mismatches = Vec::new();
    for r in results {
        if let Some(m) = r? {
            mismatches.push(m);
        }
    }
    Ok(GenfunReport { bound, checked: degrees.len(), mismatches })
}

/// `(μ, dim V_μ^{SL₂})` for the weights `μ ∈ P_λ` with a nonzero invariant space.
pub fn sections_decomposition(rs: &RootSystemA, lam: &Weight) -> Result<Vec<(Weight, u64)>> {
    if !(2..=3).contains(&rs.rank()) {
        return Err(Error::Domain(format!("sections are modelled for rank 2 and 3, not {}", rs.rank())));
    }
    let mut out = Vec::new();
    for mu in rs.p_lambda_lattice_points(lam)? {
        let m = sl2_invariant_dim(rs, &mu)?;
        if m > 0 {
            out.push((mu, m));
        }
    }
    Ok(out)
}

/// Memo of oracle results, shareable between threads.
#[derive(Debug, Default)]
pub struct InvariantTable {
    entries: Mutex<HashMap<Weight, u64>>,
}

impl InvariantTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_compute(&self, rs: &RootSystemA, lam: &Weight) -> Result<u64> {
        if let Some(&v) = self.entries.lock().expect("memo lock").get(lam) {
            return Ok(v);
        }
        let v = sl2_invariant_dim(rs, lam)?;
        self.entries.lock().expect("memo lock").insert(lam.clone(), v);
        Ok(v)
    }

    pub fn insert(&self, lam: Weight, v: u64) {
        self.entries.lock().expect("memo lock").insert(lam, v);
    }

    pub fn get(&self, lam: &Weight) -> Option<u64> {
        self.entries.lock().expect("memo lock").get(lam).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sorted snapshot of all entries.
    pub fn entries(&self) -> Vec<(Weight, u64)> {
        let mut v: Vec<_> = self.entries.lock().expect("memo lock").iter().map(|(k, v)| (k.clone(), *v)).collect();
        v.sort();
        v
    }

    /// Recomputes every entry and returns the weights whose stored value is wrong.
    pub fn audit(&self, rs: &RootSystemA) -> Result<Vec<Weight>> {
        let mut bad = Vec::new();
        for (w, v) in self.entries() {
            if w.rank() == rs.rank() && sl2_invariant_dim(rs, &w)? != v {
                bad.push(w);
            }
        }
        Ok(bad)
    }
}

/// Integer value of the sum of coefficients, i.e. `dim V_λ`, of a character.
pub fn character_dimension(chi: &LaurentPoly) -> BigInt {
    chi.eval_at_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn w(c: &[i64]) -> Weight {
        Weight::new(c)
    }

    fn a3() -> RootSystemA {
        RootSystemA::new(3).unwrap()
    }

    #[test]
    fn oracle_values() {
        let rs = a3();
        let cases: [([i64; 3], u64); 11] = [
            ([0, 0, 0], 1),
            ([4, 0, 0], 1),
            ([2, 1, 0], 0),
            ([0, 2, 0], 1),
            ([1, 0, 1], 0),
            ([4, 2, 0], 2),
            ([0, 3, 0], 2),
            ([0, 1, 0], 1),
            ([2, 2, 2], 3),
            ([0, 0, 4], 1),
            ([1, 2, 1], 1),
        ];
        for (lam, expect) in cases {
            assert_eq!(sl2_invariant_dim(&rs, &w(&lam)).unwrap(), expect, "{lam:?}");
        }
        let rs2 = RootSystemA::new(2).unwrap();
        assert_eq!(sl2_invariant_dim(&rs2, &w(&[2, 2])).unwrap(), 1);
        assert_eq!(sl2_invariant_dim(&rs2, &w(&[1, 1])).unwrap(), 0);
        assert!(sl2_invariant_dim(&RootSystemA::new(1).unwrap(), &w(&[2])).is_err());
    }

    #[test]
    fn character_dimension_is_weyl_dimension() {
        for n in 1..=3usize {
            let rs = RootSystemA::new(n).unwrap();
            let side = 5i64;
            for idx in 0..side.pow(n as u32) {
                let coords: Vec<i64> = (0..n).map(|k| (idx / side.pow(k as u32)) % side).collect();
                let lam = Weight::new(coords);
                let chi = restriction_character(&rs, &lam).unwrap();
                let dim = rs.weyl_dim(&lam).unwrap();
                assert_eq!(character_dimension(&chi), BigInt::from(dim.clone()), "{lam}");
                assert!(chi.terms().all(|(_, c)| c > &BigInt::from(0)));
                let _: BigUint = dim;
            }
        }
    }

    #[test]
    fn mess_data() {
        let s = theorem_mess_series();
        assert_eq!(s.numerator_coeff(&[0, 0, 0]), 1);
        assert_eq!(s.numerator_coeff(&[7, 2, 1]), -1);
        assert_eq!(s.numerator_coeff(&[2, 1, 0]), -1);
        assert_eq!(s.numerator_coeff(&[3, 2, 5]), -3);
        assert_eq!(s.denominator_factors().len(), 8);
        assert_eq!(s.numerator().len(), 61);
        // P(1,1,1) must vanish to the order forced by the pole count: the series
        // has polynomial growth of degree 3 while U has 8 factors.
        let at_one: i64 = s.numerator().values().sum();
        assert_eq!(at_one, 0);
    }

    #[test]
    fn series_examples() {
        let arr = series_coefficients(&theorem_mess_series(), 6);
        assert_eq!(arr.get(&[0, 0, 0]), Some(1));
        assert_eq!(arr.get(&[4, 0, 0]), Some(1));
        assert_eq!(arr.get(&[4, 2, 0]), Some(2));
        assert_eq!(arr.get(&[7, 0, 0]), None);
    }

    #[test]
    fn series_of_simple_fraction() {
        // 1/((1−x)(1−x)) = Σ (n+1) xⁿ
        let s = RationalSeriesRep::new(BTreeMap::from([(vec![0], 1)]), vec![vec![1], vec![1]]).unwrap();
        let arr = series_coefficients(&s, 5);
        assert_eq!((0..=5).map(|n| arr.get(&[n]).unwrap()).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6]);
        assert!(RationalSeriesRep::new(BTreeMap::new(), vec![vec![0, 0]]).is_err());
    }

    #[test]
    fn genfun_small_bounds() {
        let r = verify_genfun(0).unwrap();
        assert_eq!((r.checked, r.mismatches.len()), (1, 0));
        let r = verify_genfun(6).unwrap();
        assert_eq!((r.checked, r.mismatches.len()), (343, 0));
    }

    #[test]
    fn sections_of_400() {
        let rs = a3();
        let mut got = sections_decomposition(&rs, &w(&[4, 0, 0])).unwrap();
        got.sort();
        assert_eq!(got, vec![(w(&[0, 0, 0]), 1), (w(&[0, 2, 0]), 1), (w(&[4, 0, 0]), 1)]);
        let rs2 = RootSystemA::new(2).unwrap();
        assert_eq!(sections_decomposition(&rs2, &w(&[0, 0])).unwrap(), vec![(w(&[0, 0]), 1)]);
    }

    /// Oracle values on `[0, side)³`, indexed row-major.
    fn oracle_cube(side: i64) -> Vec<u64> {
        let rs = a3();
        let idx: Vec<i64> = (0..side.pow(3)).collect();
        idx.par_iter().map(|&i| sl2_invariant_dim(&rs, &w(&[i / (side * side), (i / side) % side, i % side])).unwrap()).collect()
    }

    #[test]
    fn duality_and_central_character() {
        let side = 11;
        let t = oracle_cube(side);
        let at = |a: i64, b: i64, c: i64| t[(a * side * side + b * side + c) as usize];
        for a in 0..side {
            for b in 0..side {
                for c in 0..side {
                    assert_eq!(at(a, b, c), at(c, b, a));
                    // −1 ∈ SL₂ acts on V_λ by (−1)^{a+2b+3c}.
                    if at(a, b, c) > 0 {
                        assert_eq!((a + 2 * b + 3 * c) % 2, 0, "({a},{b},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn full_center_does_not_act_trivially() {
        // The centre of SL₄ meets the embedded SL₂ only in ±1, so a mod-4
        // condition on a+2b+3c is too strong.
        assert_eq!(sl2_invariant_dim(&a3(), &w(&[0, 1, 0])).unwrap(), 1);
    }

    #[test]
    fn superadditivity() {
        let side = 13;
        let t = oracle_cube(side);
        let at = |v: [i64; 3]| t[(v[0] * side * side + v[1] * side + v[2]) as usize];
        let small: Vec<[i64; 3]> =
            (0..7).flat_map(|a| (0..7).flat_map(move |b| (0..7).map(move |c| [a, b, c]))).filter(|&v| at(v) > 0).collect();
        for &p in &small {
            for &q in &small {
                let s = [p[0] + q[0], p[1] + q[1], p[2] + q[2]];
                assert!(at(s) + 1 >= at(p) + at(q), "{p:?} + {q:?}");
            }
        }
    }

    #[test]
    fn conic_even_rule() {
        let rs = RootSystemA::new(2).unwrap();
        for a in 0..=20 {
            for b in 0..=20 {
                let expect = u64::from(a % 2 == 0 && b % 2 == 0);
                assert_eq!(sl2_invariant_dim(&rs, &w(&[a, b])).unwrap(), expect, "({a},{b})");
            }
        }
    }

    #[test]
    fn memo_table() {
        let rs = a3();
        let table = InvariantTable::new();
        assert_eq!(table.get_or_compute(&rs, &w(&[2, 2, 2])).unwrap(), 3);
        assert_eq!(table.get(&w(&[2, 2, 2])), Some(3));
        table.insert(w(&[0, 3, 0]), 7);
        assert_eq!(table.audit(&rs).unwrap(), vec![w(&[0, 3, 0])]);
    }
}
