//! Root data of type A: weights in the fundamental-weight basis, the Cartan
//! matrix, the Weyl dimension formula and the polytopes `𝒫_λ`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::{int, rat, BigRational, HalfSpace, MultiPoly, Polytope};
use crate::{Error, Result};

/// Integer weight `Σ a_i ω_i` of `SL_{N+1}`; `N` is the number of coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Self(coords.into())
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    pub fn add(&self, other: &Weight) -> Self {
        assert_eq!(self.rank(), other.rank());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Self {
        assert_eq!(self.rank(), other.rank());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.0.iter().map(|&a| int(a)).collect()
    }

    pub fn require_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::Domain(format!("weight {self} is not dominant")))
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated integers, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Err(Error::Domain("empty weight".into()));
        }
        inner
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Domain(format!("bad weight coordinate {p:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

/// Root system of type `A_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemA {
    n: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inverse: Vec<Vec<BigRational>>,
    positive_roots: Vec<(usize, usize)>,
}

impl RootSystemA {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("rank must be at least 1".into()));
        }
        let cartan = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        // (C⁻¹)_ij = min(i,j)·(N+1−max(i,j))/(N+1), 1-based.
        let m = n as i64 + 1;
        let cartan_inverse = (1..=n as i64)
            .map(|i| (1..=n as i64).map(|j| rat(i.min(j) * (m - i.max(j)), m)).collect())
            .collect();
        let positive_roots = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
        Ok(Self { n, cartan, cartan_inverse, positive_roots })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &[Vec<BigRational>] {
        &self.cartan_inverse
    }

    /// Pairs `(i, j)` with `1 ≤ i ≤ j ≤ N`, standing for `α_i + … + α_j`.
    pub fn positive_roots(&self) -> &[(usize, usize)] {
        &self.positive_roots
    }

    /// The simple root `α_i` (1-based) in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i - 1].clone())
    }

    /// Coordinates of `μ` in the basis of simple roots.
    pub fn root_coordinates(&self, mu: &Weight) -> Vec<BigRational> {
        self.check_rank(mu).expect("rank checked by caller");
        self.cartan_inverse
            .iter()
            .map(|row| row.iter().zip(mu.coords()).map(|(c, &a)| c * int(a)).sum())
            .collect()
    }

    /// Whether `μ` lies in the root lattice.
    pub fn in_root_lattice(&self, mu: &Weight) -> bool {
        self.root_coordinates(mu).iter().all(|c| c.is_integer())
    }

    pub fn num_positive_roots(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    pub fn check_rank(&self, lam: &Weight) -> Result<()> {
        if lam.rank() == self.n {
            Ok(())
        } else {
            Err(Error::Domain(format!("weight {lam} has {} coordinates, rank is {}", lam.rank(), self.n)))
        }
    }

    fn check_dominant(&self, lam: &Weight) -> Result<()> {
        self.check_rank(lam)?;
        lam.require_dominant()
    }

    /// `S_ij = Σ_{k=i}^{j} (a_k + 1)`, the pairing of `λ + ρ` with a positive root.
    pub fn shifted_height(&self, lam: &Weight, (i, j): (usize, usize)) -> i64 {
        lam.coords()[i - 1..j].iter().map(|a| a + 1).sum()
    }

    /// Weyl dimension formula.
    pub fn weyl_dim(&self, lam: &Weight) -> Result<BigUint> {
        self.check_dominant(lam)?;
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for &(i, j) in &self.positive_roots {
            num *= BigUint::from(self.shifted_height(lam, (i, j)) as u64);
            den *= BigUint::from((j - i + 1) as u64);
        }
        let (q, r) = num.div_rem(&den);
        debug_assert!(r.is_zero());
        Ok(q)
    }

    /// Leading homogeneous part of the Weyl dimension:
    /// `∏_{i≤j} (x_i + … + x_j)/(j − i + 1)`.
    pub fn dimas_v_poly(&self) -> MultiPoly {
        let n = self.n;
        let mut p = MultiPoly::one(n);
        let mut den: i64 = 1;
        for &(i, j) in &self.positive_roots {
            let coeffs: Vec<i64> = (1..=n).map(|k| i64::from(k >= i && k <= j)).collect();
            p = &p * &MultiPoly::linear_i64(&coeffs);
            den *= (j - i + 1) as i64;
        }
        p.scale(&rat(1, den))
    }

    /// `𝒫_λ`: `x_k ≥ 0` and `r·(λ − x) ≥ 0` for every row `r` of `C⁻¹`,
    /// the latter scaled to primitive integer coefficients.
    pub fn build_p_lambda(&self, lam: &Weight) -> Result<Polytope> {
        self.check_dominant(lam)?;
        let n = self.n;
        let scale = int(n as i64 + 1);
        let mut hs = Vec::with_capacity(2 * n);
        for k in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[k] = int(-1);
            hs.push(HalfSpace::new(e, BigRational::zero()));
        }
        let lam_q = lam.to_rationals();
        for row in &self.cartan_inverse {
            let scaled: Vec<BigInt> = row.iter().map(|c| (c * &scale).to_integer()).collect();
            let g = scaled.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            let normal: Vec<BigRational> = scaled.iter().map(|c| BigRational::from_integer(c / &g)).collect();
            let offset: BigRational = normal.iter().zip(&lam_q).map(|(c, a)| c * a).sum();
            hs.push(HalfSpace::new(normal, offset));
        }
        Ok(Polytope::new(n, hs))
    }

    /// Dominant weights `λ − Σ c_i α_i` with `c_i ∈ ℕ`, ordered by the
    /// coefficient vector `c` (so `λ` itself comes first).
    pub fn p_lambda_lattice_points(&self, lam: &Weight) -> Result<Vec<Weight>> {
        self.check_dominant(lam)?;
        let bounds: Vec<i64> = self
            .root_coordinates(lam)
            .iter()
            .map(|c| c.floor().to_integer().to_i64().expect("small root coordinate"))
            .collect();
        let mut out = Vec::new();
        let mut c = vec![0i64; self.n];
        loop {
            let mut mu = lam.coords().to_vec();
            for (i, &ci) in c.iter().enumerate() {
                for (m, a) in mu.iter_mut().zip(&self.cartan[i]) {
                    *m -= ci * a;
                }
            }
            let mu = Weight(mu);
            if mu.is_dominant() {
                out.push(mu);
            }
            // Odometer over the box ∏ [0, bounds_i].
            let mut k = self.n;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                if c[k] < bounds[k] {
                    c[k] += 1;
                    break;
                }
                c[k] = 0;
            }
        }
    }
}
