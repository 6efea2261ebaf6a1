//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{int, BigRational};

pub type Exponent = Vec<u32>;

/// Polynomial in `arity` variables, stored as a map from exponent vectors to
/// nonzero rational coefficients. Exponent vectors are ordered
/// lexicographically, which is also the monomial order used by [`MultiPoly::div_rem`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: BigRational) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity], c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, BigRational::one())
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index {i} out of range for arity {arity}");
        let mut e = vec![0; arity];
        e[i] = 1;
        let mut p = Self::zero(arity);
        p.add_term(e, BigRational::one());
        p
    }

    /// `Σ c_i x_i`.
    pub fn linear(coeffs: &[BigRational]) -> Self {
        let arity = coeffs.len();
        let mut p = Self::zero(arity);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; arity];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn linear_i64(coeffs: &[i64]) -> Self {
        Self::linear(&coeffs.iter().map(|&c| int(c)).collect::<Vec<_>>())
    }

    /// `Σ c_i x_i + c_0`.
    pub fn affine(coeffs: &[BigRational], offset: &BigRational) -> Self {
        let mut p = Self::linear(coeffs);
        p.add_term(vec![0; coeffs.len()], offset.clone());
        p
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent length does not match arity");
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(e.len(), self.arity);
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when every term has total degree `deg` (the zero polynomial counts).
    pub fn is_homogeneous_of_degree(&self, deg: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == deg)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Self { arity: self.arity, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.arity);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        assert_eq!(x.len(), self.arity, "point dimension does not match arity");
        // Power tables keep repeated exponentiation out of the inner loop.
        let maxdeg = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<BigRational>> = x
            .iter()
            .map(|xi| {
                let mut v = Vec::with_capacity(maxdeg + 1);
                v.push(BigRational::one());
                for k in 1..=maxdeg {
                    let next = &v[k - 1] * xi;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term *= &powers[i][k as usize];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_i64(&self, x: &[i64]) -> BigRational {
        self.eval(&x.iter().map(|&v| int(v)).collect::<Vec<_>>())
    }

    /// Reorders variables: variable `i` of `self` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity);
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.arity];
            for (i, &k) in e.iter().enumerate() {
                f[perm[i]] = k;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Substitutes `x_i ↦ images[i]`; the result has the arity of the images.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.arity, "one image per variable");
        let target = images.first().map_or(0, |p| p.arity);
        let maxdeg: Vec<u32> = (0..self.arity)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .zip(&maxdeg)
            .map(|(img, &d)| {
                let mut v = vec![MultiPoly::one(target)];
                for k in 1..=d as usize {
                    let next = &v[k - 1] * img;
                    v.push(next);
                }
                v
            })
            .collect();
        let terms: Vec<(&Exponent, &BigRational)> = self.terms.iter().collect();
        compose_rec(&terms, 0, &powers, target)
    }

    /// Division with remainder by a single polynomial under the lexicographic
    /// order: `self = q·divisor + r` with no term of `r` divisible by the
    /// leading term of `divisor`. In particular `r = 0` iff `divisor | self`.
    pub fn div_rem(&self, divisor: &MultiPoly) -> (MultiPoly, MultiPoly) {
        assert_eq!(self.arity, divisor.arity);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (lead_e, lead_c) = divisor.terms.iter().next_back().expect("nonzero divisor");
        let mut q = MultiPoly::zero(self.arity);
        let mut r = MultiPoly::zero(self.arity);
        let mut p = self.clone();
        while let Some((e, c)) = p.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(lead_e).all(|(a, b)| a >= b) {
                let shift: Exponent = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
                let factor = &c / lead_c;
                let mut mono = MultiPoly::zero(self.arity);
                mono.add_term(shift, factor);
                p = &p - &(&mono * divisor);
                q = &q + &mono;
            } else {
                p.terms.remove(&e);
                r.add_term(e, c);
            }
        }
        (q, r)
    }

    pub fn is_divisible_by(&self, divisor: &MultiPoly) -> bool {
        self.div_rem(divisor).1.is_zero()
    }

    pub fn max_abs_coeff(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

fn compose_rec(
    terms: &[(&Exponent, &BigRational)],
    var: usize,
    powers: &[Vec<MultiPoly>],
    target: usize,
) -> MultiPoly {
    if var == powers.len() {
        let c: BigRational = terms.iter().map(|(_, c)| (*c).clone()).sum();
        return MultiPoly::constant(target, c);
    }
    let mut out = MultiPoly::zero(target);
    let mut start = 0;
    while start < terms.len() {
        let k = terms[start].0[var];
        let mut end = start;
        while end < terms.len() && terms[end].0[var] == k {
            end += 1;
        }
        // Lex order keeps each group contiguous at every depth.
        let inner = compose_rec(&terms[start..end], var + 1, powers, target);
        let piece = if k == 0 { inner } else { &inner * &powers[var][k as usize] };
        out = &out + &piece;
        start = end;
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z", "w"];
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    let name = if self.arity <= names.len() { names[v].to_string() } else { format!("x{}", v + 1) };
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, rhs.arity);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            match out.terms.get_mut(e) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        out.terms.remove(e);
                    }
                }
                None => {
                    out.terms.insert(e.clone(), c.clone());
                }
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { arity: self.arity, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, rhs.arity);
        let mut acc: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { arity: self.arity, terms: acc }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
