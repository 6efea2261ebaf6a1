//! One-variable Laurent polynomials with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// `Σ c_e t^e` over `e ∈ ℤ`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c · t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// `t^e − t^{−e}`, the building block of Weyl-type quotients.
    pub fn antisymmetric(e: i64) -> Self {
        Self::monomial(1, e) - Self::monomial(1, -e)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Value at `t = 1`, i.e. the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Dense coefficient vector starting at `min_exponent`.
    fn to_dense(&self) -> (i64, Vec<BigInt>) {
        let (Some(lo), Some(hi)) = (self.min_exponent(), self.max_exponent()) else {
            return (0, Vec::new());
        };
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.coeffs {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(lo: i64, v: Vec<BigInt>) -> Self {
        let coeffs = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (lo + i as i64, c))
            .collect();
        Self { coeffs }
    }

    /// Exact quotient `self / den`.
    ///
    /// Both operands are shifted by `t^{-min exponent}` and divided as ordinary
    /// polynomials; a nonzero remainder (or a non-integral quotient
    /// coefficient) is reported as [`Error::Inexact`].
    pub fn divide_exact(&self, den: &LaurentPoly) -> Result<LaurentPoly> {
        if den.is_zero() {
            return Err(Error::Domain("division by the zero Laurent polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (nlo, mut num) = self.to_dense();
        let (dlo, d) = den.to_dense();
        if num.len() < d.len() {
            return Err(Error::Inexact(format!("{self} is not divisible by {den}")));
        }
        let lead = d.last().expect("nonzero divisor");
        let qlen = num.len() - d.len() + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &num[i + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::Inexact(format!("{self} is not divisible by {den} over the integers")));
            }
            for (j, dj) in d.iter().enumerate() {
                if !dj.is_zero() {
                    num[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        if num.iter().any(|c| !c.is_zero()) {
            return Err(Error::Inexact(format!("{self} is not divisible by {den}")));
        }
        Ok(Self::from_dense(nlo - dlo, q))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match *e {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                _ if c.is_one() => write!(f, "t^{e}")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (alo, a) = self.to_dense();
        let (blo, b) = rhs.to_dense();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        LaurentPoly::from_dense(alo + blo, out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(e: i64) -> LaurentPoly {
        LaurentPoly::monomial(1, e)
    }

    #[test]
    fn q_integers() {
        let two = LaurentPoly::antisymmetric(2).divide_exact(&LaurentPoly::antisymmetric(1)).unwrap();
        assert_eq!(two, t(1) + t(-1));
        let three = LaurentPoly::antisymmetric(3).divide_exact(&LaurentPoly::antisymmetric(1)).unwrap();
        assert_eq!(three, t(2) + t(0) + t(-2));
    }

    #[test]
    fn degree_deficit_is_inexact() {
        let err = LaurentPoly::antisymmetric(2).divide_exact(&LaurentPoly::antisymmetric(3));
        assert!(matches!(err, Err(Error::Inexact(_))));
    }

    #[test]
    fn remainder_is_inexact() {
        // (t^2 + 1) / (t - 1) leaves remainder 2.
        let err = (t(2) + t(0)).divide_exact(&(t(1) - t(0)));
        assert!(matches!(err, Err(Error::Inexact(_))));
    }

    #[test]
    fn zero_divisor_rejected() {
        assert!(matches!(t(1).divide_exact(&LaurentPoly::zero()), Err(Error::Domain(_))));
    }

    #[test]
    fn no_stored_zeros() {
        let p = t(3) - t(3);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    fn laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-12i64..12, -20i64..20), 1..8).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn division_round_trip(a in laurent(), b in laurent()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.divide_exact(&b).unwrap(), a);
        }
    }
}
