//! Asymptotic dimension of the invariant spaces `V_{kλ}^{SL₂}` as `k → ∞`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::exact::linalg::dot;
use crate::exact::{int, rat, BigRational, Guard, MultiPoly, Piece, PiecewisePoly};
use crate::invariants::sl2_invariant_dim;
use crate::rootdata::{RootSystemA, Weight};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AsymptoticCase {
    /// `SL₂ ⊂ SL₃`, rank 2.
    Conic,
    /// `SL₂ ⊂ SL₄`, rank 3.
    Cubic,
}

impl AsymptoticCase {
    pub fn rank(self) -> usize {
        match self {
            Self::Conic => 2,
            Self::Cubic => 3,
        }
    }
}

impl fmt::Display for AsymptoticCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Conic => "conic",
            Self::Cubic => "cubic",
        })
    }
}

impl FromStr for AsymptoticCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conic" => Ok(Self::Conic),
            "cubic" => Ok(Self::Cubic),
            _ => Err(Error::Domain(format!("unknown case {s:?}; expected conic or cubic"))),
        }
    }
}

/// The five walls of the cubic chamber decomposition.
pub const CUBIC_WALLS: [[i64; 3]; 5] = [[1, 0, -3], [3, 0, -1], [1, -2, 1], [1, -2, -3], [3, 2, -1]];

/// One interior point per cell of the cubic decomposition.
pub const CELL_REPRESENTATIVES: [(&str, [i64; 3]); 8] = [
    ("c1", [10, 1, 1]),
    ("c2", [4, 1, 1]),
    ("c3", [4, 3, 1]),
    ("c4", [2, 1, 2]),
    ("c5", [1, 2, 1]),
    ("c6", [1, 1, 10]),
    ("c7", [1, 1, 4]),
    ("c8", [1, 3, 4]),
];

/// Sign of each of the five wall forms at `x`.
pub fn wall_signature(x: &[BigRational]) -> [i8; 5] {
    CUBIC_WALLS.map(|w| {
        let v = dot(&w.map(int), x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    })
}

/// Cell label for a point off all five walls.
pub fn cubic_cell_of(x: &[BigRational]) -> Option<&'static str> {
    let sig = wall_signature(x);
    CELL_REPRESENTATIVES.iter().find(|(_, r)| wall_signature(&r.map(int)) == sig).map(|(l, _)| *l)
}

/// Truncated terms `sign · ⟨u⟩³` of the cubic formula, each `u` being ± a wall form.
const TRUNCATED: [(i64, [i64; 3]); 5] =
    [(1, [-1, 2, -1]), (1, [-3, 0, 1]), (1, [1, 0, -3]), (-1, [1, -2, -3]), (-1, [-3, -2, 1])];

/// `48xyz − 2y³ − 6y(x+z−y)²`, the part shared by every cell (times 576).
fn cubic_base() -> MultiPoly {
    let (x, y, z) = (MultiPoly::var(3, 0), MultiPoly::var(3, 1), MultiPoly::var(3, 2));
    let xyz = &(&x * &y) * &z;
    let s = &(&x + &z) - &y;
    let t1 = xyz.scale(&int(48));
    let t2 = y.pow(3).scale(&int(-2));
    let t3 = (&y * &s.pow(2)).scale(&int(-6));
    &(&t1 + &t2) + &t3
}

fn check_chamber_point(case: AsymptoticCase, x: &[BigRational]) -> Result<()> {
    if x.len() != case.rank() {
        return Err(Error::Domain(format!("{case} case expects {} coordinates, got {}", case.rank(), x.len())));
    }
    if x.iter().any(Signed::is_negative) {
        return Err(Error::Domain("point outside the closed Weyl chamber".into()));
    }
    Ok(())
}

/// Asymptotic invariant dimension at a point of the closed Weyl chamber.
/// The truncated cube `⟨u⟩³` is `u³` for `u ≥ 0` and `0` otherwise.
pub fn dimas_vh(case: AsymptoticCase, x: &[BigRational]) -> Result<BigRational> {
    check_chamber_point(case, x)?;
    match case {
        AsymptoticCase::Conic => Ok(rat(1, 4)),
        AsymptoticCase::Cubic => {
            let mut acc = cubic_base().eval(x);
            for (sign, form) in TRUNCATED {
                let u = dot(&form.map(int), x);
                if !u.is_negative() {
                    acc += int(sign) * &u * &u * &u;
                }
            }
            Ok(acc * rat(1, 576))
        }
    }
}

/// The asymptotic dimension as a piecewise polynomial: one piece on the
/// chamber for the conic case, eight cubic pieces labelled `c1`…`c8` otherwise.
pub fn dimas_vh_piecewise(case: AsymptoticCase) -> PiecewisePoly {
    match case {
        AsymptoticCase::Conic => PiecewisePoly::new(
            2,
            vec![Piece {
                label: "c".into(),
                guards: vec![Guard::ge(&[1, 0]), Guard::ge(&[0, 1])],
                poly: MultiPoly::constant(2, rat(1, 4)),
            }],
        ),
        AsymptoticCase::Cubic => {
            let base = cubic_base();
            let pieces = CELL_REPRESENTATIVES
                .iter()
                .map(|(label, rep)| {
                    let rep_q = rep.map(int);
                    let mut poly = base.clone();
                    for (sign, form) in TRUNCATED {
                        if dot(&form.map(int), &rep_q).is_positive() {
                            poly = &poly + &MultiPoly::linear_i64(&form).pow(3).scale(&int(sign));
                        }
                    }
                    let mut guards = vec![Guard::ge(&[1, 0, 0]), Guard::ge(&[0, 1, 0]), Guard::ge(&[0, 0, 1])];
                    for (w, s) in CUBIC_WALLS.iter().zip(wall_signature(&rep_q)) {
                        guards.push(if s > 0 { Guard::ge(w) } else { Guard::le(w) });
                    }
                    Piece { label: (*label).into(), guards, poly: poly.scale(&rat(1, 576)) }
                })
                .collect();
            PiecewisePoly::new(3, pieces)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergencePoint {
    pub k: i64,
    pub invariant_dim: u64,
    /// `dim V_{kλ}^{SL₂} / (k³ · dimas_vh(λ))`.
    pub ratio: BigRational,
}

/// Ratios of exact invariant dimensions along the ray `kλ` to the cubic
/// asymptotic prediction.
pub fn verify_asymptotic_convergence(lam: &Weight, k_list: &[i64]) -> Result<Vec<ConvergencePoint>> {
    let rs = RootSystemA::new(3)?;
    rs.check_rank(lam)?;
    lam.require_dominant()?;
    let c = lam.coords();
    if (c[0] + 2 * c[1] + 3 * c[2]) % 2 != 0 {
        return Err(Error::Domain(format!("{lam}: a+2b+3c is odd, so every odd multiple has no invariants")));
    }
    if let Some(k) = k_list.iter().find(|&&k| k <= 0) {
        return Err(Error::Domain(format!("multiplier {k} must be positive")));
    }
    let predicted = dimas_vh(AsymptoticCase::Cubic, &lam.to_rationals())?;
    if predicted.is_zero() {
        return Err(Error::DegenerateDirection(lam.to_string()));
    }
    k_list
        .par_iter()
        .map(|&k| {
            let d = sl2_invariant_dim(&rs, &lam.scale(k))?;
            let ratio = BigRational::from_integer(d.into()) / (int(k * k * k) * &predicted);
            Ok(ConvergencePoint { k, invariant_dim: d, ratio })
        })
        .collect()
}
