//! Volumes of the divisors `L_λ` on the complete conics and complete twisted
//! cubics, as exact integrals of asymptotic dimensions over `𝒫_λ`.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::chambers::asymptotic::{dimas_vh_piecewise, AsymptoticCase};
use crate::exact::linalg::solve;
use crate::exact::rational::factorial;
use crate::exact::{int, rat, BigRational, HalfSpace, MultiPoly, Polytope};
use crate::gitmodel::{classify_linearization, ChamberLocation};
use crate::rootdata::{RootSystemA, Weight};
use crate::{Error, Result};

/// A validated volume computation: the case fixes the ambient group and
/// the weight must be dominant of the matching rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeProblem {
    case: AsymptoticCase,
    lam: Weight,
}

impl VolumeProblem {
    pub fn new(case: AsymptoticCase, lam: Weight) -> Result<Self> {
        if lam.rank() != case.rank() {
            return Err(Error::Rank { rank: lam.rank(), expected: case.rank() });
        }
        lam.require_dominant()?;
        Ok(Self { case, lam })
    }

    pub fn case(&self) -> AsymptoticCase {
        self.case
    }

    pub fn lam(&self) -> &Weight {
        &self.lam
    }

    /// Dimension of the homogeneous space: 5 for conics, 12 for cubics.
    pub fn s(&self) -> u32 {
        match self.case {
            AsymptoticCase::Conic => 5,
            AsymptoticCase::Cubic => 12,
        }
    }

    /// `s!/(N+1)`.
    pub fn prefactor(&self) -> BigRational {
        BigRational::new(factorial(self.s() as usize), (self.case.rank() as i64 + 1).into())
    }

    fn root_system(&self) -> RootSystemA {
        RootSystemA::new(self.case.rank()).expect("rank 2 or 3")
    }

    /// The integration regions: `𝒫_λ` cut by the closed guards of each
    /// integrand piece, paired with `dimas_V · piece`.
    fn regions(&self) -> Result<Vec<(Polytope, MultiPoly)>> {
        let rs = self.root_system();
        let p_lam = rs.build_p_lambda(&self.lam)?;
        let dv = rs.dimas_v_poly();
        Ok(dimas_vh_piecewise(self.case)
            .pieces()
            .iter()
            .map(|piece| {
                let region = p_lam.intersect(piece.guards.iter().map(|g| g.closed_halfspace()));
                (region, &dv * &piece.poly)
            })
            .collect())
    }
}

fn integrate_regions(regions: Vec<(Polytope, MultiPoly)>) -> Result<BigRational> {
    regions
        .into_par_iter()
        .map(|(region, poly)| region.integrate(&poly))
        .try_reduce(BigRational::zero, |a, b| Ok(a + b))
}

/// `s!/(N+1) · ∫_{𝒫_λ} dimas_V · dimas_VH`.
pub fn volume(problem: &VolumeProblem) -> Result<BigRational> {
    Ok(problem.prefactor() * integrate_regions(problem.regions()?)?)
}

/// The same integral with every region additionally split along `cut`.
/// Agreement with [`volume`] checks that the subdivision does not matter.
pub fn volume_refined(problem: &VolumeProblem, cut: &HalfSpace) -> Result<BigRational> {
    if cut.normal.len() != problem.case.rank() {
        return Err(Error::Domain("cutting hyperplane has the wrong dimension".into()));
    }
    let flipped = HalfSpace::new(cut.normal.iter().map(|c| -c).collect(), -&cut.offset);
    let halves: Vec<(Polytope, MultiPoly)> = problem
        .regions()?
        .into_iter()
        .flat_map(|(region, poly)| {
            [(region.intersect([cut.clone()]), poly.clone()), (region.intersect([flipped.clone()]), poly)]
        })
        .collect();
    Ok(problem.prefactor() * integrate_regions(halves)?)
}

/// `(a⁵ + 10a⁴b + 40a³b² + 40a²b³ + 10ab⁴ + b⁵)/32`.
pub fn conic_volume_polynomial() -> MultiPoly {
    const TERMS: [(u32, i64); 6] = [(5, 1), (4, 10), (3, 40), (2, 40), (1, 10), (0, 1)];
    MultiPoly::from_terms(2, TERMS.iter().map(|&(i, c)| (vec![i, 5 - i], rat(c, 32))))
}

/// Every exponent vector of total degree `deg` in `arity` variables.
fn monomials(arity: usize, deg: u32) -> Vec<Vec<u32>> {
    if arity == 1 {
        return vec![vec![deg]];
    }
    (0..=deg)
        .rev()
        .flat_map(|e| {
            monomials(arity - 1, deg - e).into_iter().map(move |mut rest| {
                rest.insert(0, e);
                rest
            })
        })
        .collect()
}

fn monomial_value(e: &[u32], x: &[i64]) -> BigRational {
    e.iter().zip(x).map(|(&k, &v)| int(v).pow(k as i32)).fold(BigRational::one(), |a, b| a * b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeMismatch {
    pub weight: Weight,
    pub expected: BigRational,
    pub actual: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolynomialityCheck {
    /// Compared against the closed conic formula.
    ClosedForm,
    /// A homogeneous polynomial was fitted on the first samples.
    Fitted(MultiPoly),
    /// Too few samples to fit; checked `vol(2μ) = 2^s vol(μ)` instead.
    Homogeneity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialityReport {
    pub case: AsymptoticCase,
    pub chamber: String,
    pub check: PolynomialityCheck,
    pub checked: usize,
    pub mismatches: Vec<VolumeMismatch>,
}

fn chamber_label(case: AsymptoticCase, w: &Weight) -> Result<String> {
    w.require_dominant()?;
    if w.rank() != case.rank() {
        return Err(Error::Rank { rank: w.rank(), expected: case.rank() });
    }
    if w.coords().iter().all(|&c| c == 0) {
        return Err(Error::Chamber("the zero weight lies in no chamber".into()));
    }
    match case {
        AsymptoticCase::Conic => Ok("nef".into()),
        AsymptoticCase::Cubic => {
            let c = w.coords();
            match classify_linearization([c[0], c[1], c[2]])?.chamber {
                ChamberLocation::Cell(l) => Ok(l.to_string()),
                wall => Err(Error::Chamber(format!("{w} lies on {wall}"))),
            }
        }
    }
}

/// Checks that the volume restricted to the chamber of `chamber_rep` is a
/// single polynomial. In the cubic case a degree-12 form is fitted once more
/// than 91 samples are supplied.
pub fn verify_volume_polynomiality(
    case: AsymptoticCase,
    chamber_rep: &Weight,
    test_weights: &[Weight],
) -> Result<PolynomialityReport> {
    let chamber = chamber_label(case, chamber_rep)?;
    for w in test_weights {
        let l = chamber_label(case, w)?;
        if l != chamber {
            return Err(Error::Chamber(format!("{w} lies in {l}, not in {chamber}")));
        }
    }
    let vols: Vec<BigRational> = test_weights
        .par_iter()
        .map(|w| volume(&VolumeProblem::new(case, w.clone())?))
        .collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    let mut push = |w: &Weight, expected: BigRational, actual: &BigRational| {
        if &expected != actual {
            mismatches.push(VolumeMismatch { weight: w.clone(), expected, actual: actual.clone() });
        }
    };

    let s = match case {
        AsymptoticCase::Conic => 5,
        AsymptoticCase::Cubic => 12,
    };
    let basis = monomials(case.rank(), s);
    let check = if case == AsymptoticCase::Conic {
        let p = conic_volume_polynomial();
        for (w, v) in test_weights.iter().zip(&vols) {
            push(w, p.eval_i64(w.coords()), v);
        }
        PolynomialityCheck::ClosedForm
    } else if test_weights.len() > basis.len() {
        let (fit, rest) = test_weights.split_at(basis.len());
        let rows: Vec<Vec<BigRational>> =
            fit.iter().map(|w| basis.iter().map(|e| monomial_value(e, w.coords())).collect()).collect();
        let coeffs = solve(&rows, &vols[..basis.len()])
            .ok_or_else(|| Error::Domain("sample weights do not determine a unique form".into()))?;
        let poly = MultiPoly::from_terms(case.rank(), basis.into_iter().zip(coeffs));
        for (w, v) in rest.iter().zip(&vols[fit.len()..]) {
            push(w, poly.eval_i64(w.coords()), v);
        }
        PolynomialityCheck::Fitted(poly)
    } else {
        let doubled: Vec<BigRational> = test_weights
            .par_iter()
            .map(|w| volume(&VolumeProblem::new(case, w.scale(2))?))
            .collect::<Result<_>>()?;
        let factor = int(1 << s);
        for ((w, v), d) in test_weights.iter().zip(&vols).zip(&doubled) {
            push(w, v * &factor, d);
        }
        PolynomialityCheck::Homogeneity
    };
    Ok(PolynomialityReport { case, chamber, check, checked: test_weights.len(), mismatches })
}
