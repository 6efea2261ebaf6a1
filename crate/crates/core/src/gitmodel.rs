//! Stability of linearizations on the space of complete collineations of
//! twisted cubics: effective strata, chambers of the nef cone, surviving
//! boundary divisors and central valuations.

use std::fmt;

use crate::chambers::asymptotic::CELL_REPRESENTATIVES;
use crate::chambers::walls::primitive_normal;
use crate::exact::linalg::cross3;
use crate::exact::{rat, BigRational};
use crate::rootdata::Weight;
use crate::{Error, Result};

/// The 24 effective strata `(c₁, c₂, c₃)`.
pub const EFFECTIVE_STRATA: [[i64; 3]; 24] = [
    [3, 4, 3],
    [3, 4, 1],
    [3, 2, 3],
    [1, 4, 3],
    [1, 4, 1],
    [3, 2, -1],
    [3, 0, 1],
    [1, 0, 3],
    [-1, 2, 3],
    [3, 0, -1],
    [-1, 0, 3],
    [1, -2, 1],
    [-1, 2, -1],
    [1, 0, -3],
    [-3, 0, 1],
    [1, -2, -3],
    [-1, 0, -3],
    [-3, 0, -1],
    [-3, -2, 1],
    [-1, -4, -1],
    [-1, -4, -3],
    [-3, -2, -3],
    [-3, -4, -1],
    [-3, -4, -3],
];

/// Pairs of marked boundary points of the nef-cone picture; each pair spans
/// one of the five walls.
pub const MARKED_WALL_ENDPOINTS: [([i64; 3], [i64; 3]); 5] = [
    ([0, 1, 0], [3, 0, 1]),
    ([0, 1, 0], [1, 0, 3]),
    ([2, 1, 0], [0, 1, 2]),
    ([3, 0, 1], [2, 1, 0]),
    ([1, 0, 3], [0, 1, 2]),
];

/// Primitive normals of the five walls, in the order of [`MARKED_WALL_ENDPOINTS`].
pub fn wall_normals() -> [[i64; 3]; 5] {
    MARKED_WALL_ENDPOINTS.map(|(p, q)| primitive_normal(cross3(p, q)).expect("distinct rays"))
}

pub fn is_mixed_sign(c: &[i64; 3]) -> bool {
    c.iter().any(|&x| x > 0) && c.iter().any(|&x| x < 0)
}

fn pairing(a: &[i64; 3], c: &[i64; 3]) -> i64 {
    a.iter().zip(c).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryDivisor {
    E1,
    E2,
    E3,
}

impl fmt::Display for BoundaryDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Position of a linearization relative to the five walls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChamberLocation {
    /// Off every wall, in the (closed) cell with this label.
    Cell(&'static str),
    /// On the walls with these normals.
    Wall(Vec<[i64; 3]>),
}

impl fmt::Display for ChamberLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cell(l) => f.write_str(l),
            Self::Wall(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| format!("({},{},{})", n[0], n[1], n[2])).collect();
                write!(f, "wall {}", parts.join(" "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationReport {
    pub input: [i64; 3],
    pub unstable_strata: Vec<[i64; 3]>,
    pub strictly_semistable_strata: Vec<[i64; 3]>,
    pub is_general: bool,
    pub signature: [i8; 5],
    pub chamber: ChamberLocation,
    pub boundary_divisors: Vec<BoundaryDivisor>,
}

fn signature(a: &[i64; 3]) -> [i8; 5] {
    wall_normals().map(|n| pairing(a, &n).signum() as i8)
}

/// Boundary divisors surviving in the quotient for a nef linearization.
pub fn boundary_divisors(a: [i64; 3]) -> Vec<BoundaryDivisor> {
    use BoundaryDivisor::*;
    match a {
        [a1, _, a3] if a1 > 0 && a3 > 0 => vec![E1, E2, E3],
        [_, a2, _] if a2 > 0 => vec![E1, E3],
        [0, 0, _] => vec![E1],
        _ => vec![E3],
    }
}

/// Hilbert–Mumford classification of the linearization `L_a`.
pub fn classify_linearization(a: [i64; 3]) -> Result<LinearizationReport> {
    if a.iter().any(|&x| x < 0) {
        return Err(Error::Domain(format!("linearization {a:?} is not nef")));
    }
    if a == [0, 0, 0] {
        return Err(Error::Domain("the trivial linearization has no quotient".into()));
    }
    let unstable_strata = EFFECTIVE_STRATA.iter().copied().filter(|c| pairing(&a, c) > 0).collect();
    let strictly_semistable_strata: Vec<[i64; 3]> = EFFECTIVE_STRATA.iter().copied().filter(|c| pairing(&a, c) == 0).collect();
    let is_general = !strictly_semistable_strata.iter().any(is_mixed_sign);
    let sig = signature(&a);
    let chamber = if sig.contains(&0) {
        ChamberLocation::Wall(wall_normals().into_iter().zip(sig).filter(|(_, s)| *s == 0).map(|(n, _)| n).collect())
    } else {
        let label = CELL_REPRESENTATIVES
            .iter()
            .find(|(_, r)| signature(r) == sig)
            .map(|(l, _)| *l)
            .ok_or_else(|| Error::Chamber(format!("signature {sig:?} of {a:?} matches no cell")))?;
        ChamberLocation::Cell(label)
    };
    Ok(LinearizationReport {
        input: a,
        unstable_strata,
        strictly_semistable_strata,
        is_general,
        signature: sig,
        chamber,
        boundary_divisors: boundary_divisors(a),
    })
}

/// The three central valuations `((a+2b+3c)/4, (a+2b+c)/2, (3a+2b+c)/4)`.
pub fn central_valuations(lam: &Weight) -> Result<[BigRational; 3]> {
    if lam.rank() != 3 {
        return Err(Error::Domain(format!("central valuations are defined for rank 3, got {lam}")));
    }
    lam.require_dominant()?;
    let c = lam.coords();
    let (a, b, cc) = (c[0], c[1], c[2]);
    Ok([rat(a + 2 * b + 3 * cc, 4), rat(a + 2 * b + cc, 2), rat(3 * a + 2 * b + cc, 4)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chambers::asymptotic::{wall_signature, CUBIC_WALLS};
    use crate::exact::int;
    use crate::invariants::sl2_invariant_dim;
    use crate::rootdata::RootSystemA;
    use BoundaryDivisor::*;

    #[test]
    fn table_is_negation_closed() {
        for c in EFFECTIVE_STRATA {
            assert!(EFFECTIVE_STRATA.contains(&c.map(|x| -x)), "{c:?}");
        }
        assert!(EFFECTIVE_STRATA.contains(&[3, 4, 3]));
        assert_eq!(EFFECTIVE_STRATA.iter().filter(|c| is_mixed_sign(c)).count(), 10);
    }

    #[test]
    fn computed_walls_match_mixed_strata() {
        let walls = wall_normals();
        assert_eq!(walls, CUBIC_WALLS);
        for c in EFFECTIVE_STRATA.iter().filter(|c| is_mixed_sign(c)) {
            let n = primitive_normal(*c).unwrap();
            assert!(walls.contains(&n), "{c:?}");
        }
    }

    #[test]
    fn examples() {
        let r = classify_linearization([1, 1, 1]).unwrap();
        assert!(r.strictly_semistable_strata.contains(&[1, -2, 1]));
        assert!(!r.is_general);
        assert_eq!(r.chamber, ChamberLocation::Wall(vec![[1, -2, 1]]));

        let r = classify_linearization([2, 1, 2]).unwrap();
        assert!(r.is_general && r.strictly_semistable_strata.is_empty());
        assert_eq!(r.chamber, ChamberLocation::Cell("c4"));
        assert_eq!(r.boundary_divisors, vec![E1, E2, E3]);

        assert_eq!(classify_linearization([1, 0, 0]).unwrap().boundary_divisors, vec![E3]);
        assert_eq!(classify_linearization([0, 1, 0]).unwrap().boundary_divisors, vec![E1, E3]);
        assert_eq!(classify_linearization([0, 0, 5]).unwrap().boundary_divisors, vec![E1]);
        assert!(classify_linearization([1, -1, 0]).is_err());
    }

    #[test]
    fn general_iff_off_walls() {
        for a1 in 0..12 {
            for a2 in 0..12 {
                for a3 in 0..12 {
                    if [a1, a2, a3] == [0, 0, 0] {
                        continue;
                    }
                    let r = classify_linearization([a1, a2, a3]).unwrap();
                    assert_eq!(r.is_general, !r.signature.contains(&0), "{:?}", [a1, a2, a3]);
                }
            }
        }
    }

    #[test]
    fn chambers_agree_with_asymptotic_cells() {
        for (label, rep) in CELL_REPRESENTATIVES {
            let r = classify_linearization(rep).unwrap();
            assert_eq!(r.chamber, ChamberLocation::Cell(label));
            assert_eq!(r.signature, wall_signature(&rep.map(int)));
        }
    }

    #[test]
    fn valuations() {
        let v = |c: [i64; 3]| central_valuations(&Weight::new(c)).unwrap();
        assert_eq!(v([0, 0, 0]), [int(0), int(0), int(0)]);
        assert_eq!(v([4, 0, 0]), [int(1), int(2), int(3)]);
        assert_eq!(v([1, 1, 1]), [rat(3, 2), int(2), rat(3, 2)]);
    }

    #[test]
    fn valuations_on_invariant_weights() {
        // Integral exactly on the root lattice; (0,1,0) carries an invariant
        // but has valuations (1/2, 1, 1/2).
        let rs = RootSystemA::new(3).unwrap();
        let mut off_lattice = 0;
        for a in 0..=10 {
            for b in 0..=10 {
                for c in 0..=10 {
                    let lam = Weight::new([a, b, c]);
                    if sl2_invariant_dim(&rs, &lam).unwrap() == 0 {
                        continue;
                    }
                    let vals = central_valuations(&lam).unwrap();
                    let integral = vals.iter().all(|x| x.is_integer());
                    assert_eq!(integral, rs.in_root_lattice(&lam), "{lam}");
                    assert!(vals.iter().all(|x| (x * int(2)).is_integer()));
                    off_lattice += usize::from(!integral);
                }
            }
        }
        assert!(off_lattice > 0);
    }
}
