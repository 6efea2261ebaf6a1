//! Planes spanned by pairs of vectors of a list in `ℤ³`.

use std::collections::BTreeMap;

use num_integer::Integer;

use super::vpf::VectorList;
use crate::exact::linalg::cross3;
use crate::{Error, Result};

/// Primitive integer normal of a plane through the origin, scaled so the
/// first nonzero entry is positive.
pub type Normal = [i64; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallPlane {
    pub normal: Normal,
    /// Vectors of the list lie strictly on both sides, so the plane cuts the
    /// interior of the cone; otherwise it only supports a boundary facet.
    pub interior: bool,
}

pub fn primitive_normal(v: [i64; 3]) -> Option<Normal> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    let mut n = v.map(|x| x / g);
    if n.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        n = n.map(|x| -x);
    }
    Some(n)
}

/// Every plane spanned by two independent vectors of `A`, deduplicated,
/// including the planes that only support the boundary of the cone.
pub fn wall_hyperplanes(a: &VectorList) -> Result<Vec<WallPlane>> {
    if a.dim() != 3 {
        return Err(Error::Domain(format!("walls are computed in dimension 3, not {}", a.dim())));
    }
    let vs: Vec<[i64; 3]> = a.vectors().iter().map(|v| [v[0], v[1], v[2]]).collect();
    let mut planes: BTreeMap<Normal, bool> = BTreeMap::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let Some(n) = primitive_normal(cross3(vs[i], vs[j])) else { continue };
            planes.entry(n).or_insert_with(|| {
                let side = |v: &[i64; 3]| n[0] * v[0] + n[1] * v[1] + n[2] * v[2];
                vs.iter().any(|v| side(v) > 0) && vs.iter().any(|v| side(v) < 0)
            });
        }
    }
    Ok(planes.into_iter().map(|(normal, interior)| WallPlane { normal, interior }).collect())
}

/// Number of vectors of `A` not lying on the plane with normal `n`.
pub fn vectors_off_plane(a: &VectorList, n: Normal) -> usize {
    a.vectors().iter().filter(|v| n[0] * v[0] + n[1] * v[1] + n[2] * v[2] != 0).count()
}
