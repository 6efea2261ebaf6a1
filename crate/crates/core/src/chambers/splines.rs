//! Multivariate splines of the four six-vector lists in `ℤ³` and their
//! relation to the partition functions and the asymptotic dimension.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use super::asymptotic::{dimas_vh, AsymptoticCase};
use super::lattice::{lattice_span_and_index, Lattice};
use super::vpf::{PartitionTable, VectorList};
use super::walls::{primitive_normal, vectors_off_plane};
use crate::exact::linalg::dot;
use crate::exact::{int, rat, BigRational, Guard, HalfSpace, MultiPoly, Piece, PiecewisePoly, Polytope};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ListId {
    A1,
    A2,
    A3,
    A4,
}

impl ListId {
    pub const ALL: [ListId; 4] = [ListId::A1, ListId::A2, ListId::A3, ListId::A4];

    pub fn vectors(self) -> [[i64; 3]; 6] {
        match self {
            ListId::A1 => [[4, 0, 0], [3, 0, 1], [1, 0, 3], [0, 0, 4], [0, 1, 0], [0, 3, 0]],
            ListId::A2 => [[4, 0, 0], [0, 0, 4], [0, 1, 0], [0, 3, 0], [2, 1, 0], [0, 1, 2]],
            ListId::A3 => [[4, 0, 0], [3, 0, 1], [0, 0, 4], [0, 1, 0], [0, 3, 0], [2, 1, 0]],
            ListId::A4 => [[4, 0, 0], [1, 0, 3], [0, 0, 4], [0, 1, 0], [0, 3, 0], [0, 1, 2]],
        }
    }

    pub fn vector_list(self) -> VectorList {
        VectorList::from_arrays(&self.vectors()).expect("built-in list")
    }

    /// Weight of this list in the decomposition of the cubic asymptotic dimension.
    pub fn lemma_weight(self) -> i64 {
        match self {
            ListId::A1 => 24,
            ListId::A2 => 4,
            ListId::A3 | ListId::A4 => 6,
        }
    }
}

impl fmt::Display for ListId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for ListId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(ListId::A1),
            "A2" => Ok(ListId::A2),
            "A3" => Ok(ListId::A3),
            "A4" => Ok(ListId::A4),
            _ => Err(Error::Domain(format!("unknown list {s:?}; expected A1..A4"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplineModel {
    pub list_id: ListId,
    pub pieces: PiecewisePoly,
    pub lattice: Lattice,
    pub index_in_ambient: i64,
}

fn lin(c: &[i64]) -> MultiPoly {
    MultiPoly::linear_i64(c)
}

fn mono(e: [u32; 3], c: BigRational) -> MultiPoly {
    MultiPoly::from_terms(3, [(e.to_vec(), c)])
}

fn orthant() -> Vec<Guard> {
    vec![Guard::ge(&[1, 0, 0]), Guard::ge(&[0, 1, 0]), Guard::ge(&[0, 0, 1])]
}

fn piece(label: &str, extra: Vec<Guard>, poly: MultiPoly) -> Piece {
    let mut guards = orthant();
    guards.extend(extra);
    Piece { label: label.into(), guards, poly }
}

fn a1_pieces() -> Vec<Piece> {
    let c1 = mono([0, 1, 2], rat(1, 288));
    let c2 = (&mono([0, 1, 0], int(1)) * &MultiPoly::from_terms(
        3,
        [(vec![2, 0, 0], int(1)), (vec![1, 0, 1], int(-6)), (vec![0, 0, 2], int(1))],
    ))
    .scale(&rat(-1, 2304));
    let c3 = mono([2, 1, 0], rat(1, 288));
    vec![
        piece("c1", vec![Guard::ge(&[1, 0, -3])], c1),
        piece("c2", vec![Guard::le(&[1, 0, -3]), Guard::ge(&[3, 0, -1])], c2),
        piece("c3", vec![Guard::le(&[3, 0, -1])], c3),
    ]
}

fn a2_pieces() -> Vec<Piece> {
    let a = rat(1, 2304);
    let c1 = mono([0, 3, 0], rat(1, 288));
    let c2 = &c1 - &lin(&[0, 2, -1]).pow(3).scale(&a);
    let c3 = &c1 + &lin(&[1, -2, 0]).pow(3).scale(&a);
    let c4 = &(&c2 + &c3) - &c1;
    let c5 = &c4 - &lin(&[1, -2, 1]).pow(3).scale(&a);
    vec![
        piece("c1", vec![Guard::le(&[0, 2, -1]), Guard::ge(&[1, -2, 0])], c1),
        piece("c2", vec![Guard::ge(&[0, 2, -1]), Guard::ge(&[1, -2, 0])], c2),
        piece("c3", vec![Guard::le(&[0, 2, -1]), Guard::le(&[1, -2, 0])], c3),
        piece("c4", vec![Guard::ge(&[0, 2, -1]), Guard::le(&[1, -2, 0]), Guard::ge(&[1, -2, 1])], c4),
        piece("c5", vec![Guard::le(&[1, -2, 1])], c5),
    ]
}

fn a3_pieces() -> Vec<Piece> {
    let a = rat(1, 3456);
    let c1 = mono([0, 2, 1], rat(1, 96));
    let c2 = &c1 + &lin(&[1, -2, -3]).pow(3).scale(&a);
    let c3 = &c2 + &(&lin(&[-1, 6, 3]) * &lin(&[1, 0, -3]).pow(2)).scale(&a);
    let c4 = &c2 - &lin(&[1, -2, 0]).pow(3).scale(&a);
    let c5 = &(&c4 + &c3) - &c2;
    vec![
        piece("c1", vec![Guard::ge(&[1, -2, -3])], c1),
        piece("c2", vec![Guard::le(&[1, -2, -3]), Guard::ge(&[1, 0, -3]), Guard::ge(&[1, -2, 0])], c2),
        piece("c3", vec![Guard::le(&[1, 0, -3]), Guard::ge(&[1, -2, 0])], c3),
        piece("c4", vec![Guard::ge(&[1, 0, -3]), Guard::le(&[1, -2, 0])], c4),
        piece("c5", vec![Guard::le(&[1, 0, -3]), Guard::le(&[1, -2, 0])], c5),
    ]
}

/// Exchanges `x₁` and `x₃` in polynomials and guards.
fn mirror(pieces: Vec<Piece>) -> Vec<Piece> {
    pieces
        .into_iter()
        .map(|p| Piece {
            label: p.label,
            guards: p
                .guards
                .into_iter()
                .map(|g| Guard { normal: vec![g.normal[2].clone(), g.normal[1].clone(), g.normal[0].clone()], strict: g.strict })
                .collect(),
            poly: p.poly.permute_vars(&[2, 1, 0]),
        })
        .collect()
}

/// The spline `T_A` of a list, one cubic polynomial per big cell.
pub fn spline_model(list_id: ListId) -> SplineModel {
    let pieces = match list_id {
        ListId::A1 => a1_pieces(),
        ListId::A2 => a2_pieces(),
        ListId::A3 => a3_pieces(),
        ListId::A4 => mirror(a3_pieces()),
    };
    let vs: Vec<Vec<i64>> = list_id.vectors().iter().map(|v| v.to_vec()).collect();
    let (lattice, index_in_ambient) = lattice_span_and_index(&vs).expect("lists span ℚ³");
    SplineModel { list_id, pieces: PiecewisePoly::new(3, pieces), lattice, index_in_ambient }
}

impl SplineModel {
    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.pieces.eval(x).unwrap_or_else(BigRational::zero)
    }

    /// Closure of a cell cut by `x₁ + x₂ + x₃ ≤ 1`.
    fn cell_slice(&self, i: usize) -> Polytope {
        let hs = self.pieces.pieces()[i].guards.iter().map(Guard::closed_halfspace);
        Polytope::new(3, vec![HalfSpace::from_i64(&[1, 1, 1], 1)]).intersect(hs)
    }

    fn wall_form_of(face: &Polytope, candidates: &[Vec<BigRational>]) -> Option<[i64; 3]> {
        let verts = face.vertices().ok()?;
        candidates
            .iter()
            .find(|n| n.iter().any(|c| !c.is_zero()) && verts.iter().all(|v| dot(n, v).is_zero()))
            .and_then(|n| {
                let ints: Vec<i64> = n.iter().map(|c| c.to_integer().try_into().expect("small guard")).collect();
                primitive_normal([ints[0], ints[1], ints[2]])
            })
    }

    /// Pairs of cells sharing a 2-dimensional wall, with the wall's primitive normal.
    pub fn adjacencies(&self) -> Vec<(String, String, [i64; 3])> {
        let ps = self.pieces.pieces();
        let mut out = Vec::new();
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                let face = self.cell_slice(i).intersect(self.cell_slice(j).halfspaces().to_vec());
                if face.affine_dim().ok().flatten() != Some(2) {
                    continue;
                }
                let cands: Vec<Vec<BigRational>> = ps[i].guards.iter().map(|g| g.normal.clone()).collect();
                if let Some(n) = Self::wall_form_of(&face, &cands) {
                    out.push((ps[i].label.clone(), ps[j].label.clone(), n));
                }
            }
        }
        out
    }

    /// Coordinate planes `x_k = 0` that bound a cell in a 2-dimensional face.
    pub fn boundary_faces(&self) -> Vec<(String, usize)> {
        let mut out = Vec::new();
        for (i, p) in self.pieces.pieces().iter().enumerate() {
            for k in 0..3 {
                let mut e = [0i64; 3];
                e[k] = 1;
                let face = self.cell_slice(i).intersect([HalfSpace::from_i64(&e, 0)]);
                if face.affine_dim().ok().flatten() == Some(2) {
                    out.push((p.label.clone(), k));
                }
            }
        }
        out
    }

    /// Required vanishing order across the plane with normal `n`.
    pub fn required_order(&self, n: [i64; 3]) -> u32 {
        vectors_off_plane(&self.list_id.vector_list(), n).saturating_sub(1) as u32
    }

    /// Adjacent pairs whose difference is not divisible by the wall form to
    /// the required power.
    pub fn wall_divisibility_failures(&self) -> Vec<(String, String, [i64; 3])> {
        self.adjacencies()
            .into_iter()
            .filter(|(a, b, n)| {
                let pa = &self.pieces.piece(a).expect("label").poly;
                let pb = &self.pieces.piece(b).expect("label").poly;
                !(pa - pb).is_divisible_by(&lin(n).pow(self.required_order(*n)))
            })
            .collect()
    }

    /// Cells touching the boundary of the orthant whose polynomial does not
    /// vanish there to the required order.
    pub fn boundary_vanishing_failures(&self) -> Vec<(String, usize)> {
        self.boundary_faces()
            .into_iter()
            .filter(|(label, k)| {
                let mut e = [0i64; 3];
                e[*k] = 1;
                let poly = &self.pieces.piece(label).expect("label").poly;
                !poly.is_divisible_by(&lin(&e).pow(self.required_order(e)))
            })
            .collect()
    }

    /// Whether `x` lies on the zero set of one of the guard forms.
    pub fn on_wall(&self, x: &[BigRational]) -> bool {
        self.pieces.pieces().iter().flat_map(|p| &p.guards).any(|g| dot(&g.normal, x).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplineSample {
    pub point: Vec<i64>,
    pub cell: String,
    /// `(k, relative deviation)` for every admissible `k ≤ k_max`.
    pub deviations: Vec<(i64, BigRational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplineReport {
    pub list_id: ListId,
    pub k_max: i64,
    pub samples: Vec<SplineSample>,
    /// Largest deviation over the samples, each taken at its largest admissible `k`.
    pub max_deviation: BigRational,
}

/// Compares `index · T_A(λ)` with `𝒯_A(kλ)/k³` along rays through sample points.
///
/// The deviation reported for each `k` is relative to the prediction,
/// `|index·T_A(λ) − 𝒯_A(kλ)/k³| / (index·T_A(λ))`.
pub fn verify_spline(list_id: ListId, sample_points: &[Vec<i64>], k_max: i64) -> Result<SplineReport> {
    if k_max < 1 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let model = spline_model(list_id);
    let list = list_id.vector_list();
    let mut samples = Vec::with_capacity(sample_points.len());
    let mut max_deviation = BigRational::zero();
    for p in sample_points {
        if p.len() != 3 || p.iter().any(|&c| c < 0) {
            return Err(Error::Domain(format!("sample {p:?} is not a point of the closed orthant")));
        }
        let pq: Vec<BigRational> = p.iter().map(|&c| int(c)).collect();
        if model.on_wall(&pq) {
            return Err(Error::Wall(format!("{p:?}")));
        }
        let cell = model.pieces.pieces()[model.pieces.locate(&pq).expect("orthant is covered")].label.clone();
        let predicted = model.eval(&pq) * int(model.index_in_ambient);
        if !predicted.is_positive() {
            return Err(Error::DegenerateDirection(format!("{p:?}")));
        }
        let table = PartitionTable::build(&list, &p.iter().map(|c| c * k_max).collect::<Vec<_>>())?;
        let mut deviations = Vec::new();
        for k in 1..=k_max {
            let kp: Vec<i64> = p.iter().map(|c| c * k).collect();
            if !model.lattice.contains(&kp) {
                continue;
            }
            let count = table.get(&kp).expect("inside the table");
            let scaled = BigRational::new(count.into(), (k * k * k).into());
            deviations.push((k, (&predicted - scaled).abs() / &predicted));
        }
        let Some((_, last)) = deviations.last() else {
            return Err(Error::Domain(format!("no multiple k·{p:?} with k ≤ {k_max} lies in the lattice of {list_id}")));
        };
        if *last > max_deviation {
            max_deviation = last.clone();
        }
        samples.push(SplineSample { point: p.clone(), cell, deviations });
    }
    Ok(SplineReport { list_id, k_max, samples, max_deviation })
}

/// `max |24·T₁ + 4·T₂ + 6·T₃ + 6·T₄ − dimas_vh|` over the grid; zero when the
/// decomposition of the asymptotic dimension into splines holds.
pub fn verify_lemma_a0(grid: &[Vec<BigRational>]) -> Result<BigRational> {
    let models: Vec<SplineModel> = ListId::ALL.iter().map(|&l| spline_model(l)).collect();
    let mut worst = BigRational::zero();
    for x in grid {
        let lhs: BigRational = models.iter().map(|m| m.eval(x) * int(m.list_id.lemma_weight())).sum();
        let diff = (lhs - dimas_vh(AsymptoticCase::Cubic, x)?).abs();
        if diff > worst {
            worst = diff;
        }
    }
    Ok(worst)
}
