//! Convex polytopes in H-representation, exact vertex enumeration, fan
//! triangulation and exact integration of polynomials.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::linalg::{determinant, dot, rank, solve};
use super::multipoly::MultiPoly;
use super::rational::{factorial, int, BigRational};
use crate::{Error, Result};

pub type Point = Vec<BigRational>;

/// The closed half-space `normal · x ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub normal: Vec<BigRational>,
    pub offset: BigRational,
}

impl HalfSpace {
    pub fn new(normal: Vec<BigRational>, offset: BigRational) -> Self {
        Self { normal, offset }
    }

    pub fn from_i64(normal: &[i64], offset: i64) -> Self {
        Self::new(normal.iter().map(|&c| int(c)).collect(), int(offset))
    }

    /// `normal · x ≥ 0`, rewritten in `≤` form.
    pub fn nonnegative(normal: &[BigRational]) -> Self {
        Self::new(normal.iter().map(|c| -c).collect(), BigRational::zero())
    }

    /// `offset − normal · x`; nonnegative inside, zero on the boundary.
    pub fn slack(&self, x: &[BigRational]) -> BigRational {
        &self.offset - dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        !self.slack(x).is_negative()
    }
}

#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    vertices: OnceLock<Vec<Point>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.halfspaces == other.halfspaces
    }
}

impl Polytope {
    pub fn new(dim: usize, halfspaces: Vec<HalfSpace>) -> Self {
        assert!(halfspaces.iter().all(|h| h.normal.len() == dim), "half-space normal of wrong length");
        Self { dim, halfspaces, vertices: OnceLock::new() }
    }

    /// The box `∏ [lo_i, hi_i]`.
    pub fn axis_box(lo: &[BigRational], hi: &[BigRational]) -> Self {
        let d = lo.len();
        let mut hs = Vec::with_capacity(2 * d);
        for i in 0..d {
            let mut e = vec![BigRational::zero(); d];
            e[i] = int(1);
            hs.push(HalfSpace::new(e.clone(), hi[i].clone()));
            hs.push(HalfSpace::new(e.iter().map(|c| -c).collect(), -&lo[i]));
        }
        Self::new(d, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    /// A new polytope cut down by further half-spaces.
    pub fn intersect(&self, extra: impl IntoIterator<Item = HalfSpace>) -> Self {
        let mut hs = self.halfspaces.clone();
        hs.extend(extra);
        Self::new(self.dim, hs)
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Exact vertex list, deduplicated and sorted.
    ///
    /// Every `d`-subset of boundary hyperplanes with a unique intersection
    /// point is solved; feasible points are kept. An infeasible system yields
    /// an empty list. A nonempty region that is not bounded is an error, and
    /// so is a system whose normals do not span (such a region is empty or
    /// contains a line).
    pub fn vertices(&self) -> Result<&[Point]> {
        if let Some(v) = self.vertices.get() {
            return Ok(v);
        }
        let v = self.enumerate_vertices()?;
        Ok(self.vertices.get_or_init(|| v))
    }

    fn enumerate_vertices(&self) -> Result<Vec<Point>> {
        let d = self.dim;
        if d == 0 {
            let feasible = self.halfspaces.iter().all(|h| !h.offset.is_negative());
            return Ok(if feasible { vec![Vec::new()] } else { Vec::new() });
        }
        let normals: Vec<Vec<BigRational>> = self.halfspaces.iter().map(|h| h.normal.clone()).collect();
        if rank(&normals) < d {
            return Err(Error::Unbounded);
        }
        let mut found: BTreeSet<Point> = BTreeSet::new();
        for subset in combinations(self.halfspaces.len(), d) {
            let a: Vec<Vec<BigRational>> = subset.iter().map(|&i| self.halfspaces[i].normal.clone()).collect();
            let b: Vec<BigRational> = subset.iter().map(|&i| self.halfspaces[i].offset.clone()).collect();
            if let Some(x) = solve(&a, &b) {
                if self.contains(&x) {
                    found.insert(x);
                }
            }
        }
        if !found.is_empty() && self.has_recession_direction() {
            return Err(Error::Unbounded);
        }
        Ok(found.into_iter().collect())
    }

    /// Whether `{y : normal · y ≤ 0 for all half-spaces}` contains a nonzero
    /// vector. Assumes the normals span, so the cone is pointed and it is
    /// enough to test the candidate extreme rays.
    fn has_recession_direction(&self) -> bool {
        let d = self.dim;
        let ok = |y: &[BigRational]| self.halfspaces.iter().all(|h| !dot(&h.normal, y).is_positive());
        for subset in combinations(self.halfspaces.len(), d - 1) {
            let rows: Vec<&Vec<BigRational>> = subset.iter().map(|&i| &self.halfspaces[i].normal).collect();
            let y = null_direction(&rows, d);
            if y.iter().all(Zero::is_zero) {
                continue;
            }
            let neg: Vec<BigRational> = y.iter().map(|c| -c).collect();
            if ok(&y) || ok(&neg) {
                return true;
            }
        }
        false
    }

    /// Affine dimension of the polytope (`None` when empty).
    pub fn affine_dim(&self) -> Result<Option<usize>> {
        let v = self.vertices()?;
        Ok(affine_rank(v, &(0..v.len()).collect::<Vec<_>>()))
    }

    /// Fan triangulation from the vertex with index `apex`, recursing into
    /// the facets not containing it. Returns simplices as vertex index lists.
    /// Lower-dimensional polytopes produce no simplices.
    pub fn triangulate(&self, apex: usize) -> Result<Vec<Vec<usize>>> {
        let verts = self.vertices()?;
        let all: Vec<usize> = (0..verts.len()).collect();
        if affine_rank(verts, &all) != Some(self.dim) {
            return Ok(Vec::new());
        }
        assert!(apex < verts.len(), "apex index out of range");
        Ok(self.fan(&all, self.dim, apex))
    }

    fn fan(&self, face: &[usize], k: usize, apex: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![face[0]]];
        }
        let verts = self.vertices.get().expect("vertices computed");
        let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for h in &self.halfspaces {
            let sub: Vec<usize> = face.iter().copied().filter(|&i| h.slack(&verts[i]).is_zero()).collect();
            if sub.contains(&apex) || sub.len() < k {
                continue;
            }
            if affine_rank(verts, &sub) == Some(k - 1) {
                facets.insert(sub);
            }
        }
        let mut out = Vec::new();
        for facet in facets {
            let sub_apex = facet[0];
            for mut s in self.fan(&facet, k - 1, sub_apex) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }

    /// Exact `∫ poly dV` over the polytope, triangulated from vertex 0.
    pub fn integrate(&self, poly: &MultiPoly) -> Result<BigRational> {
        self.integrate_with_apex(poly, 0)
    }

    pub fn integrate_with_apex(&self, poly: &MultiPoly, apex: usize) -> Result<BigRational> {
        assert_eq!(poly.arity(), self.dim, "integrand arity must match the polytope dimension");
        let verts = self.vertices()?;
        if verts.is_empty() {
            return Ok(BigRational::zero());
        }
        let simplices = self.triangulate(apex)?;
        let total = simplices
            .par_iter()
            .map(|s| {
                let pts: Vec<&Point> = s.iter().map(|&i| &verts[i]).collect();
                integrate_over_simplex(poly, &pts)
            })
            .reduce(BigRational::zero, |a, b| a + b);
        Ok(total)
    }
}

/// `∫_Δ poly dV` for the simplex with vertices `v_0, …, v_d`.
///
/// With `x = v_0 + Σ u_i (v_i − v_0)` the integral becomes
/// `|det| · Σ_k c_k ∏ k_i! / (d + |k|)!` over the coefficients `c_k` of the
/// pulled-back polynomial.
pub fn integrate_over_simplex(poly: &MultiPoly, vertices: &[&Point]) -> BigRational {
    let d = poly.arity();
    assert_eq!(vertices.len(), d + 1, "a d-simplex has d+1 vertices");
    let v0 = vertices[0];
    let edges: Vec<Vec<BigRational>> = vertices[1..].iter().map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect()).collect();
    let det = determinant(&edges).abs();
    if det.is_zero() {
        return BigRational::zero();
    }
    // Image of x_j: v0_j + Σ_i edges[i][j] u_i.
    let images: Vec<MultiPoly> = (0..d)
        .map(|j| {
            let coeffs: Vec<BigRational> = edges.iter().map(|e| e[j].clone()).collect();
            MultiPoly::affine(&coeffs, &v0[j])
        })
        .collect();
    let pulled = poly.compose(&images);
    let maxdeg = pulled.total_degree().unwrap_or(0) as usize;
    let fact: Vec<BigInt> = (0..=maxdeg + d).map(factorial).collect();
    let mut acc = BigRational::zero();
    for (k, c) in pulled.terms() {
        let total: usize = k.iter().map(|&e| e as usize).sum();
        let num: BigInt = k.iter().map(|&e| fact[e as usize].clone()).product();
        acc += c * BigRational::new(num, fact[d + total].clone());
    }
    acc * det
}

fn affine_rank(verts: &[Point], idx: &[usize]) -> Option<usize> {
    let first = idx.first()?;
    let diffs: Vec<Vec<BigRational>> = idx[1..]
        .iter()
        .map(|&i| verts[i].iter().zip(&verts[*first]).map(|(a, b)| a - b).collect())
        .collect();
    Some(if diffs.is_empty() { 0 } else { rank(&diffs) })
}

/// Generalized cross product of `d − 1` vectors in dimension `d`.
fn null_direction(rows: &[&Vec<BigRational>], d: usize) -> Vec<BigRational> {
    if d == 1 {
        return vec![int(1)];
    }
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let m = determinant(&minor);
            if j % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
