//! Piecewise polynomials on cones cut out by linear guards through the origin.

use num_traits::{Signed, Zero};

use super::linalg::dot;
use super::multipoly::MultiPoly;
use super::polytope::HalfSpace;
use super::rational::{int, BigRational};

/// `normal · x ≥ 0`, or `> 0` when strict.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Guard {
    pub normal: Vec<BigRational>,
    pub strict: bool,
}

impl Guard {
    pub fn ge(normal: &[i64]) -> Self {
        Self { normal: normal.iter().map(|&c| int(c)).collect(), strict: false }
    }

    pub fn le(normal: &[i64]) -> Self {
        Self { normal: normal.iter().map(|&c| int(-c)).collect(), strict: false }
    }

    pub fn gt(normal: &[i64]) -> Self {
        Self { strict: true, ..Self::ge(normal) }
    }

    pub fn lt(normal: &[i64]) -> Self {
        Self { strict: true, ..Self::le(normal) }
    }

    pub fn holds(&self, x: &[BigRational]) -> bool {
        let v = dot(&self.normal, x);
        if self.strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    }

    /// The closure of the guard as a polytope half-space.
    pub fn closed_halfspace(&self) -> HalfSpace {
        HalfSpace::nonnegative(&self.normal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub label: String,
    pub guards: Vec<Guard>,
    pub poly: MultiPoly,
}

/// Ordered list of pieces; on overlapping guards the first listed piece wins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePoly {
    arity: usize,
    pieces: Vec<Piece>,
}

impl PiecewisePoly {
    pub fn new(arity: usize, pieces: Vec<Piece>) -> Self {
        assert!(pieces.iter().all(|p| p.poly.arity() == arity && p.guards.iter().all(|g| g.normal.len() == arity)));
        Self { arity, pieces }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece(&self, label: &str) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.label == label)
    }

    /// Index of the first piece whose guards all hold at `x`.
    pub fn locate(&self, x: &[BigRational]) -> Option<usize> {
        self.pieces.iter().position(|p| p.guards.iter().all(|g| g.holds(x)))
    }

    /// Value at `x`, or `None` outside every piece.
    pub fn eval(&self, x: &[BigRational]) -> Option<BigRational> {
        self.locate(x).map(|i| self.pieces[i].poly.eval(x))
    }

    /// Pieces whose closed guard cone contains `x`.
    pub fn pieces_containing(&self, x: &[BigRational]) -> Vec<usize> {
        self.pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| p.guards.iter().all(|g| !dot(&g.normal, x).is_negative()))
            .map(|(i, _)| i)
            .collect()
    }

    /// True when every piece containing `x` in its closure gives the same value.
    pub fn consistent_at(&self, x: &[BigRational]) -> bool {
        let vals: Vec<BigRational> = self.pieces_containing(x).into_iter().map(|i| self.pieces[i].poly.eval(x)).collect();
        vals.windows(2).all(|w| w[0] == w[1])
    }

    pub fn all_homogeneous_of_degree(&self, deg: u32) -> bool {
        self.pieces.iter().all(|p| p.poly.is_homogeneous_of_degree(deg))
    }
}

/// Whether `x` lies on the zero set of `form`.
pub fn on_wall(form: &[BigRational], x: &[BigRational]) -> bool {
    dot(form, x).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abs_like() -> PiecewisePoly {
        let x = MultiPoly::var(1, 0);
        PiecewisePoly::new(
            1,
            vec![
                Piece { label: "pos".into(), guards: vec![Guard::ge(&[1])], poly: x.clone() },
                Piece { label: "neg".into(), guards: vec![Guard::le(&[1])], poly: -&x },
            ],
        )
    }

    #[test]
    fn first_piece_wins_on_wall() {
        let p = abs_like();
        assert_eq!(p.locate(&[int(0)]), Some(0));
        assert_eq!(p.eval(&[int(-3)]), Some(int(3)));
        assert_eq!(p.pieces_containing(&[int(0)]), vec![0, 1]);
        assert!(p.consistent_at(&[int(0)]));
    }

    #[test]
    fn strict_guards_exclude_boundary() {
        assert!(!Guard::gt(&[1, -1]).holds(&[int(2), int(2)]));
        assert!(Guard::lt(&[1, -1]).holds(&[int(1), int(2)]));
    }
}
