//! Exact arithmetic: rationals, Laurent and multivariate polynomials,
//! polytopes and piecewise polynomials.

pub mod laurent;
pub mod linalg;
pub mod multipoly;
pub mod piecewise;
pub mod polytope;
pub mod rational;

pub use laurent::LaurentPoly;
pub use multipoly::MultiPoly;
pub use piecewise::{Guard, Piece, PiecewisePoly};
pub use polytope::{HalfSpace, Point, Polytope};
pub use rational::{format_rational, int, parse_rational, rat, BigRational};
