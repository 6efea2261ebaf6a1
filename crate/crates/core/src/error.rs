use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation (non-dominant weight,
    /// wrong rank, point outside the Weyl chamber, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An exact division left a nonzero remainder.
    #[error("inexact division: {0}")]
    Inexact(String),
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("vector list has rank {rank}, expected {expected}")]
    Rank { rank: usize, expected: usize },
    /// A sample point sits on a wall of the chamber complex.
    #[error("point {0} lies on a wall; perturb it into the interior of a cell")]
    Wall(String),
    #[error("direction {0} is degenerate: the asymptotic dimension vanishes there")]
    DegenerateDirection(String),
    /// Sample weights do not all lie in the open chamber of the representative.
    #[error("chamber error: {0}")]
    Chamber(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
