//! Exact computations around invariant dimensions of SL₂ inside SL₃ and SL₄
//! representations, their asymptotics, and the volume integrals built from them.

pub mod chambers;
pub mod error;
pub mod exact;
pub mod gitmodel;
pub mod invariants;
pub mod rootdata;
pub mod volume;

pub use error::{Error, Result};
pub use rootdata::{RootSystemA, Weight};
