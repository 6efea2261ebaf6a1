//! Partition functions, chamber complexes and splines of the six-vector
//! lists, and the asymptotic invariant dimension assembled from them.

pub mod asymptotic;
pub mod lattice;
pub mod splines;
pub mod vpf;
pub mod walls;

pub use asymptotic::{dimas_vh, dimas_vh_piecewise, verify_asymptotic_convergence, AsymptoticCase};
pub use lattice::{lattice_span_and_index, Lattice};
pub use splines::{spline_model, verify_lemma_a0, verify_spline, ListId, SplineModel, SplineReport};
pub use vpf::{vector_partition_count, PartitionTable, VectorList};
pub use walls::{wall_hyperplanes, WallPlane};
