//! Exact rational linear algebra and integer lattice arithmetic.
//!
//! Every set comparison elsewhere in the crate reduces to equality of a
//! canonical form defined here: reduced row echelon form for rational
//! subspaces and Hermite normal form for integer lattices.

mod lattice;
mod matrix;
pub(crate) mod rational;

pub use lattice::{
    hermite_normal_form, hnf_with_transform, left_integer_kernel, smith_hermite, torus_integrality,
    IntLattice, IntMatrix, SmithHermite,
};
pub use matrix::{canonical_rref, kernel_subspace, subspace_meet_join, QMatrix, QSubspace};
pub use rational::{format_rational, format_vector, parse_rational, parse_vector, rat, Rational};
