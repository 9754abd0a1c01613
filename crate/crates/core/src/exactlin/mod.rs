//! Exact rational linear algebra: scalars, dense matrices, subspaces and the
//! elimination kernel every other module builds on.

mod kernel;
mod matrix;
pub mod scalar;
mod subspace;

pub use kernel::{
    congruent_diagonalize, determinant, image_basis, inertia, inverse, kernel_basis,
    kernel_vectors_of, rank, rref, solve, Rref, Solution,
};
pub use matrix::Matrix;
pub use scalar::{format_scalar, parse_scalar, Scalar, Vector};
pub use subspace::Subspace;
