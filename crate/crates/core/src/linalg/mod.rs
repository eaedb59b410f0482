//! Exact integer linear algebra: kernel lattices, Hermite normal form,
//! lattice comparison and rational solving. No floating point anywhere.

mod hnf;
mod lattice;
mod matrix;
mod rational;

use num_bigint::BigInt;
use thiserror::Error;

pub use hnf::hermite_normal_form;
pub use lattice::{
    kernel_lattice_basis, lattice_difference_vector, lattice_equal, projection_norm_sq,
    LatticeBasis,
};
pub use matrix::IntMatrix;
pub use rational::{rank, solve_rational, RationalVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ambient dimensions {left} and {right} are neither equal nor related by the natural inclusion")]
    DimensionMismatch { left: usize, right: usize },
    #[error("lattice inclusion fails: generator {witness:?} of the smaller lattice is not in the larger one")]
    InclusionViolation { witness: Vec<BigInt> },
}

/// Number of nonzero entries of an integer vector.
pub fn support_size(v: &[BigInt]) -> usize {
    v.iter().filter(|x| !num_traits::Zero::is_zero(*x)).count()
}
