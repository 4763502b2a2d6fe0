//! Low-discrepancy colorings of real matrices with hereditary ℓ₂ guarantees.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: dense matrices, a Householder/QL symmetric eigensolver and an
//!   incrementally grown orthonormal basis.
//! * [`measures`]: discrepancy of a coloring, plus exhaustive oracles for
//!   `disc` and `herdisc` on tiny matrices.
//! * [`bounds`]: hereditary discrepancy lower bounds from the spectrum of `AᵀA`.
//! * [`coloring`]: the eigenvector-avoiding partial coloring, the `L2Minimize`
//!   driver, its randomized predecessor, and the random-sampling baselines.
//! * [`edgewalk`]: Edge-Walk with incremental constraint bases and a
//!   Spencer-style multi-round driver.
//! * [`instances`]: the uniform / 2D corner / 2D halfspace generators and the
//!   CSV matrix format.
//!
//! Every randomized routine takes its generator explicitly; see [`rng`].

pub mod bounds;
pub mod coloring;
pub mod edgewalk;
mod error;
pub mod instances;
pub mod linalg;
pub mod measures;
pub mod rng;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, EigenDecomposition, OrthonormalBasis};
