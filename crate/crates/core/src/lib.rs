//! Semi-tensor products of matrices and hypermatrices, hyperdeterminants,
//! hypersquare groups and compound hypermatrices.
//!
//! Everything is generic over [`Scalar`]; use [`Rational`] for exact results
//! and `f64` for approximate ones.

pub mod algebra;
pub mod compound;
pub mod det;
pub mod error;
pub mod field;
pub mod hypermatrix;
pub mod io;
pub mod matrix;
pub mod permutation;
pub mod random;
pub mod stp;
pub mod verify;

pub use error::{HymError, Result};
pub use field::{Rational, Scalar};
pub use hypermatrix::{Hypermatrix, IndexPartition, Shape, SliceList};
pub use matrix::Matrix;
pub use permutation::Permutation;
