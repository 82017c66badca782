//! Exact coset-algebra tooling and Monte-Carlo SLE checks for null-vector
//! martingales.

pub mod affine;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod sle;
pub mod solver;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
