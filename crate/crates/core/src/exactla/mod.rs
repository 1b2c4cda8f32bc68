//! Exact dense linear algebra over GF(p) and the rationals.

mod field;
mod matrix;

pub use field::{Field, Scalar};
pub use matrix::{ExactMatrix, RowSpace};
