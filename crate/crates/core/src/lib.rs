pub mod bqa;
pub mod catalog;
pub mod envelope;
pub mod error;
pub mod exactla;
pub mod format;
pub mod fuzz;
pub mod homalg;
pub mod hw;
pub mod recollement;
pub mod rep;

pub use bqa::{build_algebra, Algebra, Presentation};
pub use error::{Error, Result};
pub use exactla::{ExactMatrix, Field, RowSpace, Scalar};
