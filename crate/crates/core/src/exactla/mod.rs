//! Exact scalar arithmetic and dense linear algebra over ℚ and prime fields.

mod matrix;
pub mod poly;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
pub use subspace::{QuotientBasis, Subspace};
