//! Exact linear algebra over ℚ and prime fields.

mod matrix;
pub(crate) mod poly;
mod scalar;
mod subspace;

pub use matrix::{matrix_arithmetic, Matrix, MatrixOp, Rref};
pub use scalar::{root_of_unity_order, Field, Scalar};
pub use subspace::Subspace;
