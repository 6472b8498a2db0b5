//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use garc_core::algebra::{make_builtin, Algebra, Builtin};
use garc_core::{Field, Matrix};

pub fn algebra(builtin: Builtin, field: Field) -> Arc<Algebra> {
    Arc::new(make_builtin(&builtin, field).expect("builtin parameters are valid"))
}

pub fn schulz(c: i64) -> Arc<Algebra> {
    let q = Field::Rationals;
    algebra(Builtin::Schulz { c: q.from_i64(c) }, q)
}

/// A dense `n × n` matrix with small, deterministic entries and rank close to `n`.
pub fn dense(field: Field, n: usize) -> Matrix {
    Matrix::from_fn(field, n, n, |r, c| field.from_i64(((r * 7 + c * 3 + r * c) % 11) as i64 - 5))
}
