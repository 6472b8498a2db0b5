//! Finite-dimensional algebras given by structure constants.
//!
//! An [`Algebra`] of dimension `d` stores the dense tensor `c` with
//! `e_i · e_j = Σ_k c[i][j][k] e_k`, a unit, and optionally the data needed for
//! projective covers: a complete set of primitive orthogonal idempotents and a
//! basis of the Jacobson radical. Builtins populate both.

mod builtin;
mod validate;

use std::sync::OnceLock;

pub use builtin::{make_builtin, Builtin};
pub use validate::{validate, Diagnostic};

use crate::error::{Error, Result};
use crate::exactmat::{Field, Matrix, Scalar, Subspace};

/// Raw presentation data; see [`Algebra::new`].
#[derive(Clone, Debug)]
pub struct AlgebraParts {
    pub field: Field,
    pub labels: Vec<String>,
    /// Dense, indexed `(i * d + j) * d + k`.
    pub structure_constants: Vec<Scalar>,
    pub unit: Vec<Scalar>,
    pub idempotents: Option<Vec<Vec<Scalar>>>,
    /// Rows span the radical.
    pub radical_basis: Option<Vec<Vec<Scalar>>>,
    pub generators: Vec<Vec<Scalar>>,
    pub name: String,
}

#[derive(Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    constants: Vec<Scalar>,
    unit: Vec<Scalar>,
    idempotents: Option<Vec<Vec<Scalar>>>,
    radical: Option<Matrix>,
    generators: Vec<Vec<Scalar>>,
    name: String,
    notes: Vec<String>,
    left_mult: Vec<Matrix>,
    projectives: OnceLock<Vec<Subspace>>,
}

impl Clone for Algebra {
    fn clone(&self) -> Self {
        Algebra {
            field: self.field,
            dim: self.dim,
            labels: self.labels.clone(),
            constants: self.constants.clone(),
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            radical: self.radical.clone(),
            generators: self.generators.clone(),
            name: self.name.clone(),
            notes: self.notes.clone(),
            left_mult: self.left_mult.clone(),
            projectives: OnceLock::new(),
        }
    }
}

/// Two algebras are equal when their tables and units agree; names, labels and
/// the optional cover data do not take part.
impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.unit == other.unit && self.constants == other.constants
    }
}

impl Algebra {
    /// Builds an algebra and rejects it unless [`validate`] returns no diagnostics.
    pub fn new(parts: AlgebraParts) -> Result<Algebra> {
        let alg = Algebra::from_parts_unchecked(parts)?;
        let diags = validate(&alg);
        if !diags.is_empty() {
            let msgs: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
            return Err(Error::InvalidAlgebra(msgs.join("; ")));
        }
        Ok(alg)
    }

    /// Checks only shapes and fields, so that [`validate`] can report on broken tables.
    pub fn from_parts_unchecked(parts: AlgebraParts) -> Result<Algebra> {
        let field = parts.field;
        let d = parts.unit.len();
        if d == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if parts.structure_constants.len() != d * d * d {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} structure constants, got {}",
                d * d * d,
                parts.structure_constants.len()
            )));
        }
        let vectors = std::iter::once(&parts.unit)
            .chain(parts.idempotents.iter().flatten())
            .chain(parts.radical_basis.iter().flatten())
            .chain(parts.generators.iter());
        for v in vectors {
            if v.len() != d {
                return Err(Error::InvalidAlgebra(format!("coordinate vector of length {} in dimension {d}", v.len())));
            }
            if v.iter().any(|s| s.field() != field) {
                return Err(Error::FieldMismatch);
            }
        }
        if parts.structure_constants.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let labels = if parts.labels.len() == d {
            parts.labels
        } else {
            (0..d).map(|i| format!("b{i}")).collect()
        };
        let left_mult = (0..d)
            .map(|i| Matrix::from_fn(field, d, d, |k, j| parts.structure_constants[(i * d + j) * d + k].clone()))
            .collect();
        let radical = parts.radical_basis.map(|rows| Matrix::from_rows(field, d, rows).expect("checked lengths"));
        Ok(Algebra {
            field,
            dim: d,
            labels,
            constants: parts.structure_constants,
            unit: parts.unit,
            idempotents: parts.idempotents,
            radical,
            generators: parts.generators,
            name: parts.name,
            notes: Vec::new(),
            left_mult,
            projectives: OnceLock::new(),
        })
    }

    pub fn to_parts(&self) -> AlgebraParts {
        AlgebraParts {
            field: self.field,
            labels: self.labels.clone(),
            structure_constants: self.constants.clone(),
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            radical_basis: self.radical.as_ref().map(|r| (0..r.rows()).map(|i| r.row(i).to_vec()).collect()),
            generators: self.generators.clone(),
            name: self.name.clone(),
        }
    }

    pub(crate) fn with_notes(mut self, notes: Vec<String>) -> Algebra {
        self.notes = notes;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Free-form facts recorded by constructors (e.g. root-of-unity status of the Schulz parameter).
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    pub fn idempotents(&self) -> Option<&[Vec<Scalar>]> {
        self.idempotents.as_deref()
    }

    /// Rows span the radical.
    pub fn radical_basis(&self) -> Option<&Matrix> {
        self.radical.as_ref()
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_constants(&self) -> &[Scalar] {
        &self.constants
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| if k == i { self.field.one() } else { self.field.zero() }).collect()
    }

    /// Left multiplication by the basis element `e_i`, as a `d × d` matrix on coordinates.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.left_mult[i]
    }

    pub fn left_mult_by(&self, a: &[Scalar]) -> Matrix {
        combine(self.field, self.dim, &self.left_mult, a)
    }

    /// Right multiplication `b ↦ b·a`.
    pub fn right_mult_by(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.left_mult_by(a).mul_vec(b)
    }

    pub fn opposite(&self) -> Algebra {
        let d = self.dim;
        let mut constants = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    constants.push(self.structure_constant(j, i, k).clone());
                }
            }
        }
        let name = match self.name.strip_prefix("op(").and_then(|s| s.strip_suffix(')')) {
            Some(inner) => inner.to_string(),
            None => format!("op({})", self.name),
        };
        let parts = AlgebraParts {
            structure_constants: constants,
            name,
            ..self.to_parts()
        };
        Algebra::from_parts_unchecked(parts)
            .expect("opposite preserves shapes")
            .with_notes(self.notes.clone())
    }

    pub fn is_local(&self) -> bool {
        self.idempotents.as_ref().is_some_and(|e| e.len() == 1)
    }

    /// Idempotents and radical, or `MissingStructure`.
    pub fn cover_data(&self) -> Result<(&[Vec<Scalar>], &Matrix)> {
        let idem = self
            .idempotents
            .as_deref()
            .ok_or_else(|| Error::MissingStructure("idempotents".into()))?;
        let rad = self
            .radical
            .as_ref()
            .ok_or_else(|| Error::MissingStructure("a radical basis".into()))?;
        Ok((idem, rad))
    }

    /// The indecomposable projective `Λ·e_i` as a subspace of the regular module,
    /// one per idempotent.
    pub fn projective_summands(&self) -> Result<&[Subspace]> {
        let (idem, _) = self.cover_data()?;
        Ok(self.projectives.get_or_init(|| {
            idem.iter().map(|e| Subspace::span(&self.right_mult_by(e))).collect()
        }))
    }
}

pub(crate) fn combine(field: Field, dim: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut acc = Matrix::zeros(field, dim, dim);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = &acc + &m.scale(c);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn opposite_is_involution_on_builtins() {
        let f5 = Field::prime(5).unwrap();
        let builtins = [
            make_builtin(&Builtin::Schulz { c: q().from_i64(2) }, q()).unwrap(),
            make_builtin(&Builtin::TruncatedPoly { n: 3 }, q()).unwrap(),
            make_builtin(&Builtin::PathAn { n: 3 }, q()).unwrap(),
            make_builtin(&Builtin::FullMatrix { n: 2 }, f5).unwrap(),
            make_builtin(&Builtin::CyclicGroup { n: 2 }, Field::prime(2).unwrap()).unwrap(),
        ];
        for a in &builtins {
            let oo = a.opposite().opposite();
            assert_eq!(oo.structure_constants(), a.structure_constants(), "{}", a.name());
            assert_eq!(oo.name(), a.name());
            assert!(validate(&a.opposite()).is_empty());
        }
    }

    #[test]
    fn opposite_of_commutative_is_identical() {
        let a = make_builtin(&Builtin::TruncatedPoly { n: 2 }, q()).unwrap();
        assert_eq!(a.opposite().structure_constants(), a.structure_constants());
    }

    #[test]
    fn opposite_schulz_table() {
        let a = make_builtin(&Builtin::Schulz { c: q().from_i64(2) }, q()).unwrap();
        let op = a.opposite();
        let (x, y) = (op.basis_vector(1), op.basis_vector(2));
        let half = q().from_ratio(1, 2).unwrap();
        // x·y in the opposite algebra is y·x in the original
        assert_eq!(op.mul(&x, &y), vec![q().zero(), q().zero(), q().zero(), half]);
        assert_eq!(op.mul(&y, &x), op.basis_vector(3));
    }

    #[test]
    fn cover_data_missing() {
        let a = make_builtin(&Builtin::TruncatedPoly { n: 2 }, q()).unwrap();
        let parts = AlgebraParts { idempotents: None, ..a.to_parts() };
        let b = Algebra::new(parts).unwrap();
        assert!(matches!(b.cover_data(), Err(Error::MissingStructure(_))));
    }

    #[test]
    fn projective_summands_of_path_algebra() {
        let a = make_builtin(&Builtin::PathAn { n: 3 }, q()).unwrap();
        let dims: Vec<usize> = a.projective_summands().unwrap().iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![1, 2, 3]);
    }
}
