use super::matrix::Matrix;
use super::scalar::{Field, Scalar};

/// A linear subspace of `field^ambient` held in canonical reduced form: the
/// basis columns are the transposed rows of an rref, so the coordinates of a
/// vector in the subspace are simply its entries at the pivot positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The span of the columns of `m`.
    pub fn span(m: &Matrix) -> Subspace {
        let (red, pivots) = m.transpose().reduced();
        let rank = pivots.len();
        let basis = red.submatrix(0..rank, 0..m.rows()).transpose();
        Subspace { basis, pivots }
    }

    pub fn span_vectors(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        Subspace::span(&Matrix::from_columns(field, ambient, vectors))
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(field, ambient, 0), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// `ambient × dim` matrix whose columns are the canonical basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis. Only meaningful for `v` in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Coordinates of every column of `m` (assumed to lie in the subspace).
    pub fn coords_of(&self, m: &Matrix) -> Matrix {
        m.select_rows(&self.pivots)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.basis.mul_vec(&self.coords(v)).as_slice() == v
    }

    pub fn contains_columns(&self, m: &Matrix) -> bool {
        &self.basis * &self.coords_of(m) == *m
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.contains_columns(other.basis())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.hstack(&other.basis).expect("same field"))
    }

    /// Extends the subspace by one vector.
    pub fn with(&self, v: &[Scalar]) -> Subspace {
        let col = Matrix::from_columns(self.field(), self.ambient(), &[v.to_vec()]);
        Subspace::span(&self.basis.hstack(&col).expect("same field"))
    }

    /// Coordinates complementary to the pivots; these index the quotient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Projection `field^ambient → field^ambient / self` in the coordinates given by
    /// [`Subspace::complement_indices`].
    pub fn quotient_projection(&self) -> Matrix {
        let comp = self.complement_indices();
        let field = self.field();
        let mut out = Matrix::zeros(field, comp.len(), self.ambient());
        for (row, &j) in comp.iter().enumerate() {
            out.set(row, j, field.one());
            for (i, &p) in self.pivots.iter().enumerate() {
                out.set(row, p, -&self.basis[(j, i)]);
            }
        }
        out
    }

    /// A section of [`Subspace::quotient_projection`]: the standard vectors at the complement indices.
    pub fn quotient_section(&self) -> Matrix {
        let comp = self.complement_indices();
        let field = self.field();
        Matrix::from_fn(field, self.ambient(), comp.len(), |r, c| {
            if comp[c] == r {
                field.one()
            } else {
                field.zero()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_and_projection() {
        let q = Field::Rationals;
        let m = Matrix::from_i64(q, &[&[1, 2], &[1, 2], &[0, 1]]);
        let s = Subspace::span(&m);
        assert_eq!(s.dim(), 2);
        let v = m.column(1);
        assert!(s.contains(&v));
        assert_eq!(s.basis().mul_vec(&s.coords(&v)), v);
        assert!(!s.contains(&[q.one(), q.zero(), q.zero()]));
        let proj = s.quotient_projection();
        assert!((&proj * &m).is_zero());
        assert!((&proj * &s.quotient_section()).is_identity());
    }
}
