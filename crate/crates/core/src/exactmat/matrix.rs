use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::Serialize;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over ℚ or 𝔽_p. Zero-row and zero-column shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// The operations exposed by [`matrix_arithmetic`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixOp {
    Add,
    Multiply,
    DirectSum,
    Invert,
}

/// Output of [`Matrix::rref`]: `transform · m = reduced`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub transform: Matrix,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|s| s.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix::from_fn(field, n, n, |r, c| if r == c { field.one() } else { field.zero() })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` is needed to give `0 × cols` matrices a shape.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    /// Builds a `rows × columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        for c in columns {
            assert_eq!(c.len(), rows, "column length mismatch");
        }
        Matrix::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |r, c| field.from_i64(rows[r][c]))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = &self[(r, c)];
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|x| x * s).collect(), ..self.clone() }
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * other.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Block-diagonal sum `[[a, 0], [0, b]]`.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Ok(Matrix::from_fn(self.field, r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self[(i, j)].clone()
            } else if i >= self.rows && j >= self.cols {
                other[(i - self.rows, j - self.cols)].clone()
            } else {
                self.field.zero()
            }
        }))
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        Ok(Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |r, c| self[(rows.start + r, cols.start + c)].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |r, c| self[(idx[r], c)].clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |r, c| self[(r, idx[c])].clone())
    }

    /// Reduced row-echelon form with the transform that produces it.
    pub fn rref(&self) -> Rref {
        let aug = self.hstack(&Matrix::identity(self.field, self.rows)).expect("same field");
        let (reduced_aug, pivots) = eliminate(&aug, self.cols);
        Rref {
            reduced: reduced_aug.submatrix(0..self.rows, 0..self.cols),
            rank: pivots.len(),
            transform: reduced_aug.submatrix(0..self.rows, self.cols..self.cols + self.rows),
            pivot_columns: pivots,
        }
    }

    /// Reduced row-echelon form only (no transform), with the pivot columns.
    pub fn reduced(&self) -> (Matrix, Vec<usize>) {
        eliminate(self, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.reduced().1.len()
    }

    /// Columns form a basis of `{x : self · x = 0}`, one per non-pivot column.
    pub fn kernel_basis(&self) -> Matrix {
        let (red, pivots) = self.reduced();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, self.field.one());
            for (i, &p) in pivots.iter().enumerate() {
                out.set(p, k, -&red[(i, f)]);
            }
        }
        out
    }

    /// A particular solution of `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        self.check_field(b)?;
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve with {} equations but rhs has {} rows",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b)?;
        let (red, pivots) = eliminate(&aug, self.cols);
        let rank = pivots.len();
        for r in rank..self.rows {
            if red.row(r)[self.cols..].iter().any(|s| !s.is_zero()) {
                return Ok(None);
            }
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, red[(i, self.cols + j)].clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let aug = self.hstack(&Matrix::identity(self.field, self.rows))?;
        let (red, pivots) = eliminate(&aug, self.cols);
        if pivots.len() != self.rows {
            return Err(Error::SingularMatrix);
        }
        Ok(red.submatrix(0..self.rows, self.cols..2 * self.cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// `a op b` for the four operations of the matrix layer; `b` is ignored by `Invert`.
pub fn matrix_arithmetic(a: &Matrix, b: &Matrix, op: MatrixOp) -> Result<Matrix> {
    match op {
        MatrixOp::Add => a.checked_add(b),
        MatrixOp::Multiply => a.checked_mul(b),
        MatrixOp::DirectSum => a.direct_sum(b),
        MatrixOp::Invert => a.inverse(),
    }
}

/// Gauss–Jordan elimination pivoting only in the first `pivot_limit` columns,
/// applying every row operation to the full width. Pivot choice: leftmost
/// column, then smallest row index.
fn eliminate(m: &Matrix, pivot_limit: usize) -> (Matrix, Vec<usize>) {
    match m.field {
        Field::Rationals => eliminate_rational(m, pivot_limit),
        Field::Prime { p } => eliminate_prime(m, pivot_limit, p),
    }
}

fn eliminate_prime(m: &Matrix, pivot_limit: usize, p: u32) -> (Matrix, Vec<usize>) {
    let p64 = p as u64;
    let mut rows: Vec<Vec<u64>> = (0..m.rows).map(|r| m.row(r).iter().map(|s| s.residue() as u64).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..pivot_limit {
        if rank == m.rows {
            break;
        }
        let Some(found) = (rank..m.rows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = m.field.from_i64(rows[rank][col] as i64).inverse().unwrap().residue() as u64;
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p64;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + p64 - factor * pv % p64) % p64;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let data = rows
        .into_iter()
        .flatten()
        .map(|v| Scalar::Residue { value: v as u32, modulus: p })
        .collect();
    (Matrix { field: m.field, rows: m.rows, cols: m.cols, data }, pivots)
}

/// Fraction-free elimination over ℤ: rows are scaled to integers once, every
/// update is `pivot·row − a·pivot_row` followed by division by the row content,
/// and pivot rows are divided by their pivot only at the end.
fn eliminate_rational(m: &Matrix, pivot_limit: usize) -> (Matrix, Vec<usize>) {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(BigInt::one(), |acc, s| {
                acc.lcm(s.as_rational().expect("rational").denom())
            });
            let mut ints: Vec<BigInt> = row
                .iter()
                .map(|s| {
                    let q = s.as_rational().unwrap();
                    q.numer() * (&lcm / q.denom())
                })
                .collect();
            make_primitive(&mut ints);
            ints
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..pivot_limit {
        if rank == m.rows {
            break;
        }
        let Some(found) = (rank..m.rows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank].clone();
        let pv = &pivot_row[col];
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            let g = a.gcd(pv);
            let (mult_row, mult_pivot) = (pv / &g, &a / &g);
            for (v, pvv) in row.iter_mut().zip(&pivot_row) {
                *v = &*v * &mult_row - pvv * &mult_pivot;
            }
            make_primitive(row);
        }
        pivots.push(col);
        rank += 1;
    }
    let mut data = Vec::with_capacity(m.rows * m.cols);
    for (r, row) in rows.into_iter().enumerate() {
        let denom = if r < rank { row[pivots[r]].clone() } else { BigInt::one() };
        for v in row {
            data.push(Scalar::Rational(BigRational::new(v, denom.clone())));
        }
    }
    (Matrix { field: m.field, rows: m.rows, cols: m.cols, data }, pivots)
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

/// Panics on shape or field mismatch; use [`Matrix::checked_mul`] for a fallible product.
impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).unwrap()
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_add(&-rhs).unwrap()
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { data: self.data.iter().map(|s| -s).collect(), ..self.clone() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}; {}x{}](", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, ")")
    }
}

/// Serialized as an array of rows of scalar strings.
impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            seq.serialize_element(self.row(r))?;
        }
        seq.end()
    }
}
