use std::fmt;

use serde::Serialize;

use super::Algebra;
use crate::exactmat::{Matrix, Scalar, Subspace};

/// A violated algebra invariant together with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum Diagnostic {
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
    IdempotentNotIdempotent { index: usize },
    IdempotentsNotOrthogonal { a: usize, b: usize },
    IdempotentsDoNotSumToUnit,
    RadicalNotLeftIdeal { basis_element: usize, radical_row: usize },
    RadicalNotRightIdeal { basis_element: usize, radical_row: usize },
    RadicalNotNilpotent { power: usize, remaining_dim: usize },
    GeneratorsDoNotGenerate { span_dim: usize, dim: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Associativity { i, j, k } => {
                write!(f, "associativity fails: (e{i} e{j}) e{k} != e{i} (e{j} e{k})")
            }
            Diagnostic::LeftUnit { i } => write!(f, "unit law fails: 1 · e{i} != e{i}"),
            Diagnostic::RightUnit { i } => write!(f, "unit law fails: e{i} · 1 != e{i}"),
            Diagnostic::IdempotentNotIdempotent { index } => write!(f, "idempotent #{index} does not square to itself"),
            Diagnostic::IdempotentsNotOrthogonal { a, b } => write!(f, "idempotents #{a} and #{b} are not orthogonal"),
            Diagnostic::IdempotentsDoNotSumToUnit => write!(f, "idempotents do not sum to the unit"),
            Diagnostic::RadicalNotLeftIdeal { basis_element, radical_row } => write!(
                f,
                "radical is not a left ideal: e{basis_element} · r{radical_row} leaves its span"
            ),
            Diagnostic::RadicalNotRightIdeal { basis_element, radical_row } => write!(
                f,
                "radical is not a right ideal: r{radical_row} · e{basis_element} leaves its span"
            ),
            Diagnostic::RadicalNotNilpotent { power, remaining_dim } => write!(
                f,
                "nilpotency fails: power {power} of the radical still has dimension {remaining_dim}"
            ),
            Diagnostic::GeneratorsDoNotGenerate { span_dim, dim } => {
                write!(f, "generators and unit span only {span_dim} of {dim} dimensions")
            }
        }
    }
}

/// Checks every algebra invariant; an empty list means the presentation is valid.
pub fn validate(a: &Algebra) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let d = a.dim();
    let field = a.field();

    // (e_i e_j) e_k = e_i (e_j e_k)  ⟺  L_{e_i e_j} = L_i L_j
    'assoc: for i in 0..d {
        for j in 0..d {
            let prod = a.mul(&a.basis_vector(i), &a.basis_vector(j));
            let lhs = a.left_mult_by(&prod);
            let rhs = a.left_mult(i) * a.left_mult(j);
            if lhs != rhs {
                let k = (0..d).find(|&k| lhs.column(k) != rhs.column(k)).unwrap();
                out.push(Diagnostic::Associativity { i, j, k });
                break 'assoc;
            }
        }
    }

    let unit = a.unit();
    for i in 0..d {
        let e = a.basis_vector(i);
        if a.mul(unit, &e) != e {
            out.push(Diagnostic::LeftUnit { i });
            break;
        }
    }
    for i in 0..d {
        let e = a.basis_vector(i);
        if a.mul(&e, unit) != e {
            out.push(Diagnostic::RightUnit { i });
            break;
        }
    }

    if let Some(idem) = a.idempotents() {
        let mut sum = vec![field.zero(); d];
        for (x, e) in idem.iter().enumerate() {
            if &a.mul(e, e) != e {
                out.push(Diagnostic::IdempotentNotIdempotent { index: x });
            }
            for (y, f) in idem.iter().enumerate() {
                if x != y && a.mul(e, f).iter().any(|s| !s.is_zero()) {
                    out.push(Diagnostic::IdempotentsNotOrthogonal { a: x, b: y });
                }
            }
            sum = sum.iter().zip(e).map(|(s, v)| s + v).collect();
        }
        if sum != unit {
            out.push(Diagnostic::IdempotentsDoNotSumToUnit);
        }
    }

    if let Some(rad) = a.radical_basis() {
        let rows: Vec<Vec<Scalar>> = (0..rad.rows()).map(|r| rad.row(r).to_vec()).collect();
        let span = Subspace::span_vectors(field, d, &rows);
        'left: for b in 0..d {
            for (ri, r) in rows.iter().enumerate() {
                if !span.contains(&a.mul(&a.basis_vector(b), r)) {
                    out.push(Diagnostic::RadicalNotLeftIdeal { basis_element: b, radical_row: ri });
                    break 'left;
                }
            }
        }
        'right: for b in 0..d {
            for (ri, r) in rows.iter().enumerate() {
                if !span.contains(&a.mul(r, &a.basis_vector(b))) {
                    out.push(Diagnostic::RadicalNotRightIdeal { basis_element: b, radical_row: ri });
                    break 'right;
                }
            }
        }
        let base = span.basis().columns();
        let mut power = span.clone();
        let mut k = 1;
        while power.dim() > 0 && k <= d {
            let prods: Vec<Vec<Scalar>> = power
                .basis()
                .columns()
                .iter()
                .flat_map(|p| base.iter().map(move |b| (p.clone(), b.clone())))
                .map(|(p, b)| a.mul(&p, &b))
                .collect();
            power = Subspace::span_vectors(field, d, &prods);
            k += 1;
        }
        if power.dim() > 0 {
            out.push(Diagnostic::RadicalNotNilpotent { power: k, remaining_dim: power.dim() });
        }
    }

    let span = generated_span(a);
    if span.dim() != d {
        out.push(Diagnostic::GeneratorsDoNotGenerate { span_dim: span.dim(), dim: d });
    }
    out
}

/// The span of all words in the generators (the empty word being the unit).
fn generated_span(a: &Algebra) -> Subspace {
    let field = a.field();
    let d = a.dim();
    let gens: Vec<Matrix> = a.generators().iter().map(|g| a.left_mult_by(g)).collect();
    let mut span = Subspace::span_vectors(field, d, &[a.unit().to_vec()]);
    loop {
        let mut cols = span.basis().columns();
        for g in &gens {
            cols.extend((g * span.basis()).columns());
        }
        let next = Subspace::span_vectors(field, d, &cols);
        if next.dim() == span.dim() {
            return span;
        }
        span = next;
    }
}
