use std::fmt;

use super::{Algebra, AlgebraParts};
use crate::error::{Error, Result};
use crate::exactmat::poly::Poly;
use crate::exactmat::{root_of_unity_order, Field, Scalar, Subspace};

/// The built-in algebra families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `k⟨x, y⟩ / (x², y², xy − c·yx)`, basis `{1, x, y, xy}`.
    Schulz { c: Scalar },
    /// `k[t] / (tⁿ)`.
    TruncatedPoly { n: usize },
    /// Path algebra of the linearly oriented Aₙ quiver, realised as upper
    /// triangular `n × n` matrices.
    PathAn { n: usize },
    /// `Mₙ(k)`.
    FullMatrix { n: usize },
    /// The group algebra `k[Cₙ] = k[t] / (tⁿ − 1)`.
    CyclicGroup { n: usize },
}

impl Builtin {
    /// `name` is one of `schulz`, `truncated_poly`, `path_An`, `full_matrix`,
    /// `cyclic_group`; `param` is `c` for schulz and `n` otherwise.
    pub fn parse(name: &str, field: Field, param: &str) -> Result<Builtin> {
        let n = || -> Result<usize> {
            param
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("expected a positive integer, got {param:?}")))
        };
        Ok(match name {
            "schulz" => Builtin::Schulz { c: field.parse(param)? },
            "truncated_poly" => Builtin::TruncatedPoly { n: n()? },
            "path_An" | "path_an" => Builtin::PathAn { n: n()? },
            "full_matrix" => Builtin::FullMatrix { n: n()? },
            "cyclic_group" => Builtin::CyclicGroup { n: n()? },
            other => return Err(Error::InvalidParameter(format!("unknown builtin algebra {other:?}"))),
        })
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Schulz { c } => write!(f, "schulz(c={c})"),
            Builtin::TruncatedPoly { n } => write!(f, "truncated_poly({n})"),
            Builtin::PathAn { n } => write!(f, "path_A{n}"),
            Builtin::FullMatrix { n } => write!(f, "full_matrix({n})"),
            Builtin::CyclicGroup { n } => write!(f, "cyclic_group({n})"),
        }
    }
}

/// Sparse product table under construction.
struct Table {
    field: Field,
    d: usize,
    c: Vec<Scalar>,
}

impl Table {
    fn new(field: Field, d: usize) -> Table {
        Table { field, d, c: vec![field.zero(); d * d * d] }
    }

    fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.c[(i * self.d + j) * self.d + k] = v;
    }

    fn one(&mut self, i: usize, j: usize, k: usize) {
        let one = self.field.one();
        self.set(i, j, k, one);
    }

    fn unit_vec(&self, i: usize) -> Vec<Scalar> {
        (0..self.d).map(|k| if k == i { self.field.one() } else { self.field.zero() }).collect()
    }

    fn sum_vec(&self, idx: impl IntoIterator<Item = usize>) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.d];
        for i in idx {
            v[i] = self.field.one();
        }
        v
    }
}

pub fn make_builtin(builtin: &Builtin, field: Field) -> Result<Algebra> {
    let n_at_least_one = |n: usize| {
        if n < 1 {
            Err(Error::InvalidParameter(format!("{builtin}: n must be at least 1")))
        } else {
            Ok(())
        }
    };
    let alg = match builtin {
        Builtin::Schulz { c } => schulz(field, c)?,
        Builtin::TruncatedPoly { n } => {
            n_at_least_one(*n)?;
            truncated_poly(field, *n)
        }
        Builtin::PathAn { n } => {
            n_at_least_one(*n)?;
            path_an(field, *n)
        }
        Builtin::FullMatrix { n } => {
            n_at_least_one(*n)?;
            full_matrix(field, *n)
        }
        Builtin::CyclicGroup { n } => {
            n_at_least_one(*n)?;
            cyclic_group(field, *n)?
        }
    };
    debug_assert!(super::validate(&alg).is_empty(), "builtin {builtin} fails validation");
    Ok(alg)
}

fn schulz(field: Field, c: &Scalar) -> Result<Algebra> {
    if c.field() != field {
        return Err(Error::FieldMismatch);
    }
    let c_inv = c
        .inverse()
        .ok_or_else(|| Error::InvalidParameter("schulz parameter c must be nonzero".into()))?;
    // basis 0 = 1, 1 = x, 2 = y, 3 = xy
    let mut t = Table::new(field, 4);
    for b in 0..4 {
        t.one(0, b, b);
        t.one(b, 0, b);
    }
    t.one(1, 2, 3);
    t.set(2, 1, 3, c_inv);
    let note = match root_of_unity_order(c) {
        Some(k) => format!("c = {c} is a root of unity of order {k}"),
        None => format!("c = {c} is not a root of unity"),
    };
    let parts = AlgebraParts {
        field,
        labels: ["1", "x", "y", "xy"].iter().map(|s| s.to_string()).collect(),
        unit: t.unit_vec(0),
        idempotents: Some(vec![t.unit_vec(0)]),
        radical_basis: Some(vec![t.unit_vec(1), t.unit_vec(2), t.unit_vec(3)]),
        generators: vec![t.unit_vec(1), t.unit_vec(2)],
        name: Builtin::Schulz { c: c.clone() }.to_string(),
        structure_constants: t.c,
    };
    Ok(Algebra::from_parts_unchecked(parts)?.with_notes(vec![note]))
}

fn truncated_poly(field: Field, n: usize) -> Algebra {
    let mut t = Table::new(field, n);
    for a in 0..n {
        for b in 0..n - a {
            t.one(a, b, a + b);
        }
    }
    let labels = (0..n)
        .map(|a| match a {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t^{a}"),
        })
        .collect();
    let parts = AlgebraParts {
        field,
        labels,
        unit: t.unit_vec(0),
        idempotents: Some(vec![t.unit_vec(0)]),
        radical_basis: Some((1..n).map(|a| t.unit_vec(a)).collect()),
        generators: if n >= 2 { vec![t.unit_vec(1)] } else { vec![] },
        name: Builtin::TruncatedPoly { n }.to_string(),
        structure_constants: t.c,
    };
    Algebra::from_parts_unchecked(parts).expect("well-formed")
}

fn path_an(field: Field, n: usize) -> Algebra {
    // basis: matrix units e(i,j) with i <= j, e(i,j)·e(k,l) = δ_jk e(i,l)
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let d = pairs.len();
    let mut t = Table::new(field, d);
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                t.one(a, b, index(i, l));
            }
        }
    }
    let diag: Vec<usize> = (0..n).map(|i| index(i, i)).collect();
    let mut generators: Vec<Vec<Scalar>> = diag.iter().map(|&a| t.unit_vec(a)).collect();
    generators.extend((0..n.saturating_sub(1)).map(|i| t.unit_vec(index(i, i + 1))));
    let parts = AlgebraParts {
        field,
        labels: pairs.iter().map(|(i, j)| format!("e({},{})", i + 1, j + 1)).collect(),
        unit: t.sum_vec(diag.iter().copied()),
        idempotents: Some(diag.iter().map(|&a| t.unit_vec(a)).collect()),
        radical_basis: Some(
            pairs
                .iter()
                .enumerate()
                .filter(|(_, (i, j))| i < j)
                .map(|(a, _)| t.unit_vec(a))
                .collect(),
        ),
        generators,
        name: Builtin::PathAn { n }.to_string(),
        structure_constants: t.c,
    };
    Algebra::from_parts_unchecked(parts).expect("well-formed")
}

fn full_matrix(field: Field, n: usize) -> Algebra {
    let d = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut t = Table::new(field, d);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                t.one(idx(i, j), idx(j, l), idx(i, l));
            }
        }
    }
    let diag: Vec<usize> = (0..n).map(|i| idx(i, i)).collect();
    let mut generators: Vec<Vec<Scalar>> = diag.iter().map(|&a| t.unit_vec(a)).collect();
    for i in 0..n.saturating_sub(1) {
        generators.push(t.unit_vec(idx(i, i + 1)));
        generators.push(t.unit_vec(idx(i + 1, i)));
    }
    let parts = AlgebraParts {
        field,
        labels: (0..d).map(|a| format!("E({},{})", a / n + 1, a % n + 1)).collect(),
        unit: t.sum_vec(diag.iter().copied()),
        idempotents: Some(diag.iter().map(|&a| t.unit_vec(a)).collect()),
        radical_basis: Some(vec![]),
        generators,
        name: Builtin::FullMatrix { n }.to_string(),
        structure_constants: t.c,
    };
    Algebra::from_parts_unchecked(parts).expect("well-formed")
}

fn euler_phi(d: usize) -> usize {
    (1..=d).filter(|k| num_integer::gcd(*k, d) == 1).count()
}

fn multiplicative_order(p: usize, d: usize) -> usize {
    if d == 1 {
        return 1;
    }
    let mut acc = p % d;
    let mut e = 1;
    while acc != 1 {
        acc = acc * p % d;
        e += 1;
    }
    e
}

/// `k[Cₙ]` with block idempotents from the factorisation of `tⁿ − 1` into
/// powers of cyclotomic polynomials. Over 𝔽_p this needs every Φ_d (d | n')
/// irreducible, where `n = p^a·n'`; other cases are rejected.
fn cyclic_group(field: Field, n: usize) -> Result<Algebra> {
    let mut t = Table::new(field, n);
    for a in 0..n {
        for b in 0..n {
            t.one(a, b, (a + b) % n);
        }
    }
    let p = field.characteristic() as usize;
    let (mut m, mut ppow) = (n, 1usize);
    if p > 0 {
        while m % p == 0 {
            m /= p;
            ppow *= p;
        }
    }
    let modulus = Poly::t_pow_minus_one(field, n);
    let to_vec = |poly: &Poly| -> Vec<Scalar> {
        let r = poly.div_rem(&modulus).1;
        let mut v = vec![field.zero(); n];
        for (i, c) in r.coeffs().iter().enumerate() {
            v[i] = c.clone();
        }
        v
    };
    let mut idempotents = Vec::new();
    for d in (1..=m).filter(|d| m % d == 0) {
        if p > 0 && multiplicative_order(p, d) != euler_phi(d) {
            return Err(Error::InvalidParameter(format!(
                "cyclic_group({n}) over {field}: the cyclotomic factor Φ_{d} splits, primitive idempotents are not supported"
            )));
        }
        let block = Poly::cyclotomic(field, d).pow(ppow);
        let (cofactor, _) = modulus.div_rem(&block);
        let (_, _, u) = block.ext_gcd(&cofactor);
        idempotents.push(to_vec(&u.mul(&cofactor)));
    }
    let radical_basis = if ppow == 1 {
        vec![]
    } else {
        let r = Poly::t_pow_minus_one(field, m);
        let shifts: Vec<Vec<Scalar>> = (0..n)
            .map(|j| {
                let mut mono = vec![field.zero(); j + 1];
                mono[j] = field.one();
                to_vec(&Poly::new(field, mono).mul(&r))
            })
            .collect();
        let span = Subspace::span_vectors(field, n, &shifts);
        span.basis().columns()
    };
    let labels = (0..n)
        .map(|a| match a {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{a}"),
        })
        .collect();
    let parts = AlgebraParts {
        field,
        labels,
        unit: t.unit_vec(0),
        idempotents: Some(idempotents),
        radical_basis: Some(radical_basis),
        generators: if n >= 2 { vec![t.unit_vec(1)] } else { vec![] },
        name: Builtin::CyclicGroup { n }.to_string(),
        structure_constants: t.c,
    };
    Algebra::from_parts_unchecked(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;

    fn q() -> Field {
        Field::Rationals
    }

    /// Normal forms of words in x, y modulo x², y², xy − c·yx: every word of
    /// length ≥ 3 vanishes, and yx rewrites to c⁻¹·xy. Returns coordinates in
    /// the basis {1, x, y, xy}.
    fn schulz_word_oracle(word: &str, c: &Scalar) -> Vec<Scalar> {
        let f = c.field();
        let mut coeff = f.one();
        let mut w: Vec<char> = word.chars().collect();
        // bubble y before x to the right using yx = c⁻¹ xy
        loop {
            let mut changed = false;
            for i in 0..w.len().saturating_sub(1) {
                if w[i] == 'y' && w[i + 1] == 'x' {
                    w.swap(i, i + 1);
                    coeff = &coeff * &c.inverse().unwrap();
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let s: String = w.iter().collect();
        let mut out = vec![f.zero(); 4];
        let idx = match s.as_str() {
            "" => Some(0),
            "x" => Some(1),
            "y" => Some(2),
            "xy" => Some(3),
            _ => None, // contains xx, yy, or has length ≥ 3
        };
        if let Some(i) = idx {
            out[i] = coeff;
        }
        out
    }

    #[test]
    fn schulz_products_match_word_rewriting() {
        let c = q().from_i64(2);
        let a = make_builtin(&Builtin::Schulz { c: c.clone() }, q()).unwrap();
        assert_eq!(a.dim(), 4);
        let words = ["", "x", "y", "xy"];
        for (i, wi) in words.iter().enumerate() {
            for (j, wj) in words.iter().enumerate() {
                let expect = schulz_word_oracle(&format!("{wi}{wj}"), &c);
                assert_eq!(a.mul(&a.basis_vector(i), &a.basis_vector(j)), expect, "{wi}·{wj}");
            }
        }
        let half = q().from_ratio(1, 2).unwrap();
        assert_eq!(a.mul(&a.basis_vector(2), &a.basis_vector(1))[3], half);
        assert!(a.mul(&a.basis_vector(1), &a.basis_vector(3)).iter().all(Scalar::is_zero));
        assert!(a.notes()[0].contains("not a root of unity"));
    }

    #[test]
    fn schulz_cubes_of_generators_vanish() {
        let a = make_builtin(&Builtin::Schulz { c: q().from_i64(3) }, q()).unwrap();
        for w in 0..8u32 {
            let letters: Vec<usize> = (0..3).map(|b| if w >> b & 1 == 1 { 1 } else { 2 }).collect();
            let prod = letters
                .iter()
                .fold(a.unit().to_vec(), |acc, &l| a.mul(&acc, &a.basis_vector(l)));
            assert!(prod.iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn schulz_rejects_zero_parameter() {
        assert!(matches!(
            make_builtin(&Builtin::Schulz { c: q().zero() }, q()),
            Err(Error::InvalidParameter(_))
        ));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(make_builtin(&Builtin::Schulz { c: q().one() }, f5).unwrap_err(), Error::FieldMismatch);
        let a = make_builtin(&Builtin::Schulz { c: f5.from_i64(2) }, f5).unwrap();
        assert!(a.notes()[0].contains("order 4"));
    }

    #[test]
    fn truncated_poly_two() {
        let a = make_builtin(&Builtin::TruncatedPoly { n: 2 }, q()).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.labels(), &["1".to_string(), "t".to_string()]);
        assert!(a.mul(&a.basis_vector(1), &a.basis_vector(1)).iter().all(Scalar::is_zero));
        assert_eq!(a.radical_basis().unwrap().rows(), 1);
    }

    #[test]
    fn full_matrix_over_f5() {
        let f5 = Field::prime(5).unwrap();
        let a = make_builtin(&Builtin::FullMatrix { n: 2 }, f5).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.radical_basis().unwrap().rows(), 0);
        assert_eq!(a.idempotents().unwrap().len(), 2);
    }

    #[test]
    fn invalid_sizes() {
        for b in [
            Builtin::TruncatedPoly { n: 0 },
            Builtin::PathAn { n: 0 },
            Builtin::FullMatrix { n: 0 },
            Builtin::CyclicGroup { n: 0 },
        ] {
            assert!(matches!(make_builtin(&b, q()), Err(Error::InvalidParameter(_))));
        }
    }

    #[test]
    fn builtins_validate() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        let cases = [
            (Builtin::Schulz { c: q().from_i64(2) }, q()),
            (Builtin::Schulz { c: q().from_i64(1) }, q()),
            (Builtin::TruncatedPoly { n: 1 }, q()),
            (Builtin::TruncatedPoly { n: 4 }, q()),
            (Builtin::PathAn { n: 1 }, q()),
            (Builtin::PathAn { n: 4 }, q()),
            (Builtin::FullMatrix { n: 3 }, q()),
            (Builtin::CyclicGroup { n: 2 }, f2),
            (Builtin::CyclicGroup { n: 4 }, f2),
            (Builtin::CyclicGroup { n: 6 }, q()),
            (Builtin::CyclicGroup { n: 6 }, f3),
            (Builtin::CyclicGroup { n: 3 }, f2),
        ];
        for (b, f) in cases {
            let a = make_builtin(&b, f).unwrap();
            assert_eq!(validate(&a), vec![], "{b} over {f}");
        }
    }

    #[test]
    fn cyclic_group_block_structure() {
        let f3 = Field::prime(3).unwrap();
        let a = make_builtin(&Builtin::CyclicGroup { n: 6 }, f3).unwrap();
        // 6 = 3·2: blocks for Φ_1³ and Φ_2³, radical of dimension 6 − 2
        assert_eq!(a.idempotents().unwrap().len(), 2);
        assert_eq!(a.radical_basis().unwrap().rows(), 4);
        let rat = make_builtin(&Builtin::CyclicGroup { n: 6 }, q()).unwrap();
        assert_eq!(rat.idempotents().unwrap().len(), 4);
        assert_eq!(rat.radical_basis().unwrap().rows(), 0);
        // Φ_7 splits over 𝔽₂ (ord_7(2) = 3 < 6)
        assert!(make_builtin(&Builtin::CyclicGroup { n: 7 }, Field::prime(2).unwrap()).is_err());
    }

    #[test]
    fn path_algebra_dimension() {
        for n in 1..5 {
            let a = make_builtin(&Builtin::PathAn { n }, q()).unwrap();
            assert_eq!(a.dim(), n * (n + 1) / 2);
        }
    }
}
