use garc_core::{Field, Matrix, Scalar};
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn matrix(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    Matrix::from_fn(field, rows, cols, |r, c| field.from_i64(entries[r * cols + c]))
}

fn shaped(max: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| (Just(r), Just(c), prop::collection::vec(range.clone(), r * c)))
}

/// Textbook Gauss–Jordan over 𝔽_p on plain integers: leftmost pivot column,
/// smallest row index among the candidates.
fn naive_rref(p: u64, rows: usize, cols: usize, entries: &[i64]) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|r| (0..cols).map(|c| entries[r * cols + c].rem_euclid(p as i64) as u64).collect())
        .collect();
    let inv = |x: u64| -> u64 {
        let mut result = 1u64;
        let (mut base, mut e) = (x % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        result
    };
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        let Some(pr) = (next..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(next, pr);
        let s = inv(a[next][c]);
        for v in a[next].iter_mut() {
            *v = *v * s % p;
        }
        for r in 0..rows {
            if r != next && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..cols {
                    a[r][k] = (a[r][k] + p - f * a[next][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    (a, pivots)
}

fn residue(s: &Scalar) -> u64 {
    s.to_string().parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn transform_is_invertible_and_reduces((r, c, e) in shaped(6, -9..=9)) {
        for field in [Field::Rationals, Field::prime(7).unwrap()] {
            let m = matrix(field, r, c, &e);
            let red = m.rref();
            prop_assert!(red.transform.is_invertible());
            prop_assert_eq!(&(&red.transform * &m), &red.reduced);
            prop_assert_eq!(red.rank, red.pivot_columns.len());
        }
    }

    #[test]
    fn rank_nullity((r, c, e) in shaped(7, -5..=5)) {
        for field in [Field::Rationals, Field::prime(3).unwrap()] {
            let m = matrix(field, r, c, &e);
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), c);
            prop_assert!((&m * &k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }
    }

    #[test]
    fn prime_field_agrees_with_naive_elimination((r, c, e) in shaped(6, 0..=12), p in prop::sample::select(vec![2u64, 3, 5, 11, 13])) {
        let field = Field::prime(p).unwrap();
        let m = matrix(field, r, c, &e);
        let (expected, pivots) = naive_rref(p, r, c, &e);
        let red = m.rref();
        prop_assert_eq!(&red.pivot_columns, &pivots);
        for row in 0..r {
            let got: Vec<u64> = red.reduced.row(row).iter().map(residue).collect();
            prop_assert_eq!(&got, &expected[row]);
        }
        prop_assert_eq!(m.kernel_basis().cols(), c - pivots.len());
    }

    #[test]
    fn solve_finds_planted_solutions((r, c, e) in shaped(6, -4..=4), x in prop::collection::vec(-3i64..=3, 6), p in prop::sample::select(vec![0u64, 5])) {
        let field = if p == 0 { Field::Rationals } else { Field::prime(p).unwrap() };
        let a = matrix(field, r, c, &e);
        let x0 = Matrix::from_fn(field, c, 1, |i, _| field.from_i64(x[i]));
        let b = &a * &x0;
        let sol = a.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(&(&a * &sol), &b);
    }

    #[test]
    fn solve_reports_inconsistency((r, c, e) in shaped(5, -3..=3), rhs in prop::collection::vec(-3i64..=3, 5)) {
        let field = Field::Rationals;
        let a = matrix(field, r, c, &e);
        let b = Matrix::from_fn(field, r, 1, |i, _| field.from_i64(rhs[i]));
        let consistent = a.rank() == a.hstack(&b).unwrap().rank();
        prop_assert_eq!(a.solve(&b).unwrap().is_some(), consistent);
    }

    #[test]
    fn rationals_stay_reduced((r, c, e) in shaped(5, -20..=20)) {
        let field = Field::Rationals;
        let m = matrix(field, r, c, &e);
        let red = m.rref();
        for s in red.transform.entries().iter().chain(red.reduced.entries()) {
            let q = s.as_rational().unwrap();
            prop_assert!(q.denom().is_positive());
            prop_assert!(q.numer().gcd(q.denom()).is_one());
        }
        if m.is_square() && m.is_invertible() {
            let inv = m.inverse().unwrap();
            prop_assert!((&m * &inv).is_identity());
        }
    }
}
