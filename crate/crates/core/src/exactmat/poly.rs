//! Univariate polynomials over a [`Field`], coefficients stored low degree first.
//! Only what the group-algebra constructor needs.

use super::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn constant(field: Field, c: Scalar) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `t^n - 1`
    pub fn t_pow_minus_one(field: Field, n: usize) -> Poly {
        let mut c = vec![field.zero(); n + 1];
        c[0] = field.from_i64(-1);
        c[n] = field.one();
        Poly::new(field, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::new(self.field, vec![]);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, c)
    }

    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].inverse().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let f = &rem[k] * &lead_inv;
            if !f.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    rem[k - dd + i] = &rem[k - dd + i] - &(&f * c);
                }
                quot[k - dd] = f;
            }
            rem.pop();
        }
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    /// Returns `(g, s, u)` with `s·self + u·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(f, f.one()), Poly::new(f, vec![]));
        let (mut u0, mut u1) = (Poly::new(f, vec![]), Poly::constant(f, f.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            (r0, r1) = (r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            (s0, s1) = (s1, s2);
            let u2 = u0.sub(&q.mul(&u1));
            (u0, u1) = (u1, u2);
        }
        let lead = r0.coeffs.last().unwrap().inverse().unwrap();
        let scale = Poly::constant(f, lead);
        (r0.mul(&scale), s0.mul(&scale), u0.mul(&scale))
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::constant(self.field, self.field.one()), |acc, _| acc.mul(self))
    }

    /// The cyclotomic polynomial Φ_d over this field (integer coefficients reduced).
    pub fn cyclotomic(field: Field, d: usize) -> Poly {
        let mut p = Poly::t_pow_minus_one(field, d);
        for e in 1..d {
            if d % e == 0 {
                p = p.div_rem(&Poly::cyclotomic(field, e)).0;
            }
        }
        p
    }
}
