//! Deciding `M ≅ N` from a basis of `Hom(M, N)`.
//!
//! A generic combination `Σ cᵢ fᵢ` of the basis is invertible exactly when some
//! combination is, and `det(Σ cᵢ fᵢ)` is a polynomial of degree at most
//! `dim M` in each `cᵢ`. Random trials find a witness quickly; a full grid
//! `Sʰ` with `|S| = dim M + 1` (or all of `𝔽_pʰ`) certifies a negative answer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::hom::{hom_space, ModuleHom};
use super::{same_algebra, Module};
use crate::error::{Error, Result};
use crate::exactmat::{Field, Matrix, Scalar};

pub const DEFAULT_ATTEMPTS: usize = 32;
const GRID_LIMIT: u128 = 4096;

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Yes(ModuleHom),
    No(NonIsoReason),
    Unknown,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::No(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Yes(_) => "yes",
            IsoVerdict::No(_) => "no",
            IsoVerdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NonIsoReason {
    Dimension { left: usize, right: usize },
    Invariant { name: String, left: usize, right: usize },
    NoHomomorphisms,
    /// Every element of `Hom(M, N)` was tested.
    Exhaustive { candidates: u128 },
    /// The determinant polynomial vanishes on a grid large enough to force it to be zero.
    DeterminantVanishes { grid: u128 },
}

pub fn iso_test(m: &Module, n: &Module, seed: u64, attempts: usize) -> Result<IsoVerdict> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(IsoVerdict::No(NonIsoReason::Dimension { left: m.dim(), right: n.dim() }));
    }
    if m.is_zero() {
        return Ok(IsoVerdict::Yes(ModuleHom::identity(m)));
    }
    if let Some(reason) = invariant_mismatch(m, n)? {
        return Ok(IsoVerdict::No(reason));
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(IsoVerdict::No(NonIsoReason::NoHomomorphisms));
    }
    let field = m.field();
    let mats: Vec<&Matrix> = basis.iter().map(ModuleHom::matrix).collect();
    let witness = |coeffs: &[Scalar]| -> Option<IsoVerdict> {
        let f = combination(field, m.dim(), &mats, coeffs);
        f.is_invertible().then(|| IsoVerdict::Yes(ModuleHom::new_unchecked(m, n, f)))
    };

    for single in 0..mats.len() {
        let coeffs: Vec<Scalar> = (0..mats.len()).map(|k| if k == single { field.one() } else { field.zero() }).collect();
        if let Some(v) = witness(&coeffs) {
            return Ok(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let coeffs: Vec<Scalar> = (0..mats.len()).map(|_| random_scalar(field, &mut rng)).collect();
        if let Some(v) = witness(&coeffs) {
            return Ok(v);
        }
    }

    let h = mats.len() as u32;
    let side = match field.order() {
        Some(q) if (q as u128).checked_pow(h).is_some_and(|t| t <= GRID_LIMIT) => q as u128,
        Some(q) if q <= m.dim() as u64 => return Ok(IsoVerdict::Unknown),
        _ => m.dim() as u128 + 1,
    };
    let Some(total) = side.checked_pow(h).filter(|&t| t <= GRID_LIMIT) else {
        return Ok(IsoVerdict::Unknown);
    };
    for index in 0..total {
        let mut rest = index;
        let coeffs: Vec<Scalar> = (0..h)
            .map(|_| {
                let digit = (rest % side) as i64;
                rest /= side;
                field.from_i64(digit)
            })
            .collect();
        if let Some(v) = witness(&coeffs) {
            return Ok(v);
        }
    }
    let exhaustive = field.order().is_some_and(|q| q as u128 == side);
    Ok(IsoVerdict::No(if exhaustive {
        NonIsoReason::Exhaustive { candidates: total }
    } else {
        NonIsoReason::DeterminantVanishes { grid: total }
    }))
}

fn invariant_mismatch(m: &Module, n: &Module) -> Result<Option<NonIsoReason>> {
    if let (Some(a), Some(b)) = (m.idempotent_dims(), n.idempotent_dims()) {
        for (i, (x, y)) in a.iter().zip(&b).enumerate() {
            if x != y {
                return Ok(Some(NonIsoReason::Invariant { name: format!("dim e{i}·M"), left: *x, right: *y }));
            }
        }
    }
    if m.algebra().radical_basis().is_some() && m.algebra().idempotents().is_some() {
        let (x, y) = (m.radical_subspace()?.dim(), n.radical_subspace()?.dim());
        if x != y {
            return Ok(Some(NonIsoReason::Invariant { name: "dim rad M".into(), left: x, right: y }));
        }
    }
    Ok(None)
}

fn combination(field: Field, dim: usize, mats: &[&Matrix], coeffs: &[Scalar]) -> Matrix {
    let mut acc = Matrix::zeros(field, dim, dim);
    for (f, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = &acc + &f.scale(c);
        }
    }
    acc
}

fn random_scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-20..=20)),
        Field::Prime { p } => field.from_i64(rng.gen_range(0..p as i64)),
    }
}
