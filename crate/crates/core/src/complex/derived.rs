use std::ops::RangeInclusive;

use super::resolve::{resolve, ResolvedComplex};
use super::ChainComplex;
use crate::error::{Error, Result};
use crate::exactmat::{Matrix, Scalar, Subspace};
use crate::module::{hom_coords_from_projective, projective_hom_basis, same_algebra, ProjectiveLayout};

/// Smallest resolution bound for which degree `i` of `Hom(P, Σ^• n)` is final,
/// or `None` when the answer is zero for every `i`.
pub fn derived_hom_bound(m: &ChainComplex, n: &ChainComplex, i: i64) -> Option<i64> {
    let sup_m = m.sup()?;
    let (_, n_high) = n.support()?;
    Some((i + n_high + 1).max(sup_m + 2))
}

/// `Hom_{D^b}(m, Σ^i n)` for many `i`, sharing one resolution of `m`.
#[derive(Clone, Debug)]
pub struct DerivedHom {
    resolved: Option<ResolvedComplex>,
    target: ChainComplex,
    bound: i64,
}

struct HomBlock {
    degree: i64,
    layout: ProjectiveLayout,
    targets: Vec<Subspace>,
    basis: Vec<Matrix>,
}

impl DerivedHom {
    pub fn new(m: &ChainComplex, n: &ChainComplex, bound: i64) -> Result<DerivedHom> {
        if !same_algebra(m.algebra(), n.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let target = n.trimmed();
        let resolved = if m.is_exact() || target.is_zero() { None } else { Some(resolve(m, bound)?) };
        Ok(DerivedHom { resolved, target, bound })
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Largest `i` whose dimension is determined by the bound.
    pub fn max_degree(&self) -> Option<i64> {
        let (_, n_high) = self.target.support()?;
        Some(self.bound - n_high - 1)
    }

    pub fn dim(&self, i: i64) -> Result<usize> {
        let Some(res) = &self.resolved else {
            return Ok(0);
        };
        let max = self.max_degree().expect("nonzero target");
        if i > max {
            return Err(Error::BoundTooSmall { needed: self.bound + (i - max), given: self.bound });
        }
        let before = self.blocks(res, i - 1)?;
        let here = self.blocks(res, i)?;
        let after = self.blocks(res, i + 1)?;
        let dim: usize = here.iter().map(|b| b.basis.len()).sum();
        if dim == 0 {
            return Ok(0);
        }
        let r_out = self.coboundary(res, i, &here, &after).rank();
        let r_in = self.coboundary(res, i - 1, &before, &here).rank();
        Ok(dim - r_out - r_in)
    }

    /// `Hom^t = ⊕_k Hom(P_k, n_{k-t})`, one block per contributing `k`.
    fn blocks(&self, res: &ResolvedComplex, t: i64) -> Result<Vec<HomBlock>> {
        let p = &res.projective;
        let mut out = Vec::new();
        for k in p.low()..=p.high() {
            if p.term_dim(k) == 0 || self.target.term_dim(k - t) == 0 {
                continue;
            }
            let layout = ProjectiveLayout::of(&p.terms()[(k - p.low()) as usize])?.expect("projective terms are tagged");
            let (targets, basis) = projective_hom_basis(&layout, &self.target.term(k - t))?;
            out.push(HomBlock { degree: k, layout, targets, basis });
        }
        Ok(out)
    }

    /// `d(f) = ∂^n ∘ f − (−1)^t f ∘ ∂^P` from `Hom^t` to `Hom^{t+1}`.
    fn coboundary(&self, res: &ResolvedComplex, t: i64, from: &[HomBlock], to: &[HomBlock]) -> Matrix {
        let field = self.target.algebra().field();
        let p = &res.projective;
        let rows: usize = to.iter().flat_map(|b| b.targets.iter().map(Subspace::dim)).sum();
        let mut offsets = Vec::with_capacity(to.len());
        let mut at = 0;
        for b in to {
            offsets.push(at);
            at += b.targets.iter().map(Subspace::dim).sum::<usize>();
        }
        let find = |k: i64| to.iter().position(|b| b.degree == k);
        let sign: Scalar = if t.rem_euclid(2) == 0 { -field.one() } else { field.one() };
        let mut cols = Vec::new();
        for block in from {
            let k = block.degree;
            let post = self.target.differential(k - t);
            let pre = p.differential(k + 1);
            for f in &block.basis {
                let mut col = vec![field.zero(); rows];
                if let Some(j) = find(k) {
                    let g = &post * f;
                    for (r, v) in hom_coords_from_projective(&to[j].layout, &to[j].targets, &g).into_iter().enumerate() {
                        col[offsets[j] + r] = &col[offsets[j] + r] + &v;
                    }
                }
                if let Some(j) = find(k + 1) {
                    let g = (f * &pre).scale(&sign);
                    for (r, v) in hom_coords_from_projective(&to[j].layout, &to[j].targets, &g).into_iter().enumerate() {
                        col[offsets[j] + r] = &col[offsets[j] + r] + &v;
                    }
                }
                cols.push(col);
            }
        }
        Matrix::from_columns(field, rows, &cols)
    }
}

/// `dim Hom_{D^b}(m, Σ^i n)` computed from `resolve(m, bound)`.
pub fn derived_hom_dim(m: &ChainComplex, n: &ChainComplex, i: i64, bound: i64) -> Result<usize> {
    if let Some(needed) = derived_hom_bound(m, n, i) {
        if bound < needed {
            return Err(Error::BoundTooSmall { needed, given: bound });
        }
    }
    DerivedHom::new(m, n, bound)?.dim(i)
}

/// `(i, dim Hom(m, Σ^i n))` over a range of degrees, with the bound derived automatically.
pub fn derived_hom_dims(m: &ChainComplex, n: &ChainComplex, degrees: RangeInclusive<i64>) -> Result<Vec<(i64, usize)>> {
    let bound = derived_hom_bound(m, n, *degrees.end()).unwrap_or(0);
    let dh = DerivedHom::new(m, n, bound)?;
    degrees.map(|i| Ok((i, dh.dim(i)?))).collect()
}
