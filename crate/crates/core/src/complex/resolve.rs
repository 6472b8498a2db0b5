use super::{cone, neg, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::exactmat::{Matrix, Subspace};
use crate::module::{cover_relative, Module};

/// A complex of projectives `P` with a quasi-isomorphism `ε : P → C`,
/// computed through degree `bound`.
#[derive(Clone, Debug)]
pub struct ResolvedComplex {
    pub original: ChainComplex,
    pub projective: ChainComplex,
    pub augmentation: ChainMap,
    pub bound: i64,
    /// Whether every differential of `P` lands in the radical.
    pub minimal: bool,
}

/// Builds `P` degree by degree: at degree `k`, the cycles of `cone(ε)` in
/// `P_{k-1} ⊕ C_k` are covered modulo the boundaries `0 ⊕ ∂C_{k+1}`, and the
/// two components of the covering map give `−∂^P_k` and `ε_k`.
pub fn resolve(c: &ChainComplex, bound: i64) -> Result<ResolvedComplex> {
    if let Some(sup) = c.sup() {
        if bound < sup + 2 {
            return Err(Error::BoundTooSmall { needed: sup + 2, given: bound });
        }
    }
    let alg = c.algebra().clone();
    let field = alg.field();
    alg.cover_data()?;
    let trimmed = c.trimmed();
    let low = match trimmed.support() {
        Some((a, _)) if a <= bound => a,
        _ => {
            let zero = ChainComplex::zero(alg.clone());
            return Ok(ResolvedComplex {
                original: c.clone(),
                augmentation: ChainMap::zero(&zero, c),
                projective: zero,
                bound,
                minimal: true,
            });
        }
    };

    let mut terms: Vec<Module> = Vec::new();
    let mut differentials: Vec<Matrix> = Vec::new();
    let mut eps: Vec<Matrix> = Vec::new();
    let mut minimal = true;
    for k in low..=bound {
        let prev = terms.last().cloned().unwrap_or_else(|| Module::zero(alg.clone()));
        let prev_dim = prev.dim();
        let ck = trimmed.term(k);
        let cone_term = prev.direct_sum(&ck)?;
        // the cone differential (x, y) ↦ (−∂x, ε(x) + ∂y) out of P_{k-1} ⊕ C_k
        let prev_d = differentials.last().cloned().unwrap_or_else(|| Matrix::zeros(field, 0, prev_dim));
        let prev_eps = eps.last().cloned().unwrap_or_else(|| Matrix::zeros(field, trimmed.term_dim(k - 1), prev_dim));
        let pprev_dim = prev_d.rows();
        let top = neg(&prev_d).hstack(&Matrix::zeros(field, pprev_dim, ck.dim()))?;
        let bottom = prev_eps.hstack(&trimmed.differential(k))?;
        let d_cone = top.vstack(&bottom)?;
        let cycles = Subspace::span(&d_cone.kernel_basis());
        let (z, inclusion) = cone_term.submodule_unchecked(&cycles);

        let next_d = trimmed.differential(k + 1);
        let boundary_cols = Matrix::zeros(field, prev_dim, next_d.cols()).vstack(&next_d)?;
        let boundaries = Subspace::span(&cycles.coords_of(&boundary_cols));
        let cover = cover_relative(&z, &boundaries)?;
        let pi = &inclusion * &cover.map;

        let d_k = neg(&pi.submatrix(0..prev_dim, 0..pi.cols()));
        let eps_k = pi.submatrix(prev_dim..pi.rows(), 0..pi.cols());
        if !prev.is_zero() && !prev.radical_subspace()?.contains_columns(&d_k) {
            minimal = false;
        }
        if !terms.is_empty() {
            differentials.push(d_k);
        }
        eps.push(eps_k);
        terms.push(cover.projective);
    }

    let projective = ChainComplex::from_raw(alg, low, terms, differentials);
    let augmentation = ChainMap::from_raw(&projective, c, pad_components(&projective, c, low, eps));
    Ok(ResolvedComplex { original: c.clone(), projective, augmentation, bound, minimal })
}

/// Re-indexes `ε_k` (starting at degree `start`) onto the union window of `P` and `C`.
fn pad_components(p: &ChainComplex, c: &ChainComplex, start: i64, eps: Vec<Matrix>) -> Vec<Matrix> {
    let field = c.algebra().field();
    let low = p.low().min(c.low());
    let high = p.high().max(c.high());
    let mut out = Vec::new();
    for k in low..=high {
        let idx = k - start;
        if idx >= 0 && (idx as usize) < eps.len() && c.term_dim(k) == eps[idx as usize].rows() {
            out.push(eps[idx as usize].clone());
        } else {
            out.push(Matrix::zeros(field, c.term_dim(k), p.term_dim(k)));
        }
    }
    out
}

impl ResolvedComplex {
    /// `cone(ε)`; exact through degree `bound` by construction.
    pub fn mapping_cone(&self) -> ChainComplex {
        cone(&self.augmentation)
    }

    /// Ranks of the projective terms, from `P.low()` to `bound`.
    pub fn betti(&self) -> Vec<(i64, usize)> {
        self.projective
            .terms()
            .iter()
            .enumerate()
            .map(|(j, t)| (self.projective.low() + j as i64, t.summands().map_or(0, <[usize]>::len)))
            .collect()
    }
}
