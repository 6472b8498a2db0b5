use super::hom::{hom_coords_from_projective, projective_hom_basis, ModuleHom, ProjectiveLayout};
use super::{same_algebra, Module};
use crate::error::{Error, Result};
use crate::exactmat::{Matrix, Scalar, Subspace};

/// A projective module together with a map onto `M / extra`.
pub(crate) struct Cover {
    pub projective: Module,
    /// `M.dim × P.dim`
    pub map: Matrix,
}

/// Chooses generators of `M` modulo `rad M + extra`, walking the idempotents in
/// order and the canonical basis of each `e·M`. When `extra` is zero the cover
/// is a projective cover.
pub(crate) fn cover_relative(m: &Module, extra: &Subspace) -> Result<Cover> {
    let alg = m.algebra();
    let (idem, _) = alg.cover_data()?;
    let mut reached = m.radical_subspace()?.sum(extra);
    let mut generators = Vec::new();
    for (i, e) in idem.iter().enumerate() {
        if reached.is_full() {
            break;
        }
        let corner = Subspace::span(&m.act(e));
        for v in corner.basis().columns() {
            if !reached.contains(&v) {
                reached = reached.sum(&m.generated_submodule(std::slice::from_ref(&v)));
                generators.push((i, v));
            }
        }
    }
    if !reached.is_full() {
        return Err(Error::InvalidAlgebra("idempotents and radical do not account for the module top".into()));
    }
    let summands: Vec<usize> = generators.iter().map(|(i, _)| *i).collect();
    let projective = Module::projective(alg.clone(), &summands)?;
    let layout = ProjectiveLayout::of(&projective)?.expect("tagged projective");
    let mut map = Matrix::zeros(m.field(), m.dim(), projective.dim());
    for (s, (_, y)) in generators.iter().enumerate() {
        map = &map + &layout.hom_matrix(m, s, y);
    }
    Ok(Cover { projective, map })
}

/// The projective cover `P → M` as a module homomorphism.
pub fn projective_cover(m: &Module) -> Result<ModuleHom> {
    let cover = cover_relative(m, &Subspace::zero(m.field(), m.dim()))?;
    Ok(ModuleHom::new_unchecked(&cover.projective, m, cover.map))
}

/// A projective resolution `… → P_1 → P_0 → M`, truncated at the bound.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub target: Module,
    /// `P_0, …, P_bound`; zero modules past the end of a finite resolution.
    pub projectives: Vec<Module>,
    /// `differentials[k - 1] = ∂_k : P_k → P_{k-1}` for `k = 1..=bound`.
    pub differentials: Vec<Matrix>,
    /// `P_0 → M`.
    pub augmentation: Matrix,
    /// `Ω^0 M = M, Ω^1 M, …`; the last entry is the kernel of the last computed map.
    pub syzygies: Vec<Module>,
    pub betti: Vec<usize>,
    /// Whether every differential lands in the radical of its target.
    pub minimal: bool,
    /// Whether a zero syzygy was reached within the bound.
    pub complete: bool,
    pub bound: usize,
}

/// Iterated projective covers of `m`, computing `P_0, …, P_bound`.
pub fn minimal_resolution(m: &Module, bound: usize) -> Result<Resolution> {
    let field = m.field();
    let first = cover_relative(m, &Subspace::zero(field, m.dim()))?;
    let augmentation = first.map;
    let mut projectives = vec![first.projective];
    let mut differentials = Vec::new();
    let mut syzygies = vec![m.clone()];
    let mut kernel = Subspace::span(&augmentation.kernel_basis());
    let mut complete = false;
    for _ in 1..=bound {
        let prev = projectives.last().unwrap();
        let (omega, inclusion) = prev.submodule_unchecked(&kernel);
        syzygies.push(omega.clone());
        if omega.is_zero() {
            complete = true;
            break;
        }
        let cover = cover_relative(&omega, &Subspace::zero(field, omega.dim()))?;
        let d = &inclusion * &cover.map;
        kernel = Subspace::span(&d.kernel_basis());
        projectives.push(cover.projective);
        differentials.push(d);
    }
    if !complete {
        let prev = projectives.last().unwrap();
        let (omega, _) = prev.submodule_unchecked(&kernel);
        complete = omega.is_zero();
        syzygies.push(omega);
    }
    while projectives.len() <= bound {
        let prev_dim = projectives.last().unwrap().dim();
        projectives.push(Module::zero(m.algebra().clone()));
        differentials.push(Matrix::zeros(field, prev_dim, 0));
    }
    let betti = projectives.iter().map(|p| p.summands().map_or(0, <[usize]>::len)).collect();
    let minimal = differentials.iter().enumerate().try_fold(true, |ok, (k, d)| -> Result<bool> {
        Ok(ok && projectives[k].radical_subspace()?.contains_columns(d))
    })?;
    Ok(Resolution {
        target: m.clone(),
        projectives,
        differentials,
        augmentation,
        syzygies,
        betti,
        minimal,
        complete,
        bound,
    })
}

impl Resolution {
    /// Projective dimension when the resolution is complete; `-1` for the zero module.
    pub fn projective_dimension(&self) -> Option<i64> {
        if !self.complete {
            return None;
        }
        Some(self.betti.iter().rposition(|&b| b > 0).map_or(-1, |k| k as i64))
    }

    /// `Ω^k M`, when it was computed.
    pub fn syzygy(&self, k: usize) -> Option<&Module> {
        self.syzygies.get(k).or_else(|| self.complete.then(|| self.syzygies.last()).flatten())
    }

    /// Largest degree for which Ext is determined by this resolution.
    pub fn ext_limit(&self) -> Option<usize> {
        if self.complete {
            None
        } else {
            Some(self.bound.saturating_sub(1))
        }
    }

    /// `dim Ext^i(M, y)` for `i = 0..=max`, via `Hom(P_•, y)`.
    pub fn ext_dims(&self, y: &Module, max: usize) -> Result<Vec<usize>> {
        if !same_algebra(self.target.algebra(), y.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if let Some(limit) = self.ext_limit() {
            if max > limit || self.bound == 0 {
                return Err(Error::BoundTooSmall { needed: max as i64 + 1, given: self.bound as i64 });
            }
        }
        let top = max.min(self.projectives.len() - 1);
        let mut cochain_dims = Vec::with_capacity(top + 2);
        let mut ranks = Vec::with_capacity(top + 1);
        let mut next = self.cochain_space(0, y)?;
        for j in 0..=top {
            let current = next;
            cochain_dims.push(current.1.len());
            if j + 1 < self.projectives.len() {
                next = self.cochain_space(j + 1, y)?;
                ranks.push(self.coboundary(j, &current, &next).rank());
            } else {
                next = current;
                ranks.push(0);
            }
        }
        Ok((0..=max)
            .map(|j| {
                if j > top {
                    0
                } else {
                    let before = if j == 0 { 0 } else { ranks[j - 1] };
                    cochain_dims[j] - ranks[j] - before
                }
            })
            .collect())
    }

    fn cochain_space(&self, j: usize, y: &Module) -> Result<(ProjectiveLayout, Vec<Matrix>, Vec<Subspace>)> {
        let layout = ProjectiveLayout::of(&self.projectives[j])?.expect("resolution terms are tagged");
        let (targets, basis) = projective_hom_basis(&layout, y)?;
        Ok((layout, basis, targets))
    }

    /// Matrix of `f ↦ f ∘ ∂_{j+1}` from `Hom(P_j, y)` to `Hom(P_{j+1}, y)`.
    fn coboundary(
        &self,
        j: usize,
        from: &(ProjectiveLayout, Vec<Matrix>, Vec<Subspace>),
        to: &(ProjectiveLayout, Vec<Matrix>, Vec<Subspace>),
    ) -> Matrix {
        let field = self.target.field();
        let d = &self.differentials[j];
        let cols: Vec<Vec<Scalar>> = from
            .1
            .iter()
            .map(|f| hom_coords_from_projective(&to.0, &to.2, &(f * d)))
            .collect();
        let rows: usize = to.2.iter().map(Subspace::dim).sum();
        Matrix::from_columns(field, rows, &cols)
    }
}

/// `dim Ext^i(x, y)` computed from a minimal resolution of `x` with `bound` terms.
pub fn ext_dim(x: &Module, y: &Module, i: i64, bound: usize) -> Result<usize> {
    if !same_algebra(x.algebra(), y.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if i < 0 {
        return Ok(0);
    }
    if i + 1 > bound as i64 {
        return Err(Error::BoundTooSmall { needed: i + 1, given: bound as i64 });
    }
    let res = minimal_resolution(x, bound)?;
    Ok(res.ext_dims(y, i as usize)?[i as usize])
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{make_builtin, Algebra, Builtin};
    use crate::exactmat::Field;

    fn q() -> Field {
        Field::Rationals
    }

    fn alg(b: Builtin, f: Field) -> Arc<Algebra> {
        Arc::new(make_builtin(&b, f).unwrap())
    }

    fn schulz_module(c: i64, lambda: Option<i64>) -> Module {
        let a = alg(Builtin::Schulz { c: q().from_i64(c) }, q());
        let elt = match lambda {
            Some(l) => vec![q().zero(), q().one(), q().from_i64(-l), q().zero()],
            None => vec![q().zero(), q().zero(), q().one(), q().zero()],
        };
        Module::cyclic_quotient(a, &elt).unwrap()
    }

    #[test]
    fn truncated_poly_simple_is_periodic() {
        let a = alg(Builtin::TruncatedPoly { n: 2 }, q());
        let k = Module::simple(a, 0).unwrap();
        let res = minimal_resolution(&k, 5).unwrap();
        assert_eq!(res.betti, vec![1; 6]);
        assert!(res.minimal);
        assert!(!res.complete);
        assert_eq!(res.ext_dims(&k, 4).unwrap(), vec![1; 5]);
    }

    #[test]
    fn projective_terminates_at_zero() {
        let a = alg(Builtin::PathAn { n: 3 }, q());
        let p = Module::projective(a, &[1]).unwrap();
        let res = minimal_resolution(&p, 4).unwrap();
        assert!(res.complete);
        assert_eq!(res.projective_dimension(), Some(0));
        assert_eq!(res.betti, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn path_algebra_simples_have_pd_at_most_one() {
        let a = alg(Builtin::PathAn { n: 3 }, q());
        let pds: Vec<i64> = (0..3)
            .map(|i| minimal_resolution(&Module::simple(a.clone(), i).unwrap(), 4).unwrap().projective_dimension().unwrap())
            .collect();
        assert_eq!(pds, vec![0, 1, 1]);
    }

    #[test]
    fn augmentation_and_differentials_compose_to_zero() {
        let m = schulz_module(2, Some(3));
        let res = minimal_resolution(&m, 4).unwrap();
        assert!((&res.augmentation * &res.differentials[0]).is_zero());
        for w in res.differentials.windows(2) {
            assert!((&w[0] * &w[1]).is_zero());
        }
        assert_eq!(res.betti, vec![1; 5]);
    }

    #[test]
    fn schulz_ext_against_itself_and_regular() {
        let m = schulz_module(2, Some(1));
        let r = Module::regular(m.algebra().clone());
        let res = minimal_resolution(&m, 8).unwrap();
        let self_ext = res.ext_dims(&m, 7).unwrap();
        assert_eq!(self_ext[1], 1);
        assert!(self_ext[2..].iter().all(|&d| d == 0), "{self_ext:?}");
        let reg_ext = res.ext_dims(&r, 7).unwrap();
        assert!(reg_ext[1..].iter().all(|&d| d == 0), "{reg_ext:?}");
    }

    #[test]
    fn projective_with_zero_bound() {
        let a = alg(Builtin::PathAn { n: 2 }, q());
        let p = Module::projective(a.clone(), &[1]).unwrap();
        let res = minimal_resolution(&p, 0).unwrap();
        assert!(res.complete);
        assert_eq!(res.ext_dims(&Module::regular(a), 3).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn ext_bound_errors() {
        let m = schulz_module(2, Some(1));
        assert_eq!(ext_dim(&m, &m, -1, 1).unwrap(), 0);
        assert_eq!(ext_dim(&m, &m, 3, 3), Err(Error::BoundTooSmall { needed: 4, given: 3 }));
    }

    #[test]
    fn hom_dimension_of_ext_zero() {
        let a = alg(Builtin::PathAn { n: 2 }, q());
        let r = Module::regular(a.clone());
        let s = Module::simple(a, 1).unwrap();
        assert_eq!(ext_dim(&s, &r, 0, 2).unwrap(), 0);
        assert_eq!(ext_dim(&s, &r, 1, 2).unwrap(), 1);
    }
}
