//! Bounded chain complexes of modules with homological indexing:
//! `∂_k : C_k → C_{k-1}`.

mod derived;
mod resolve;

use std::sync::Arc;

pub use derived::{derived_hom_bound, derived_hom_dim, derived_hom_dims, DerivedHom};
pub use resolve::{resolve, ResolvedComplex};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactmat::{Matrix, Scalar, Subspace};
use crate::module::{same_algebra, Module, ModuleHom};

#[derive(Clone, Debug)]
pub struct ChainComplex {
    algebra: Arc<Algebra>,
    low: i64,
    terms: Vec<Module>,
    /// `differentials[j] = ∂_{low + j + 1}`.
    differentials: Vec<Matrix>,
}

impl ChainComplex {
    /// Terms `M_low, …, M_high` and differentials `∂_{low+1}, …, ∂_high`.
    pub fn new(algebra: Arc<Algebra>, low: i64, terms: Vec<Module>, differentials: Vec<Matrix>) -> Result<ChainComplex> {
        if differentials.len() + 1 != terms.len().max(1) {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                differentials.len()
            )));
        }
        let terms = terms.into_iter().map(|t| t.over(&algebra)).collect::<Result<Vec<_>>>()?;
        for (j, d) in differentials.iter().enumerate() {
            ModuleHom::new(&terms[j + 1], &terms[j], d.clone()).map_err(|e| {
                Error::InvalidComplex(format!("differential in degree {}: {e}", low + j as i64 + 1))
            })?;
        }
        for (j, w) in differentials.windows(2).enumerate() {
            if !(&w[0] * &w[1]).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "differentials square to a nonzero map at degree {}",
                    low + j as i64 + 2
                )));
            }
        }
        Ok(ChainComplex { algebra, low, terms, differentials })
    }

    pub(crate) fn from_raw(algebra: Arc<Algebra>, low: i64, terms: Vec<Module>, differentials: Vec<Matrix>) -> ChainComplex {
        debug_assert_eq!(differentials.len() + 1, terms.len().max(1));
        ChainComplex { algebra, low, terms, differentials }
    }

    pub fn zero(algebra: Arc<Algebra>) -> ChainComplex {
        ChainComplex { algebra, low: 0, terms: Vec::new(), differentials: Vec::new() }
    }

    /// The module `m` alone in the given degree.
    pub fn stalk(m: &Module, degree: i64) -> ChainComplex {
        ChainComplex { algebra: m.algebra().clone(), low: degree, terms: vec![m.clone()], differentials: Vec::new() }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// Top of the stored window; `low - 1` when no terms are stored.
    pub fn high(&self) -> i64 {
        self.low + self.terms.len() as i64 - 1
    }

    pub fn terms(&self) -> &[Module] {
        &self.terms
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    pub fn term(&self, k: i64) -> Module {
        if (self.low..=self.high()).contains(&k) {
            self.terms[(k - self.low) as usize].clone()
        } else {
            Module::zero(self.algebra.clone())
        }
    }

    pub fn term_dim(&self, k: i64) -> usize {
        if (self.low..=self.high()).contains(&k) {
            self.terms[(k - self.low) as usize].dim()
        } else {
            0
        }
    }

    /// `∂_k : C_k → C_{k-1}`, zero outside the stored window.
    pub fn differential(&self, k: i64) -> Matrix {
        if k > self.low && k <= self.high() {
            self.differentials[(k - self.low - 1) as usize].clone()
        } else {
            Matrix::zeros(self.algebra.field(), self.term_dim(k - 1), self.term_dim(k))
        }
    }

    /// Degrees whose terms are nonzero, as a closed range.
    pub fn support(&self) -> Option<(i64, i64)> {
        let first = self.terms.iter().position(|t| !t.is_zero())?;
        let last = self.terms.iter().rposition(|t| !t.is_zero())?;
        Some((self.low + first as i64, self.low + last as i64))
    }

    pub fn is_zero(&self) -> bool {
        self.support().is_none()
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(&self) -> ChainComplex {
        match self.support() {
            None => ChainComplex::zero(self.algebra.clone()),
            Some((a, b)) => self.window(a, b),
        }
    }

    /// The terms in degrees `a..=b` with the differentials between them.
    pub(crate) fn window(&self, a: i64, b: i64) -> ChainComplex {
        if b < a {
            return ChainComplex { low: a, ..ChainComplex::zero(self.algebra.clone()) };
        }
        let terms = (a..=b).map(|k| self.term(k)).collect();
        let differentials = (a + 1..=b).map(|k| self.differential(k)).collect();
        ChainComplex::from_raw(self.algebra.clone(), a, terms, differentials)
    }

    /// `(Σ^i C)_n = C_{n-i}` with differentials scaled by `(-1)^i`.
    pub fn shift(&self, i: i64) -> ChainComplex {
        let differentials = if i.rem_euclid(2) == 0 {
            self.differentials.clone()
        } else {
            let minus = -self.algebra.field().one();
            self.differentials.iter().map(|d| d.scale(&minus)).collect()
        };
        ChainComplex { algebra: self.algebra.clone(), low: self.low + i, terms: self.terms.clone(), differentials }
    }

    pub fn homology_dim(&self, k: i64) -> usize {
        let n = self.term_dim(k);
        if n == 0 {
            return 0;
        }
        n - self.differential(k).rank() - self.differential(k + 1).rank()
    }

    /// `ker ∂_k / im ∂_{k+1}` with the induced action.
    pub fn homology(&self, k: i64) -> Module {
        let cycles = Subspace::span(&self.differential(k).kernel_basis());
        let (z, _) = self.term(k).submodule_unchecked(&cycles);
        let boundaries = Subspace::span(&cycles.coords_of(&self.differential(k + 1)));
        z.quotient(&boundaries).0
    }

    /// `(k, dim H_k)` over the stored window.
    pub fn homology_dims(&self) -> Vec<(i64, usize)> {
        (self.low..=self.high()).map(|k| (k, self.homology_dim(k))).collect()
    }

    /// Lowest degree with nonzero homology.
    pub fn inf(&self) -> Option<i64> {
        (self.low..=self.high()).find(|&k| self.homology_dim(k) > 0)
    }

    /// Highest degree with nonzero homology.
    pub fn sup(&self) -> Option<i64> {
        (self.low..=self.high()).rev().find(|&k| self.homology_dim(k) > 0)
    }

    pub fn is_exact(&self) -> bool {
        self.inf().is_none()
    }

    /// `sup - inf` of the nonzero terms, or `-1` for the zero complex.
    pub fn width(&self) -> i64 {
        self.support().map_or(-1, |(a, b)| b - a)
    }

    /// Whether every term is a tagged direct sum of indecomposable projectives.
    pub fn is_projective_termwise(&self) -> bool {
        self.terms.iter().all(|t| t.summands().is_some())
    }
}

/// A degreewise family `f_k : S_k → T_k` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    low: i64,
    components: Vec<Matrix>,
}

impl ChainMap {
    /// `components[j]` is `f_{low + j}`, where `low` is the lower end of the
    /// union of both windows. Missing trailing components are zero.
    pub fn new(source: &ChainComplex, target: &ChainComplex, components: Vec<Matrix>) -> Result<ChainMap> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let map = ChainMap::from_raw(source, target, components);
        for k in map.low..=map.high() {
            let f = map.component(k);
            if f.rows() != target.term_dim(k) || f.cols() != source.term_dim(k) {
                return Err(Error::InvalidMap(format!("component in degree {k} has the wrong shape")));
            }
            ModuleHom::new(&source.term(k), &target.term(k), f.clone())
                .map_err(|e| Error::InvalidMap(format!("component in degree {k}: {e}")))?;
            let lhs = &map.component(k - 1) * &source.differential(k);
            let rhs = &target.differential(k) * &f;
            if lhs != rhs {
                return Err(Error::InvalidMap(format!("components do not commute with differentials in degree {k}")));
            }
        }
        Ok(map)
    }

    pub(crate) fn from_raw(source: &ChainComplex, target: &ChainComplex, components: Vec<Matrix>) -> ChainMap {
        let low = source.low().min(target.low());
        ChainMap { source: source.clone(), target: target.clone(), low, components }
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let comps = c.terms().iter().map(|t| Matrix::identity(c.algebra().field(), t.dim())).collect();
        ChainMap::from_raw(c, c, comps)
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> ChainMap {
        ChainMap::from_raw(source, target, Vec::new())
    }

    /// A map between stalk complexes in one degree.
    pub fn from_module_hom(f: &ModuleHom, degree: i64) -> ChainMap {
        let s = ChainComplex::stalk(f.source(), degree);
        let t = ChainComplex::stalk(f.target(), degree);
        ChainMap::from_raw(&s, &t, vec![f.matrix().clone()])
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    fn high(&self) -> i64 {
        self.source.high().max(self.target.high())
    }

    pub fn component(&self, k: i64) -> Matrix {
        let idx = k - self.low;
        if idx >= 0 && (idx as usize) < self.components.len() {
            self.components[idx as usize].clone()
        } else {
            Matrix::zeros(self.source.algebra().field(), self.target.term_dim(k), self.source.term_dim(k))
        }
    }
}

/// `C_k = S_{k-1} ⊕ T_k` with `d(x, y) = (−∂x, f(x) + ∂y)`.
pub fn cone(f: &ChainMap) -> ChainComplex {
    let (s, t) = (f.source(), f.target());
    let alg = s.algebra().clone();
    let field = alg.field();
    let low = (s.low() + 1).min(t.low());
    let high = (s.high() + 1).max(t.high());
    if high < low {
        return ChainComplex::zero(alg);
    }
    let terms: Vec<Module> = (low..=high)
        .map(|k| s.term(k - 1).direct_sum(&t.term(k)).expect("same algebra"))
        .collect();
    let minus = -field.one();
    let differentials = (low + 1..=high)
        .map(|k| {
            let top = s.differential(k - 1).scale(&minus).hstack(&Matrix::zeros(field, s.term_dim(k - 2), t.term_dim(k)));
            let bottom = f.component(k - 1).hstack(&t.differential(k));
            top.and_then(|a| bottom.and_then(|b| a.vstack(&b))).expect("block shapes agree")
        })
        .collect();
    ChainComplex::from_raw(alg, low, terms, differentials)
}

/// `stalk` as a free function.
pub fn stalk(m: &Module, degree: i64) -> ChainComplex {
    ChainComplex::stalk(m, degree)
}

/// `shift` as a free function.
pub fn shift(c: &ChainComplex, i: i64) -> ChainComplex {
    c.shift(i)
}

/// `homology` as a free function.
pub fn homology(c: &ChainComplex, k: i64) -> Module {
    c.homology(k)
}

pub(crate) fn neg(m: &Matrix) -> Matrix {
    let minus: Scalar = -m.field().one();
    m.scale(&minus)
}
