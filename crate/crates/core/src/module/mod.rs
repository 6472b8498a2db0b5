//! Finite-dimensional left modules, given by one action matrix per basis
//! element of the algebra.

mod hom;
mod iso;
mod resolution;

use std::sync::Arc;

pub use hom::{exactness_package, hom_space, ExactnessPackage, ModuleHom};
pub use iso::{iso_test, IsoVerdict, NonIsoReason, DEFAULT_ATTEMPTS};
pub use resolution::{ext_dim, minimal_resolution, projective_cover, Resolution};

pub(crate) use hom::{hom_coords_from_projective, projective_hom_basis, ProjectiveLayout};
pub(crate) use resolution::cover_relative;

use crate::algebra::{combine, Algebra};
use crate::error::{Error, Result};
use crate::exactmat::{Field, Matrix, Scalar, Subspace};

#[derive(Clone, Debug)]
pub struct Module {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
    /// `Some(idx)` when the module is literally `⊕ Λ·e_idx` in the canonical
    /// basis of each summand.
    summands: Option<Vec<usize>>,
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Module {
    /// Validates the unit law and the representation law `ρ(e_i)ρ(e_j) = Σ_k c_ijk ρ(e_k)`.
    pub fn new(algebra: Arc<Algebra>, action: Vec<Matrix>) -> Result<Module> {
        let d = algebra.dim();
        if action.len() != d {
            return Err(Error::InvalidModule(format!("{} action matrices for an algebra of dimension {d}", action.len())));
        }
        let m = action.first().map_or(0, Matrix::rows);
        for a in &action {
            if a.rows() != m || a.cols() != m {
                return Err(Error::InvalidModule("action matrices must be square of equal size".into()));
            }
            if a.field() != algebra.field() {
                return Err(Error::FieldMismatch);
            }
        }
        let module = Module::from_action(algebra, action);
        if !module.act(module.algebra.unit()).is_identity() {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = &module.action[i] * &module.action[j];
                let coeffs: Vec<Scalar> = (0..d).map(|k| module.algebra.structure_constant(i, j, k).clone()).collect();
                if lhs != module.act(&coeffs) {
                    return Err(Error::InvalidModule(format!("representation law fails for basis pair ({i}, {j})")));
                }
            }
        }
        Ok(module)
    }

    pub(crate) fn from_action(algebra: Arc<Algebra>, action: Vec<Matrix>) -> Module {
        let dim = action.first().map_or(0, Matrix::rows);
        Module { algebra, dim, action, summands: None }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Module {
        let f = algebra.field();
        let action = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        Module { algebra, dim: 0, action, summands: Some(vec![]) }
    }

    /// The left regular module `Λ`.
    pub fn regular(algebra: Arc<Algebra>) -> Module {
        let action = (0..algebra.dim()).map(|i| algebra.left_mult(i).clone()).collect();
        Module::from_action(algebra, action)
    }

    /// `⊕ Λ·e_i` over the listed idempotent indices, in canonical bases.
    pub fn projective(algebra: Arc<Algebra>, summands: &[usize]) -> Result<Module> {
        let subs = algebra.projective_summands()?;
        let mut out = Module::zero(algebra.clone());
        for &i in summands {
            let sub = subs
                .get(i)
                .ok_or_else(|| Error::InvalidParameter(format!("no idempotent #{i}")))?;
            let action: Vec<Matrix> = (0..algebra.dim())
                .map(|k| sub.coords_of(&(algebra.left_mult(k) * sub.basis())))
                .collect();
            let piece = Module { algebra: algebra.clone(), dim: sub.dim(), action, summands: Some(vec![i]) };
            out = out.direct_sum(&piece)?;
        }
        Ok(out)
    }

    /// The simple top of `Λ·e_i`.
    pub fn simple(algebra: Arc<Algebra>, i: usize) -> Result<Module> {
        let p = Module::projective(algebra, &[i])?;
        let rad = p.radical_subspace()?;
        Ok(p.quotient(&rad).0)
    }

    /// `Λ / Λ·a`.
    pub fn cyclic_quotient(algebra: Arc<Algebra>, a: &[Scalar]) -> Result<Module> {
        if a.len() != algebra.dim() {
            return Err(Error::InvalidParameter("element has the wrong length".into()));
        }
        let left_ideal = Subspace::span(&algebra.right_mult_by(a));
        Ok(Module::regular(algebra).quotient(&left_ideal).0)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn summands(&self) -> Option<&[usize]> {
        self.summands.as_deref()
    }

    /// The matrix by which the algebra element `a` acts.
    pub fn act(&self, a: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, &self.action, a)
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<Vec<_>>>()?;
        let summands = match (&self.summands, &other.summands) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Ok(Module { algebra: self.algebra.clone(), dim: self.dim + other.dim, action, summands })
    }

    /// `Λ·v₁ + … + Λ·v_r`.
    pub fn generated_submodule(&self, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut cols = Vec::new();
        for v in vectors {
            for a in &self.action {
                cols.push(a.mul_vec(v));
            }
        }
        Subspace::span_vectors(self.field(), self.dim, &cols)
    }

    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        self.action.iter().all(|a| sub.contains_columns(&(a * sub.basis())))
    }

    /// `rad(Λ)·M`.
    pub fn radical_subspace(&self) -> Result<Subspace> {
        let (_, rad) = self.algebra.cover_data()?;
        let mut cols = Vec::new();
        for r in 0..rad.rows() {
            cols.extend(self.act(rad.row(r)).columns());
        }
        Ok(Subspace::span_vectors(self.field(), self.dim, &cols))
    }

    /// The submodule on an invariant subspace, with its inclusion matrix.
    pub fn submodule(&self, sub: &Subspace) -> Result<(Module, Matrix)> {
        if !self.is_submodule(sub) {
            return Err(Error::InvalidModule("subspace is not invariant under the action".into()));
        }
        Ok(self.submodule_unchecked(sub))
    }

    pub(crate) fn submodule_unchecked(&self, sub: &Subspace) -> (Module, Matrix) {
        let action = self.action.iter().map(|a| sub.coords_of(&(a * sub.basis()))).collect();
        (Module::from_action(self.algebra.clone(), action), sub.basis().clone())
    }

    /// The quotient by an invariant subspace, with its projection matrix.
    pub fn quotient(&self, sub: &Subspace) -> (Module, Matrix) {
        debug_assert!(self.is_submodule(sub));
        let proj = sub.quotient_projection();
        let section = sub.quotient_section();
        let action = self.action.iter().map(|a| &(&proj * a) * &section).collect();
        (Module::from_action(self.algebra.clone(), action), proj)
    }

    /// The k-dual `Hom_k(M, k)`, a left module over the opposite algebra.
    pub fn dual(&self) -> Module {
        let op = Arc::new(self.algebra.opposite());
        let action = self.action.iter().map(Matrix::transpose).collect();
        Module::from_action(op, action)
    }

    /// Re-homes the module onto a structurally equal algebra handle.
    pub fn over(&self, algebra: &Arc<Algebra>) -> Result<Module> {
        if !same_algebra(&self.algebra, algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Module { algebra: algebra.clone(), ..self.clone() })
    }

    /// `dim e·M` for each idempotent, an isomorphism invariant.
    pub fn idempotent_dims(&self) -> Option<Vec<usize>> {
        let idem = self.algebra.idempotents()?;
        Some(idem.iter().map(|e| self.act(e).rank()).collect())
    }
}

/// `dual_module` as a free function.
pub fn dual_module(m: &Module) -> Module {
    m.dual()
}

/// `regular_module` as a free function.
pub fn regular_module(a: &Arc<Algebra>) -> Module {
    Module::regular(a.clone())
}
