use super::{same_algebra, Module};
use crate::error::{Error, Result};
use crate::exactmat::{Matrix, Scalar, Subspace};

/// A module homomorphism, stored as a `target.dim × source.dim` matrix.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    source: Module,
    target: Module,
    matrix: Matrix,
}

impl ModuleHom {
    pub fn new(source: &Module, target: &Module, matrix: Matrix) -> Result<ModuleHom> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "a map {} -> {} needs a {}x{} matrix, got {}x{}",
                source.dim(),
                target.dim(),
                target.dim(),
                source.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        for (a, b) in source.action().iter().zip(target.action()) {
            if &matrix * a != b * &matrix {
                return Err(Error::InvalidMap("matrix does not commute with the action".into()));
            }
        }
        Ok(ModuleHom::new_unchecked(source, target, matrix))
    }

    pub(crate) fn new_unchecked(source: &Module, target: &Module, matrix: Matrix) -> ModuleHom {
        ModuleHom { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn identity(m: &Module) -> ModuleHom {
        ModuleHom::new_unchecked(m, m, Matrix::identity(m.field(), m.dim()))
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleHom {
        ModuleHom::new_unchecked(source, target, Matrix::zeros(source.field(), target.dim(), source.dim()))
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleHom) -> Result<ModuleHom> {
        if first.target.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        Ok(ModuleHom::new_unchecked(&first.source, &self.target, self.matrix.checked_mul(&first.matrix)?))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Kernel, image and cokernel of `f : M → N` with their structure maps.
#[derive(Clone, Debug)]
pub struct ExactnessPackage {
    pub kernel: Module,
    /// `ker f → M`
    pub kernel_inclusion: ModuleHom,
    pub image: Module,
    /// `M → im f`
    pub corestriction: ModuleHom,
    /// `im f → N`
    pub image_inclusion: ModuleHom,
    pub cokernel: Module,
    /// `N → coker f`
    pub cokernel_projection: ModuleHom,
}

pub fn exactness_package(f: &ModuleHom) -> ExactnessPackage {
    let ker = Subspace::span(&f.matrix.kernel_basis());
    let (kernel, k_incl) = f.source.submodule_unchecked(&ker);
    let im = Subspace::span(&f.matrix);
    let (image, i_incl) = f.target.submodule_unchecked(&im);
    let (cokernel, proj) = f.target.quotient(&im);
    ExactnessPackage {
        kernel_inclusion: ModuleHom::new_unchecked(&kernel, &f.source, k_incl),
        corestriction: ModuleHom::new_unchecked(&f.source, &image, im.coords_of(&f.matrix)),
        image_inclusion: ModuleHom::new_unchecked(&image, &f.target, i_incl),
        cokernel_projection: ModuleHom::new_unchecked(&f.target, &cokernel, proj),
        kernel,
        image,
        cokernel,
    }
}

/// A basis of `Hom_Λ(m, n)`.
pub fn hom_space(m: &Module, n: &Module) -> Result<Vec<ModuleHom>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.is_zero() || n.is_zero() {
        return Ok(Vec::new());
    }
    if let Some(layout) = ProjectiveLayout::of(m)? {
        let (_, basis) = projective_hom_basis(&layout, n)?;
        return Ok(basis.into_iter().map(|f| ModuleHom::new_unchecked(m, n, f)).collect());
    }
    Ok(generic_hom_basis(m, n).into_iter().map(|f| ModuleHom::new_unchecked(m, n, f)).collect())
}

/// Solves `ρ_N(g)·F = F·ρ_M(g)` for every algebra generator `g`, with `F` unknown.
fn generic_hom_basis(m: &Module, n: &Module) -> Vec<Matrix> {
    let alg = m.algebra();
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let gens: Vec<Vec<Scalar>> = if alg.generators().is_empty() {
        (0..alg.dim()).map(|i| alg.basis_vector(i)).collect()
    } else {
        alg.generators().to_vec()
    };
    let vars = dm * dn;
    let mut system = Matrix::zeros(field, gens.len() * vars, vars);
    for (gi, g) in gens.iter().enumerate() {
        let (am, an) = (m.act(g), n.act(g));
        for r in 0..dn {
            for c in 0..dm {
                let row = gi * vars + r * dm + c;
                for j in 0..dn {
                    let v = &system[(row, j * dm + c)] + &an[(r, j)];
                    system.set(row, j * dm + c, v);
                }
                for j in 0..dm {
                    let v = &system[(row, r * dm + j)] - &am[(j, c)];
                    system.set(row, r * dm + j, v);
                }
            }
        }
    }
    system
        .kernel_basis()
        .columns()
        .into_iter()
        .map(|col| Matrix::new(field, dn, dm, col).expect("kernel vector has dn*dm entries"))
        .collect()
}

/// Block structure of a module tagged as `⊕ Λ·e_i`.
pub(crate) struct ProjectiveLayout {
    pub summands: Vec<usize>,
    pub offsets: Vec<usize>,
    /// Canonical basis of `Λ·e_i` inside `Λ`, one per summand.
    pub blocks: Vec<Matrix>,
    /// Coordinates of `e_i` within its block.
    pub generators: Vec<Vec<Scalar>>,
}

impl ProjectiveLayout {
    pub fn of(p: &Module) -> Result<Option<ProjectiveLayout>> {
        let Some(summands) = p.summands() else {
            return Ok(None);
        };
        let alg = p.algebra();
        let subs = alg.projective_summands()?;
        let (idem, _) = alg.cover_data()?;
        let mut offsets = Vec::with_capacity(summands.len());
        let mut blocks = Vec::with_capacity(summands.len());
        let mut generators = Vec::with_capacity(summands.len());
        let mut at = 0;
        for &i in summands {
            offsets.push(at);
            at += subs[i].dim();
            blocks.push(subs[i].basis().clone());
            generators.push(subs[i].coords(&idem[i]));
        }
        Ok(Some(ProjectiveLayout { summands: summands.to_vec(), offsets, blocks, generators }))
    }

    pub fn total_dim(&self) -> usize {
        self.offsets.last().map_or(0, |o| o + self.blocks.last().unwrap().cols())
    }

    /// The generator of summand `s` as a vector of the projective module.
    pub fn generator_vector(&self, s: usize) -> Vec<Scalar> {
        let field = self.blocks[s].field();
        let mut v = vec![field.zero(); self.total_dim()];
        for (k, c) in self.generators[s].iter().enumerate() {
            v[self.offsets[s] + k] = c.clone();
        }
        v
    }

    /// The matrix of the map that sends the generator of summand `s` to `y`
    /// and all other summands to zero.
    pub fn hom_matrix(&self, n: &Module, s: usize, y: &[Scalar]) -> Matrix {
        let field = n.field();
        let mut out = Matrix::zeros(field, n.dim(), self.total_dim());
        let block = &self.blocks[s];
        for k in 0..block.cols() {
            let image = n.act(&block.column(k)).mul_vec(y);
            for (r, v) in image.into_iter().enumerate() {
                out.set(r, self.offsets[s] + k, v);
            }
        }
        out
    }
}

/// `e_i·N` for each summand of the layout, and the induced basis of
/// `Hom(P, N) ≅ ⊕ e_i·N`.
pub(crate) fn projective_hom_basis(layout: &ProjectiveLayout, n: &Module) -> Result<(Vec<Subspace>, Vec<Matrix>)> {
    let (idem, _) = n.algebra().cover_data()?;
    let targets: Vec<Subspace> = layout.summands.iter().map(|&i| Subspace::span(&n.act(&idem[i]))).collect();
    let mut basis = Vec::new();
    for (s, sub) in targets.iter().enumerate() {
        for y in sub.basis().columns() {
            basis.push(layout.hom_matrix(n, s, &y));
        }
    }
    Ok((targets, basis))
}

/// Coordinates of `f : P → N` in the basis of [`projective_hom_basis`].
pub(crate) fn hom_coords_from_projective(layout: &ProjectiveLayout, targets: &[Subspace], f: &Matrix) -> Vec<Scalar> {
    let mut out = Vec::new();
    for (s, sub) in targets.iter().enumerate() {
        let y = f.mul_vec(&layout.generator_vector(s));
        out.extend(sub.coords(&y));
    }
    out
}
