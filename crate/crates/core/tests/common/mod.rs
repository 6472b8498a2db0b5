//! Algebras, modules and complexes shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use garc_core::algebra::{make_builtin, Algebra, Builtin};
use garc_core::garc::{schulz_module, Lambda};
use garc_core::module::{exactness_package, hom_space, minimal_resolution, Module, ModuleHom};
use garc_core::{ChainComplex, Field, Matrix, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn alg(b: Builtin, f: Field) -> Arc<Algebra> {
    Arc::new(make_builtin(&b, f).unwrap())
}

pub fn q() -> Field {
    Field::Rationals
}

pub fn f2() -> Field {
    Field::prime(2).unwrap()
}

pub fn schulz(c: i64) -> Arc<Algebra> {
    alg(Builtin::Schulz { c: q().from_i64(c) }, q())
}

/// The five algebras every suite runs over.
pub fn corpus() -> Vec<(&'static str, Arc<Algebra>)> {
    vec![
        ("truncated_poly(Q,2)", alg(Builtin::TruncatedPoly { n: 2 }, q())),
        ("truncated_poly(Q,3)", alg(Builtin::TruncatedPoly { n: 3 }, q())),
        ("path_An(Q,3)", alg(Builtin::PathAn { n: 3 }, q())),
        ("cyclic_group(F2,2)", alg(Builtin::CyclicGroup { n: 2 }, f2())),
        ("schulz(Q,2)", schulz(2)),
    ]
}

fn basis_element(a: &Arc<Algebra>, i: usize) -> Vec<Scalar> {
    a.basis_vector(i)
}

/// Regular module, every simple, every indecomposable projective and the
/// cyclic quotients `Λ/Λb` by non-unit basis elements.
pub fn test_modules(a: &Arc<Algebra>) -> Vec<Module> {
    let mut out = vec![Module::regular(a.clone())];
    let idempotents = a.idempotents().map_or(0, <[Vec<Scalar>]>::len);
    for i in 0..idempotents {
        out.push(Module::simple(a.clone(), i).unwrap());
        if idempotents > 1 {
            out.push(Module::projective(a.clone(), &[i]).unwrap());
        }
    }
    if a.is_local() {
        for i in 1..a.dim() {
            out.push(Module::cyclic_quotient(a.clone(), &basis_element(a, i)).unwrap());
        }
    }
    if a.dim() == 4 && a.name().starts_with("schulz") {
        out.push(schulz_module(a, &Lambda::Finite(a.field().one())).unwrap());
    }
    out
}

pub fn small_scalar(f: Field, rng: &mut ChaCha8Rng) -> Scalar {
    f.from_i64(rng.gen_range(-2..=2))
}

pub fn random_element(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..a.dim()).map(|_| small_scalar(a.field(), rng)).collect()
}

/// `Λ/Λb` for a random element `b`.
pub fn random_cyclic(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Module {
    Module::cyclic_quotient(a.clone(), &random_element(a, rng)).unwrap()
}

/// A random linear combination of a basis of `Hom(m, n)`.
pub fn random_hom(m: &Module, n: &Module, rng: &mut ChaCha8Rng) -> ModuleHom {
    let basis = hom_space(m, n).unwrap();
    let f = m.field();
    let mut acc = Matrix::zeros(f, n.dim(), m.dim());
    for h in &basis {
        acc = &acc + &h.matrix().scale(&small_scalar(f, rng));
    }
    ModuleHom::new(m, n, acc).unwrap()
}

pub fn random_module(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Module {
    let mods = test_modules(a);
    match rng.gen_range(0..3) {
        0 => mods[rng.gen_range(0..mods.len())].clone(),
        1 => random_cyclic(a, rng),
        _ => {
            let x = &mods[rng.gen_range(0..mods.len())];
            let y = random_cyclic(a, rng);
            x.direct_sum(&y).unwrap()
        }
    }
}

/// A random complex of one to three nonzero terms starting in degree `low`.
/// Three-term complexes are `W → ker g → Y → Z` style compositions so that
/// the differentials square to zero by construction.
pub fn random_complex(a: &Arc<Algebra>, low: i64, rng: &mut ChaCha8Rng) -> ChainComplex {
    let terms = rng.gen_range(1..=3);
    let y = random_module(a, rng);
    match terms {
        1 => ChainComplex::stalk(&y, low),
        2 => {
            let z = random_module(a, rng);
            let g = random_hom(&y, &z, rng);
            ChainComplex::new(a.clone(), low, vec![z, y], vec![g.matrix().clone()]).unwrap()
        }
        _ => {
            let z = random_module(a, rng);
            let g = random_hom(&y, &z, rng);
            let pkg = exactness_package(&g);
            let w = random_module(a, rng);
            let h = random_hom(&w, &pkg.kernel, rng);
            let f = pkg.kernel_inclusion.compose(&h).unwrap();
            ChainComplex::new(a.clone(), low, vec![z, y, w], vec![g.matrix().clone(), f.matrix().clone()]).unwrap()
        }
    }
}

/// Projective dimension if the minimal resolution stops within `bound`.
pub fn finite_pd(m: &Module, bound: usize) -> Option<i64> {
    minimal_resolution(m, bound).unwrap().projective_dimension()
}
