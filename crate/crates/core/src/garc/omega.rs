use serde::Serialize;

use crate::complex::{resolve, ChainComplex, ChainMap, ResolvedComplex};
use crate::error::{Error, Result};
use crate::exactmat::{Matrix, Subspace};
use crate::io::{matrix_rows, MatrixRows};
use crate::module::{iso_test, Module, DEFAULT_ATTEMPTS};

/// The syzygy `Ω` of a complex with nonzero homology, together with the
/// perfect piece `Q = P_{≤n}` of its normalized resolution.
#[derive(Clone, Debug)]
pub struct OmegaResult {
    pub source: ChainComplex,
    /// Lowest degree with homology.
    pub m: i64,
    /// `sup - inf`.
    pub n: i64,
    pub omega: Module,
    /// Degree at which the stalk of `omega` sits once the normalization is undone.
    pub placement: i64,
    /// `P_{≤n}` of the resolution of `Σ^{-m} source`, in normalized degrees.
    pub q: ChainComplex,
    /// `P_{≥n+1}`, in normalized degrees.
    pub tail: ChainComplex,
    pub resolved: ResolvedComplex,
    pub bound: i64,
    pub checks: OmegaChecks,
}

/// Each structural property of an [`OmegaResult`], verified after construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaChecks {
    pub q_termwise_projective: bool,
    pub differentials_square_to_zero: bool,
    pub resolution_is_quasi_isomorphism: bool,
    pub truncation_sequence_exact: bool,
    pub omega_is_cokernel: bool,
    /// `yes`, `no` or `unknown` from the isomorphism test `H_{n+1}(P_{≥n+1}) ≅ Ω`.
    pub tail_homology_iso: String,
    pub tail_exact_above: bool,
}

impl OmegaChecks {
    pub fn all_hold(&self) -> bool {
        self.q_termwise_projective
            && self.differentials_square_to_zero
            && self.resolution_is_quasi_isomorphism
            && self.truncation_sequence_exact
            && self.omega_is_cokernel
            && self.tail_homology_iso == "yes"
            && self.tail_exact_above
    }
}

/// Serializable digest of an [`OmegaResult`].
#[derive(Clone, Debug, Serialize)]
pub struct OmegaSummary {
    pub m: i64,
    pub n: i64,
    pub placement: i64,
    pub bound: i64,
    pub omega_dim: usize,
    pub omega_action: Vec<MatrixRows>,
    pub q_betti: Vec<(i64, usize)>,
    pub checks: OmegaChecks,
}

impl OmegaResult {
    pub fn summary(&self) -> OmegaSummary {
        OmegaSummary {
            m: self.m,
            n: self.n,
            placement: self.placement,
            bound: self.bound,
            omega_dim: self.omega.dim(),
            omega_action: self.omega.action().iter().map(matrix_rows).collect(),
            q_betti: (self.q.low()..=self.q.high())
                .map(|k| (k, self.q.term(k).summands().map_or(0, <[usize]>::len)))
                .collect(),
            checks: self.checks.clone(),
        }
    }

    /// The stalk complex `Σ^placement Ω`.
    pub fn omega_complex(&self) -> ChainComplex {
        ChainComplex::stalk(&self.omega, self.placement)
    }
}

pub fn omega(c: &ChainComplex, bound: i64) -> Result<OmegaResult> {
    omega_seeded(c, bound, 0)
}

pub(crate) fn omega_seeded(c: &ChainComplex, bound: i64, seed: u64) -> Result<OmegaResult> {
    let (Some(inf), Some(sup)) = (c.inf(), c.sup()) else {
        return Err(Error::ZeroComplex);
    };
    let n = sup - inf;
    if bound < n + 2 {
        return Err(Error::BoundTooSmall { needed: n + 2, given: bound });
    }
    let normalized = c.shift(-inf);
    let resolved = resolve(&normalized, bound)?;
    let p = resolved.projective.clone();

    let d = p.differential(n + 2);
    let top = p.term(n + 1);
    let image = Subspace::span(&d);
    let (omega, _) = top.quotient(&image);

    let q = p.window(p.low().min(n + 1), n);
    let tail = p.window(n + 1, bound);

    let checks = OmegaChecks {
        q_termwise_projective: q.is_projective_termwise(),
        differentials_square_to_zero: (p.low() + 2..=p.high()).all(|k| (&p.differential(k - 1) * &p.differential(k)).is_zero()),
        resolution_is_quasi_isomorphism: {
            let cone = resolved.mapping_cone();
            (cone.low()..=bound).all(|k| cone.homology_dim(k) == 0)
        },
        truncation_sequence_exact: truncation_exact(&q, &p, &tail),
        omega_is_cokernel: omega.dim() + d.rank() == top.dim(),
        tail_homology_iso: iso_test(&tail.homology(n + 1), &omega, seed, DEFAULT_ATTEMPTS)?.label().to_string(),
        tail_exact_above: (n + 2..bound).all(|j| tail.homology_dim(j) == 0),
    };

    Ok(OmegaResult { source: c.clone(), m: inf, n, omega, placement: inf, q, tail, resolved, bound, checks })
}

/// `0 → Q → P → T → 0`: both maps are chain maps and the sequence is exact in every degree.
fn truncation_exact(q: &ChainComplex, p: &ChainComplex, t: &ChainComplex) -> bool {
    let field = p.algebra().field();
    let low = q.low().min(p.low()).min(t.low());
    let high = q.high().max(p.high()).max(t.high());
    let inclusion = |k: i64| -> Matrix {
        if q.term_dim(k) > 0 {
            Matrix::identity(field, p.term_dim(k))
        } else {
            Matrix::zeros(field, p.term_dim(k), 0)
        }
    };
    let projection = |k: i64| -> Matrix {
        if t.term_dim(k) > 0 {
            Matrix::identity(field, p.term_dim(k))
        } else {
            Matrix::zeros(field, 0, p.term_dim(k))
        }
    };
    let from = low.min(p.low());
    let incl: Vec<Matrix> = (q.low().min(p.low())..=q.high().max(p.high())).map(inclusion).collect();
    let proj: Vec<Matrix> = (p.low().min(t.low())..=p.high().max(t.high())).map(projection).collect();
    let chain_maps = ChainMap::new(q, p, incl).is_ok() && ChainMap::new(p, t, proj).is_ok();
    chain_maps
        && (from..=high).all(|k| {
            let (i, pr) = (inclusion(k), projection(k));
            let composite_zero = (&pr * &i).is_zero();
            let injective = i.rank() == q.term_dim(k);
            let surjective = pr.rank() == t.term_dim(k);
            composite_zero && injective && surjective && q.term_dim(k) + t.term_dim(k) == p.term_dim(k)
        })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{make_builtin, Builtin};
    use crate::exactmat::Field;
    use crate::module::minimal_resolution;

    #[test]
    fn stalk_omega_is_first_syzygy() {
        let q = Field::Rationals;
        let a = Arc::new(make_builtin(&Builtin::Schulz { c: q.from_i64(2) }, q).unwrap());
        let m = Module::cyclic_quotient(a, &[q.zero(), q.one(), q.from_i64(-1), q.zero()]).unwrap();
        let res = omega(&ChainComplex::stalk(&m, 0), 4).unwrap();
        assert!(res.checks.all_hold(), "{:?}", res.checks);
        let syz = minimal_resolution(&m, 1).unwrap().syzygies[1].clone();
        assert!(iso_test(&res.omega, &syz, 0, 8).unwrap().is_yes());
        let shifted = omega(&ChainComplex::stalk(&m, 5), 4).unwrap();
        assert_eq!(shifted.placement, 5);
        assert!(iso_test(&shifted.omega, &res.omega, 0, 8).unwrap().is_yes());
    }

    #[test]
    fn projective_stalk_has_zero_omega() {
        let q = Field::Rationals;
        let a = Arc::new(make_builtin(&Builtin::PathAn { n: 3 }, q).unwrap());
        let p = Module::projective(a, &[2]).unwrap();
        let res = omega(&ChainComplex::stalk(&p, 0), 3).unwrap();
        assert!(res.omega.is_zero());
        assert!(res.checks.all_hold(), "{:?}", res.checks);
        assert_eq!(res.q.term_dim(0), 3);
    }

    #[test]
    fn two_term_complex() {
        let q = Field::Rationals;
        let a = Arc::new(make_builtin(&Builtin::TruncatedPoly { n: 2 }, q).unwrap());
        let r = Module::regular(a.clone());
        let c = ChainComplex::new(a.clone(), -1, vec![r.clone(), r], vec![a.left_mult(1).clone()]).unwrap();
        let res = omega(&c, 5).unwrap();
        assert_eq!((res.m, res.n), (-1, 1));
        assert!(res.checks.all_hold(), "{:?}", res.checks);
        // the complex is already a minimal complex of projectives
        assert!(res.omega.is_zero());
    }

    #[test]
    fn exact_complex_has_no_omega() {
        let q = Field::Rationals;
        let a = Arc::new(make_builtin(&Builtin::TruncatedPoly { n: 2 }, q).unwrap());
        let z = ChainComplex::zero(a);
        assert_eq!(omega(&z, 3).unwrap_err(), Error::ZeroComplex);
    }
}
