use std::sync::Arc;

use serde::Serialize;

use super::omega::omega_seeded;
use crate::algebra::Algebra;
use crate::complex::ChainComplex;
use crate::error::Result;
use crate::exactmat::Matrix;
use crate::module::{iso_test, minimal_resolution, IsoVerdict, Module, Resolution, DEFAULT_ATTEMPTS};

/// A certified isomorphism `Ω^a X ≅ Ω^b X` with `Ω^a X ≠ 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Periodicity {
    pub a: usize,
    pub b: usize,
    pub period: usize,
    /// `Ω^a X → Ω^b X`
    pub iso: Matrix,
}

/// An isomorphism `Λ ≅ D(Λ^op)` of left modules.
#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusCertificate {
    pub iso: Matrix,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum InfiniteReason {
    SyzygyPeriodicity(Periodicity),
    SelfInjectiveAndNonProjective(FrobeniusCertificate),
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PdVerdict {
    /// `pd = -1` denotes the zero module.
    FinitePd { pd: i64, betti: Vec<usize> },
    InfinitePd(InfiniteReason),
    LowerBoundOnly { bound: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct PdCertificate {
    pub module_dim: usize,
    pub bound: usize,
    pub verdict: PdVerdict,
}

impl PdCertificate {
    pub fn finite_pd(&self) -> Option<i64> {
        match self.verdict {
            PdVerdict::FinitePd { pd, .. } => Some(pd),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.verdict, PdVerdict::InfinitePd(_))
    }
}

fn periodicity_in(res: &Resolution, seed: u64) -> Result<Option<Periodicity>> {
    if res.complete {
        return Ok(None);
    }
    let syz = &res.syzygies;
    for b in 1..syz.len() {
        for a in 0..b {
            if syz[a].is_zero() || syz[a].dim() != syz[b].dim() {
                continue;
            }
            if let IsoVerdict::Yes(f) = iso_test(&syz[a], &syz[b], seed, DEFAULT_ATTEMPTS)? {
                return Ok(Some(Periodicity { a, b, period: b - a, iso: f.matrix().clone() }));
            }
        }
    }
    Ok(None)
}

/// The least `(a, b)`, ordered by `b` then `a`, with `Ω^a x ≅ Ω^b x ≠ 0` and `b ≤ bound + 1`.
pub fn syzygy_periodicity(x: &Module, bound: usize, seed: u64) -> Result<Option<Periodicity>> {
    periodicity_in(&minimal_resolution(x, bound)?, seed)
}

pub fn frobenius_certificate(a: &Arc<Algebra>, seed: u64) -> Option<FrobeniusCertificate> {
    let regular = Module::regular(a.clone());
    let dual = Module::regular(Arc::new(a.opposite())).dual().over(a).ok()?;
    match iso_test(&regular, &dual, seed, DEFAULT_ATTEMPTS).ok()? {
        IsoVerdict::Yes(f) => Some(FrobeniusCertificate { iso: f.matrix().clone() }),
        _ => None,
    }
}

pub fn pd_certificate(x: &Module, bound: usize, seed: u64) -> Result<PdCertificate> {
    pd_certificate_with(x, bound, seed, None)
}

pub(crate) fn pd_certificate_with(
    x: &Module,
    bound: usize,
    seed: u64,
    frobenius: Option<&Option<FrobeniusCertificate>>,
) -> Result<PdCertificate> {
    let res = minimal_resolution(x, bound)?;
    let verdict = if let Some(pd) = res.projective_dimension() {
        PdVerdict::FinitePd { pd, betti: res.betti[..=(pd.max(0) as usize)].to_vec() }
    } else if let Some(per) = periodicity_in(&res, seed)? {
        PdVerdict::InfinitePd(InfiniteReason::SyzygyPeriodicity(per))
    } else {
        let computed;
        let frob = match frobenius {
            Some(f) => f,
            None => {
                computed = frobenius_certificate(x.algebra(), seed);
                &computed
            }
        };
        match frob {
            Some(cert) => PdVerdict::InfinitePd(InfiniteReason::SelfInjectiveAndNonProjective(cert.clone())),
            None => PdVerdict::LowerBoundOnly { bound },
        }
    };
    Ok(PdCertificate { module_dim: x.dim(), bound, verdict })
}

/// Whether a complex lies in the thick closure of the regular module.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Perfection {
    /// `representative` is the degree range of a bounded complex of projectives
    /// quasi-isomorphic to the input; `omega_pd` is `None` for exact inputs.
    Perfect { omega_pd: Option<i64>, representative: Option<(i64, i64)> },
    NotPerfect { certificate: InfiniteReason },
    Unknown { bound: usize },
}

impl Perfection {
    pub fn label(&self) -> &'static str {
        match self {
            Perfection::Perfect { .. } => "perfect",
            Perfection::NotPerfect { .. } => "not_perfect",
            Perfection::Unknown { .. } => "unknown",
        }
    }

    /// Width of the perfect representative, when one is known.
    pub fn representative_width(&self) -> Option<i64> {
        match self {
            Perfection::Perfect { representative: Some((a, b)), .. } => Some(b - a),
            Perfection::Perfect { representative: None, .. } => Some(-1),
            _ => None,
        }
    }
}

/// Reduces perfectness of `c` to the projective dimension of its syzygy.
pub fn is_perfect(c: &ChainComplex, bound: i64, seed: u64) -> Result<Perfection> {
    if c.is_exact() {
        return Ok(Perfection::Perfect { omega_pd: None, representative: None });
    }
    let om = omega_seeded(c, bound, seed)?;
    let cert = pd_certificate(&om.omega, bound.max(0) as usize, seed)?;
    Ok(perfection_from(&om, &cert))
}

pub(crate) fn perfection_from(om: &super::OmegaResult, cert: &PdCertificate) -> Perfection {
    match &cert.verdict {
        PdVerdict::FinitePd { pd, .. } => {
            let q_low = om.q.support().map_or(om.n + 1, |(a, _)| a);
            let top = if *pd < 0 { om.q.support().map_or(q_low, |(_, b)| b) } else { om.n + 1 + pd };
            Perfection::Perfect { omega_pd: Some(*pd), representative: Some((q_low + om.m, top + om.m)) }
        }
        PdVerdict::InfinitePd(reason) => Perfection::NotPerfect { certificate: reason.clone() },
        PdVerdict::LowerBoundOnly { bound } => Perfection::Unknown { bound: *bound },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_builtin, Builtin};
    use crate::exactmat::Field;

    fn alg(b: Builtin, f: Field) -> Arc<Algebra> {
        Arc::new(make_builtin(&b, f).unwrap())
    }

    #[test]
    fn residue_field_of_dual_numbers_is_periodic() {
        let a = alg(Builtin::TruncatedPoly { n: 2 }, Field::Rationals);
        let k = Module::simple(a, 0).unwrap();
        let p = syzygy_periodicity(&k, 4, 0).unwrap().unwrap();
        assert_eq!((p.a, p.b), (0, 1));
        let f2 = Field::prime(2).unwrap();
        let g = alg(Builtin::CyclicGroup { n: 2 }, f2);
        let p = syzygy_periodicity(&Module::simple(g, 0).unwrap(), 4, 0).unwrap().unwrap();
        assert_eq!(p.period, 1);
    }

    #[test]
    fn projectives_are_not_periodic() {
        let a = alg(Builtin::TruncatedPoly { n: 2 }, Field::Rationals);
        assert!(syzygy_periodicity(&Module::regular(a), 4, 0).unwrap().is_none());
    }

    #[test]
    fn pd_verdicts() {
        let q = Field::Rationals;
        let path = alg(Builtin::PathAn { n: 3 }, q);
        let source = Module::simple(path.clone(), 2).unwrap();
        assert_eq!(pd_certificate(&source, 4, 0).unwrap().finite_pd(), Some(1));
        assert_eq!(pd_certificate(&Module::regular(path.clone()), 4, 0).unwrap().finite_pd(), Some(0));
        let tp = alg(Builtin::TruncatedPoly { n: 2 }, q);
        let cert = pd_certificate(&Module::simple(tp, 0).unwrap(), 4, 0).unwrap();
        assert!(matches!(cert.verdict, PdVerdict::InfinitePd(InfiniteReason::SyzygyPeriodicity(_))));
    }

    #[test]
    fn frobenius_certificates() {
        let q = Field::Rationals;
        assert!(frobenius_certificate(&alg(Builtin::Schulz { c: q.from_i64(2) }, q), 0).is_some());
        assert!(frobenius_certificate(&alg(Builtin::TruncatedPoly { n: 3 }, q), 0).is_some());
        assert!(frobenius_certificate(&alg(Builtin::PathAn { n: 2 }, q), 0).is_none());
    }

    #[test]
    fn perfectness() {
        let q = Field::Rationals;
        let tp = alg(Builtin::TruncatedPoly { n: 2 }, q);
        let k = ChainComplex::stalk(&Module::simple(tp.clone(), 0).unwrap(), 0);
        assert!(matches!(is_perfect(&k, 4, 0).unwrap(), Perfection::NotPerfect { .. }));
        let r = ChainComplex::stalk(&Module::regular(tp), 0);
        assert!(matches!(is_perfect(&r, 4, 0).unwrap(), Perfection::Perfect { .. }));
        let path = alg(Builtin::PathAn { n: 3 }, q);
        let s = ChainComplex::stalk(&Module::simple(path, 2).unwrap(), 3);
        let v = is_perfect(&s, 5, 0).unwrap();
        assert_eq!(v.representative_width(), Some(1), "{v:?}");
    }
}
