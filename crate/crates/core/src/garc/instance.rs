use serde::Serialize;

use super::omega::omega_seeded;
use super::pd::{frobenius_certificate, pd_certificate_with, perfection_from};
use super::{check_perp, ComplexSummary, OmegaSummary, OrthReport, PdCertificate, Perfection, REPORT_SCHEMA};
use crate::complex::ChainComplex;
use crate::error::Result;
use crate::module::Module;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    HypothesesFail,
    Consistent,
    CandidateCounterexample,
    Inconclusive,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::HypothesesFail => "hypotheses_fail",
            Classification::Consistent => "consistent",
            Classification::CandidateCounterexample => "candidate_counterexample",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

/// The orthogonality checks re-run on the syzygy.
#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub window: i64,
    pub threshold: i64,
    /// `false` when the shrunken window is empty and nothing was checked.
    pub checked: bool,
    pub omega_self: Option<OrthReport>,
    pub omega_ring: Option<OrthReport>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GarcReport {
    pub schema: &'static str,
    pub instance: ComplexSummary,
    pub window: i64,
    pub threshold: i64,
    pub bound: i64,
    pub seed: u64,
    pub self_orthogonality: OrthReport,
    pub ring_orthogonality: OrthReport,
    pub hypotheses_hold: bool,
    pub omega: Option<OmegaSummary>,
    pub transfer: Option<TransferReport>,
    pub omega_pd: Option<PdCertificate>,
    pub perfection: Option<Perfection>,
    pub classification: Classification,
}

impl GarcReport {
    /// Whether the syzygy-side checks contradict the hypotheses, which no
    /// correct computation can produce.
    pub fn transfer_violated(&self) -> bool {
        self.transfer.as_ref().is_some_and(|t| !t.holds)
    }
}

/// Window and threshold on the syzygy side for an instance with homology in
/// degrees `m..=m+n`: the shift by `n + 1` and one rotation of the triangle
/// cost `n + 2` degrees, and undoing the normalization costs `|m|` more
/// against the regular module.
pub fn transfer_window(window: i64, threshold: i64, m: i64, n: i64) -> (i64, i64) {
    (window - (n + 2) - m.abs(), threshold.max(1) + m.abs())
}

pub fn check_garc_instance(c: &ChainComplex, window: i64, threshold: i64, bound: i64, seed: u64) -> Result<GarcReport> {
    let ring = ChainComplex::stalk(&Module::regular(c.algebra().clone()), 0);
    let (self_rep, ring_rep) = rayon::join(|| check_perp(c, c, window, threshold), || check_perp(c, &ring, window, threshold));
    let (self_rep, ring_rep) = (self_rep?, ring_rep?);
    let hypotheses_hold = self_rep.vanishes_in_window && ring_rep.vanishes_in_window;
    let mut report = GarcReport {
        schema: REPORT_SCHEMA,
        instance: ComplexSummary::of(c),
        window,
        threshold,
        bound,
        seed,
        self_orthogonality: self_rep,
        ring_orthogonality: ring_rep,
        hypotheses_hold,
        omega: None,
        transfer: None,
        omega_pd: None,
        perfection: None,
        classification: Classification::HypothesesFail,
    };
    if !hypotheses_hold {
        return Ok(report);
    }
    if c.is_exact() {
        report.perfection = Some(Perfection::Perfect { omega_pd: None, representative: None });
        report.classification = Classification::Consistent;
        return Ok(report);
    }

    let om = omega_seeded(c, bound, seed)?;
    let (tw, tt) = transfer_window(window, threshold, om.m, om.n);
    let transfer = if tw >= tt {
        let stalk = ChainComplex::stalk(&om.omega, 0);
        let (s, r) = rayon::join(|| check_perp(&stalk, &stalk, tw, tt), || check_perp(&stalk, &ring, tw, tt));
        let (s, r) = (s?, r?);
        let holds = s.vanishes_in_window && r.vanishes_in_window;
        TransferReport { window: tw, threshold: tt, checked: true, omega_self: Some(s), omega_ring: Some(r), holds }
    } else {
        TransferReport { window: tw, threshold: tt, checked: false, omega_self: None, omega_ring: None, holds: true }
    };

    let frob = frobenius_certificate(c.algebra(), seed);
    let cert = pd_certificate_with(&om.omega, bound.max(0) as usize, seed, Some(&frob))?;
    let perfection = perfection_from(&om, &cert);
    report.classification = if !transfer.holds {
        Classification::Inconclusive
    } else {
        match perfection {
            Perfection::Perfect { .. } => Classification::Consistent,
            Perfection::NotPerfect { .. } => Classification::CandidateCounterexample,
            Perfection::Unknown { .. } => Classification::Inconclusive,
        }
    };
    report.omega = Some(om.summary());
    report.transfer = Some(transfer);
    report.omega_pd = Some(cert);
    report.perfection = Some(perfection);
    Ok(report)
}
