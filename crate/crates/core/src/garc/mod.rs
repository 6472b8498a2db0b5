//! Eventual orthogonality, the syzygy of a complex, perfectness verdicts and
//! the instance checker built on them.

mod instance;
mod omega;
mod pd;
mod perp;
mod schulz;

use serde::Serialize;

pub use instance::{check_garc_instance, transfer_window, Classification, GarcReport, TransferReport};
pub use omega::{omega, OmegaChecks, OmegaResult, OmegaSummary};
pub use pd::{
    frobenius_certificate, is_perfect, pd_certificate, syzygy_periodicity, FrobeniusCertificate, InfiniteReason,
    Perfection, PdCertificate, PdVerdict, Periodicity,
};
pub use perp::{check_perp, OrthReport};
pub use schulz::{schulz_lambdas, schulz_module, schulz_scan, Lambda, ScanEntry, ScanOptions, ScanReport};

use crate::complex::ChainComplex;

pub const REPORT_SCHEMA: &str = "garc-report/1";

/// Shape and homology of a complex, as embedded in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub algebra: String,
    pub low: i64,
    pub high: i64,
    pub term_dims: Vec<usize>,
    /// `(degree, dim H)` for degrees with nonzero homology.
    pub homology: Vec<(i64, usize)>,
}

impl ComplexSummary {
    pub fn of(c: &ChainComplex) -> ComplexSummary {
        ComplexSummary {
            algebra: c.algebra().name().to_string(),
            low: c.low(),
            high: c.high(),
            term_dims: c.terms().iter().map(|t| t.dim()).collect(),
            homology: c.homology_dims().into_iter().filter(|&(_, d)| d > 0).collect(),
        }
    }
}
