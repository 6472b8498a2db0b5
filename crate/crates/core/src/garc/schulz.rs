use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::pd::{frobenius_certificate, FrobeniusCertificate};
use super::REPORT_SCHEMA;
use crate::algebra::{make_builtin, Algebra, Builtin};
use crate::error::{Error, Result};
use crate::exactmat::{root_of_unity_order, Field, Scalar};
use crate::module::{minimal_resolution, Module};

/// Parameter of the cyclic module `Λ/Λ(x − λy)`, with `∞` standing for `Λ/Λy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lambda {
    Finite(Scalar),
    Infinity,
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Finite(s) => write!(f, "{s}"),
            Lambda::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Lambda {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Lambda {
    pub fn parse(field: Field, s: &str) -> Result<Lambda> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Lambda::Infinity),
            other => Ok(Lambda::Finite(field.parse(other)?)),
        }
    }
}

/// The two-dimensional module `Λ/Λ(x − λy)` over the four-dimensional algebra
/// with basis `1, x, y, xy`.
pub fn schulz_module(a: &Arc<Algebra>, lambda: &Lambda) -> Result<Module> {
    if a.dim() != 4 {
        return Err(Error::InvalidParameter("expected the four-dimensional algebra with basis 1, x, y, xy".into()));
    }
    let f = a.field();
    let elt = match lambda {
        Lambda::Finite(l) => vec![f.zero(), f.one(), -l, f.zero()],
        Lambda::Infinity => vec![f.zero(), f.zero(), f.one(), f.zero()],
    };
    Module::cyclic_quotient(a.clone(), &elt)
}

/// The finite sweep of parameters: every residue over a small prime field,
/// otherwise a fixed list of small rationals, followed by `∞`.
pub fn schulz_lambdas(field: Field) -> Vec<Lambda> {
    let mut out: Vec<Lambda> = Vec::new();
    match field {
        Field::Prime { p } if p <= 31 => out.extend((0..p as i64).map(|v| Lambda::Finite(field.from_i64(v)))),
        _ => {
            for (num, den) in [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (-3, 1)] {
                let l = Lambda::Finite(field.from_ratio(num, den).expect("nonzero denominator"));
                if !out.contains(&l) {
                    out.push(l);
                }
            }
        }
    }
    out.push(Lambda::Infinity);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScanOptions {
    pub window: usize,
    pub bound: usize,
    /// Lowest degree that must vanish for a parameter to count as a hit.
    pub start_degree: usize,
    pub seed: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { window: 12, bound: 13, start_degree: 1, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub lambda: Lambda,
    pub dim: usize,
    pub projective: bool,
    /// `dim Ext^i(M, M)` for `i = 1..=window`.
    pub ext_self: Vec<usize>,
    /// `dim Ext^i(M, Λ)` for `i = 1..=window`.
    pub ext_ring: Vec<usize>,
    /// Least `s ≥ 1` with both tables zero on `s..=window`.
    pub vanishing_from: Option<usize>,
    pub passes: bool,
    /// Non-projective over an algebra with a Frobenius certificate.
    pub infinite_pd: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub schema: &'static str,
    pub field: Field,
    pub c: String,
    pub options: ScanOptions,
    pub root_of_unity_order: Option<u64>,
    pub frobenius: Option<FrobeniusCertificate>,
    pub entries: Vec<ScanEntry>,
    pub hits: Vec<Lambda>,
    pub notes: Vec<String>,
}

impl ScanReport {
    pub fn hit_entries(&self) -> impl Iterator<Item = &ScanEntry> {
        self.entries.iter().filter(|e| e.passes)
    }
}

pub fn schulz_scan(field: Field, c: &Scalar, opts: &ScanOptions) -> Result<ScanReport> {
    if c.is_zero() {
        return Err(Error::InvalidParameter("c must be nonzero".into()));
    }
    if c.field() != field {
        return Err(Error::FieldMismatch);
    }
    if opts.bound < opts.window + 1 {
        return Err(Error::BoundTooSmall { needed: opts.window as i64 + 1, given: opts.bound as i64 });
    }
    let a = Arc::new(make_builtin(&Builtin::Schulz { c: c.clone() }, field)?);
    let regular = Module::regular(a.clone());
    let frobenius = frobenius_certificate(&a, opts.seed);
    let root = root_of_unity_order(c);

    let entries = schulz_lambdas(field)
        .into_par_iter()
        .map(|lambda| -> Result<ScanEntry> {
            let m = schulz_module(&a, &lambda)?;
            let res = minimal_resolution(&m, opts.bound)?;
            let projective = res.projective_dimension() == Some(0);
            let ext_self = res.ext_dims(&m, opts.window)?[1..].to_vec();
            let ext_ring = res.ext_dims(&regular, opts.window)?[1..].to_vec();
            let last_nonzero = (1..=opts.window).rev().find(|&i| ext_self[i - 1] > 0 || ext_ring[i - 1] > 0);
            let vanishing_from = match last_nonzero {
                Some(i) if i == opts.window => None,
                Some(i) => Some(i + 1),
                None => Some(1),
            };
            let passes = !projective && vanishing_from.is_some_and(|s| s <= opts.start_degree.max(1));
            Ok(ScanEntry {
                lambda,
                dim: m.dim(),
                projective,
                ext_self,
                ext_ring,
                vanishing_from,
                passes,
                infinite_pd: frobenius.is_some() && !projective,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let hits: Vec<Lambda> = entries.iter().filter(|e| e.passes).map(|e| e.lambda.clone()).collect();
    let mut notes = Vec::new();
    if let Some(r) = root {
        notes.push(format!("c is a root of unity of order {r}; vanishing cannot be eventual-certified"));
    }
    if hits.is_empty() {
        notes.push(format!(
            "no parameter in the sweep has vanishing Ext against M and the algebra in degrees {}..={}",
            opts.start_degree.max(1),
            opts.window
        ));
    }
    Ok(ScanReport {
        schema: REPORT_SCHEMA,
        field,
        c: c.to_string(),
        options: *opts,
        root_of_unity_order: root,
        frobenius,
        entries,
        hits,
        notes,
    })
}
