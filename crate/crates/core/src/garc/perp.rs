use rayon::prelude::*;
use serde::Serialize;

use super::ComplexSummary;
use crate::complex::{derived_hom_bound, ChainComplex, DerivedHom};
use crate::error::{Error, Result};

/// `dim Hom(M, Σ^i N)` over `-W ≤ i ≤ W` and whether it vanishes for `t ≤ |i| ≤ W`.
#[derive(Clone, Debug, Serialize)]
pub struct OrthReport {
    pub left: ComplexSummary,
    pub right: ComplexSummary,
    pub window: i64,
    pub threshold: i64,
    /// Resolution bound used for the left complex.
    pub bound: i64,
    pub dims: Vec<(i64, usize)>,
    pub vanishes_in_window: bool,
    pub nonzero_degrees: Vec<i64>,
    /// Degrees `|i| > window` are never examined.
    pub unverified_beyond: i64,
}

impl OrthReport {
    /// Degrees in `t ≤ |i|` with nonzero dimension.
    pub fn offending(dims: &[(i64, usize)], threshold: i64) -> Vec<i64> {
        dims.iter().filter(|&&(i, d)| i.abs() >= threshold && d > 0).map(|&(i, _)| i).collect()
    }

    pub fn dim(&self, i: i64) -> Option<usize> {
        self.dims.iter().find(|&&(j, _)| j == i).map(|&(_, d)| d)
    }
}

pub fn check_perp(m: &ChainComplex, n: &ChainComplex, window: i64, threshold: i64) -> Result<OrthReport> {
    if !(window >= threshold && threshold >= 0) {
        return Err(Error::InvalidParameter(format!(
            "need window >= threshold >= 0, got window {window}, threshold {threshold}"
        )));
    }
    let bound = derived_hom_bound(m, n, window).unwrap_or(0);
    let dh = DerivedHom::new(m, n, bound)?;
    let dims = (-window..=window)
        .into_par_iter()
        .map(|i| Ok((i, dh.dim(i)?)))
        .collect::<Result<Vec<_>>>()?;
    let nonzero_degrees = OrthReport::offending(&dims, threshold);
    Ok(OrthReport {
        left: ComplexSummary::of(m),
        right: ComplexSummary::of(n),
        window,
        threshold,
        bound,
        vanishes_in_window: nonzero_degrees.is_empty(),
        nonzero_degrees,
        dims,
        unverified_beyond: window,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{make_builtin, Builtin};
    use crate::exactmat::Field;
    use crate::module::Module;

    #[test]
    fn residue_field_is_not_self_orthogonal() {
        let a = Arc::new(make_builtin(&Builtin::TruncatedPoly { n: 2 }, Field::Rationals).unwrap());
        let k = ChainComplex::stalk(&Module::simple(a, 0).unwrap(), 0);
        let rep = check_perp(&k, &k, 5, 1).unwrap();
        assert!(!rep.vanishes_in_window);
        assert_eq!(rep.nonzero_degrees, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn regular_against_anything_vanishes_past_width() {
        let a = Arc::new(make_builtin(&Builtin::TruncatedPoly { n: 2 }, Field::Rationals).unwrap());
        let r = Module::regular(a.clone());
        let c = ChainComplex::new(a.clone(), 1, vec![r.clone(), r.clone()], vec![a.left_mult(1).clone()]).unwrap();
        let rep = check_perp(&ChainComplex::stalk(&r, 0), &c, 6, 3).unwrap();
        assert!(rep.vanishes_in_window, "{:?}", rep.dims);
        let zero = ChainComplex::zero(a);
        assert!(check_perp(&c, &zero, 4, 0).unwrap().vanishes_in_window);
    }

    #[test]
    fn parameters_are_checked() {
        let a = Arc::new(make_builtin(&Builtin::TruncatedPoly { n: 2 }, Field::Rationals).unwrap());
        let z = ChainComplex::zero(a);
        assert!(check_perp(&z, &z, 1, 2).is_err());
    }
}
