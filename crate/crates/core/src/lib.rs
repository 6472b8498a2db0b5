//! Exact homological algebra over finite-dimensional algebras: Ext groups,
//! projective resolutions of modules and bounded complexes, derived Hom,
//! syzygies of complexes and perfectness verdicts.
//!
//! Everything is computed exactly over ℚ or a prime field 𝔽_p.

pub mod algebra;
pub mod complex;
pub mod error;
pub mod exactmat;
pub mod garc;
pub mod io;
pub mod module;

pub use algebra::{make_builtin, validate, Algebra, AlgebraParts, Builtin, Diagnostic};
pub use complex::{cone, derived_hom_dim, derived_hom_dims, resolve, ChainComplex, ChainMap, ResolvedComplex};
pub use error::{Error, Result};
pub use exactmat::{Field, Matrix, Scalar, Subspace};
pub use garc::{
    check_garc_instance, check_perp, frobenius_certificate, is_perfect, omega, pd_certificate, schulz_scan,
    syzygy_periodicity, Classification, GarcReport, OmegaResult, OrthReport, PdCertificate, Perfection, ScanReport,
};
pub use module::{
    dual_module, exactness_package, ext_dim, hom_space, iso_test, minimal_resolution, projective_cover,
    regular_module, IsoVerdict, Module, ModuleHom, Resolution,
};
