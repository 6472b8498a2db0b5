//! JSON file formats for algebras, modules, complexes and resolutions.
//!
//! Scalars are strings (`"a/b"` over ℚ, a residue over 𝔽_p) and matrices are
//! arrays of rows. An algebra may be given explicitly, by a builtin name, or
//! (inside module and complex files) as a path relative to the referring file.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{make_builtin, Algebra, AlgebraParts, Builtin};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::exactmat::{Field, Matrix, Scalar};
use crate::module::{Module, Resolution};

pub type MatrixRows = Vec<Vec<String>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: Field,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    /// Sparse `[i, j, k, value]` entries of the product table.
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical_basis: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinFile {
    pub builtin: String,
    pub field: Field,
    #[serde(default)]
    pub param: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Builtin(BuiltinFile),
    Explicit(AlgebraFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(PathBuf),
    Inline(Box<AlgebraSpec>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraRef>,
    pub dim: usize,
    pub action: Vec<MatrixRows>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub algebra: AlgebraRef,
    pub low: i64,
    pub high: i64,
    pub terms: Vec<ModuleFile>,
    pub differentials: Vec<MatrixRows>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionFile {
    pub bound: usize,
    pub betti: Vec<usize>,
    pub complete: bool,
    pub minimal: bool,
    /// Idempotent indices of the summands of each `P_k`.
    pub projectives: Vec<Vec<usize>>,
    pub augmentation: MatrixRows,
    pub differentials: Vec<MatrixRows>,
}

fn parse_vec(field: Field, v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| field.parse(s)).collect()
}

pub fn parse_matrix(field: Field, rows: &MatrixRows, expect_rows: usize, expect_cols: usize) -> Result<Matrix> {
    if rows.len() != expect_rows || rows.iter().any(|r| r.len() != expect_cols) {
        return Err(Error::Parse(format!("expected a {expect_rows}x{expect_cols} matrix")));
    }
    let parsed = rows.iter().map(|r| parse_vec(field, r)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, expect_cols, parsed)
}

pub fn matrix_rows(m: &Matrix) -> MatrixRows {
    (0..m.rows()).map(|r| m.row(r).iter().map(Scalar::to_string).collect()).collect()
}

fn vec_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

impl AlgebraFile {
    pub fn from_algebra(a: &Algebra) -> AlgebraFile {
        let d = a.dim();
        let mut structure_constants = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = a.structure_constant(i, j, k);
                    if !c.is_zero() {
                        structure_constants.push((i, j, k, c.to_string()));
                    }
                }
            }
        }
        AlgebraFile {
            field: a.field(),
            name: (!a.name().is_empty()).then(|| a.name().to_string()),
            dim: d,
            labels: a.labels().to_vec(),
            unit: vec_strings(a.unit()),
            structure_constants,
            idempotents: a.idempotents().map(|e| e.iter().map(|v| vec_strings(v)).collect()),
            radical_basis: a.radical_basis().map(|r| (0..r.rows()).map(|i| vec_strings(r.row(i))).collect()),
            generators: a.generators().iter().map(|v| vec_strings(v)).collect(),
        }
    }

    /// The presentation without validation, so that broken tables can be diagnosed.
    pub fn to_parts(&self) -> Result<AlgebraParts> {
        let (f, d) = (self.field, self.dim);
        let mut constants = vec![f.zero(); d * d * d];
        for (i, j, k, v) in &self.structure_constants {
            if *i >= d || *j >= d || *k >= d {
                return Err(Error::Parse(format!("structure constant index ({i}, {j}, {k}) out of range")));
            }
            constants[(i * d + j) * d + k] = f.parse(v)?;
        }
        let vecs = |v: &Option<Vec<Vec<String>>>| -> Result<Option<Vec<Vec<Scalar>>>> {
            v.as_ref().map(|rows| rows.iter().map(|r| parse_vec(f, r)).collect()).transpose()
        };
        if self.unit.len() != d {
            return Err(Error::Parse(format!("unit has {} entries, dim is {d}", self.unit.len())));
        }
        Ok(AlgebraParts {
            field: f,
            labels: self.labels.clone(),
            structure_constants: constants,
            unit: parse_vec(f, &self.unit)?,
            idempotents: vecs(&self.idempotents)?,
            radical_basis: vecs(&self.radical_basis)?,
            generators: self.generators.iter().map(|r| parse_vec(f, r)).collect::<Result<_>>()?,
            name: self.name.clone().unwrap_or_default(),
        })
    }
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<Algebra> {
        match self {
            AlgebraSpec::Builtin(b) => make_builtin(&Builtin::parse(&b.builtin, b.field, &b.param)?, b.field),
            AlgebraSpec::Explicit(f) => Algebra::new(f.to_parts()?),
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn resolve_algebra(r: &AlgebraRef, base: &Path) -> Result<Arc<Algebra>> {
    match r {
        AlgebraRef::Path(p) => load_algebra(&base.join(p)),
        AlgebraRef::Inline(spec) => Ok(Arc::new(spec.build()?)),
    }
}

/// Reads the raw presentation of an algebra file without validating it.
pub fn load_algebra_parts(path: &Path) -> Result<AlgebraParts> {
    match read_json::<AlgebraSpec>(path)? {
        AlgebraSpec::Builtin(b) => Ok(AlgebraSpec::Builtin(b).build()?.to_parts()),
        AlgebraSpec::Explicit(f) => f.to_parts(),
    }
}

pub fn load_algebra(path: &Path) -> Result<Arc<Algebra>> {
    Ok(Arc::new(read_json::<AlgebraSpec>(path)?.build()?))
}

impl ModuleFile {
    pub fn from_module(m: &Module, algebra: Option<AlgebraRef>) -> ModuleFile {
        ModuleFile { algebra, dim: m.dim(), action: m.action().iter().map(matrix_rows).collect() }
    }

    /// Builds the module, over `fallback` unless the file names its own algebra.
    pub fn build(&self, fallback: Option<&Arc<Algebra>>, base: &Path) -> Result<Module> {
        let alg = match (&self.algebra, fallback) {
            (Some(r), _) => resolve_algebra(r, base)?,
            (None, Some(a)) => a.clone(),
            (None, None) => return Err(Error::Parse("module file does not name its algebra".into())),
        };
        if self.action.len() != alg.dim() {
            return Err(Error::Parse(format!(
                "{} action matrices for an algebra of dimension {}",
                self.action.len(),
                alg.dim()
            )));
        }
        let action = self
            .action
            .iter()
            .map(|m| parse_matrix(alg.field(), m, self.dim, self.dim))
            .collect::<Result<Vec<_>>>()?;
        if self.dim == 0 {
            return Ok(Module::zero(alg));
        }
        Module::new(alg, action)
    }
}

pub fn load_module(path: &Path, fallback: Option<&Arc<Algebra>>) -> Result<Module> {
    read_json::<ModuleFile>(path)?.build(fallback, &base_dir(path))
}

impl ComplexFile {
    pub fn from_complex(c: &ChainComplex, algebra: AlgebraRef) -> ComplexFile {
        ComplexFile {
            algebra,
            low: c.low(),
            high: c.high(),
            terms: c.terms().iter().map(|t| ModuleFile::from_module(t, None)).collect(),
            differentials: c.differentials().iter().map(matrix_rows).collect(),
        }
    }

    pub fn build(&self, base: &Path) -> Result<ChainComplex> {
        let alg = resolve_algebra(&self.algebra, base)?;
        let expected = (self.high - self.low + 1).max(0) as usize;
        if self.terms.len() != expected {
            return Err(Error::Parse(format!("degrees {}..={} need {expected} terms", self.low, self.high)));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| t.build(Some(&alg), base))
            .collect::<Result<Vec<_>>>()?;
        if self.differentials.len() != expected.saturating_sub(1) {
            return Err(Error::Parse(format!("{expected} terms need {} differentials", expected.saturating_sub(1))));
        }
        let differentials = self
            .differentials
            .iter()
            .enumerate()
            .map(|(j, d)| parse_matrix(alg.field(), d, terms[j].dim(), terms[j + 1].dim()))
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(alg, self.low, terms, differentials)
    }
}

pub fn load_complex(path: &Path) -> Result<ChainComplex> {
    read_json::<ComplexFile>(path)?.build(&base_dir(path))
}

/// An inline reference to `a`, serialized explicitly.
pub fn inline_algebra(a: &Algebra) -> AlgebraRef {
    AlgebraRef::Inline(Box::new(AlgebraSpec::Explicit(AlgebraFile::from_algebra(a))))
}

impl ResolutionFile {
    pub fn from_resolution(r: &Resolution) -> ResolutionFile {
        ResolutionFile {
            bound: r.bound,
            betti: r.betti.clone(),
            complete: r.complete,
            minimal: r.minimal,
            projectives: r.projectives.iter().map(|p| p.summands().unwrap_or_default().to_vec()).collect(),
            augmentation: matrix_rows(&r.augmentation),
            differentials: r.differentials.iter().map(matrix_rows).collect(),
        }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate;

    #[test]
    fn algebra_round_trip() {
        let q = Field::Rationals;
        let a = make_builtin(&Builtin::Schulz { c: q.from_i64(2) }, q).unwrap();
        let text = serde_json::to_string(&AlgebraSpec::Explicit(AlgebraFile::from_algebra(&a))).unwrap();
        assert!(text.contains(r#"[2,1,3,"1/2"]"#), "{text}");
        let back: AlgebraSpec = serde_json::from_str(&text).unwrap();
        let b = back.build().unwrap();
        assert_eq!(a, b);
        assert!(validate(&b).is_empty());
    }

    #[test]
    fn builtin_spec() {
        let spec: AlgebraSpec =
            serde_json::from_str(r#"{"builtin": "truncated_poly", "field": {"kind": "Fp", "p": 5}, "param": "3"}"#).unwrap();
        let a = spec.build().unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.field(), Field::prime(5).unwrap());
    }

    #[test]
    fn module_and_complex_round_trip() {
        let q = Field::Rationals;
        let a = Arc::new(make_builtin(&Builtin::TruncatedPoly { n: 2 }, q).unwrap());
        let r = Module::regular(a.clone());
        let c = ChainComplex::new(a.clone(), 2, vec![r.clone(), r.clone()], vec![a.left_mult(1).clone()]).unwrap();
        let file = ComplexFile::from_complex(&c, inline_algebra(&a));
        let json = serde_json::to_string(&file).unwrap();
        let parsed: ComplexFile = serde_json::from_str(&json).unwrap();
        let back = parsed.build(Path::new(".")).unwrap();
        assert_eq!(back.low(), 2);
        assert_eq!(back.homology_dims(), c.homology_dims());

        let mf = ModuleFile::from_module(&r, Some(inline_algebra(&a)));
        let m = serde_json::from_str::<ModuleFile>(&serde_json::to_string(&mf).unwrap()).unwrap().build(None, Path::new(".")).unwrap();
        assert_eq!(m.action(), r.action());
    }

    #[test]
    fn malformed_inputs() {
        let bad: std::result::Result<ModuleFile, _> = serde_json::from_str(r#"{"dim": 1, "action": [[["x"]]], "extra": 1}"#);
        assert!(bad.is_err());
        let q = Field::Rationals;
        let a = Arc::new(make_builtin(&Builtin::TruncatedPoly { n: 2 }, q).unwrap());
        let mf: ModuleFile = serde_json::from_str(r#"{"dim": 1, "action": [[["1/1"]], [["1/1"]]]}"#).unwrap();
        assert!(matches!(mf.build(Some(&a), Path::new(".")), Err(Error::InvalidModule(_))));
        let mf: ModuleFile = serde_json::from_str(r#"{"dim": 1, "action": [[["1/0"]], [["0"]]]}"#).unwrap();
        assert!(mf.build(Some(&a), Path::new(".")).is_err());
    }
}
