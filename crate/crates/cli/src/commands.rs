use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use garc_core::garc::{
    check_garc_instance, check_perp, is_perfect, omega, schulz_module, schulz_scan, Classification, GarcReport,
    Lambda, OmegaChecks, OmegaSummary, OrthReport, Perfection, ScanOptions, ScanReport,
};
use garc_core::io::{
    inline_algebra, load_algebra, load_algebra_parts, load_complex, load_module, matrix_rows, write_json,
    AlgebraFile, AlgebraSpec, BuiltinFile, ComplexFile, MatrixRows, ModuleFile, ResolutionFile,
};
use garc_core::{
    derived_hom_dims, make_builtin, minimal_resolution, validate, Algebra, Builtin, ChainComplex, Field, Module,
};
use serde::Serialize;

use crate::report::{dims_line, exit, Envelope, Internal, Invocation, Sink, Usage};

pub struct Ctx<'a> {
    pub sink: Sink<'a>,
    pub seed: u64,
}

impl Ctx<'_> {
    fn finish<T: Serialize>(&self, command: &'static str, code: u8, result: T) -> Result<u8> {
        self.sink.emit(&Envelope::new(command, Invocation::capture(self.seed), code, result))?;
        Ok(code)
    }
}

#[derive(Serialize)]
struct ValidateResult {
    path: PathBuf,
    dim: usize,
    valid: bool,
    diagnostics: Vec<String>,
}

pub fn alg_validate(ctx: &Ctx, path: &Path) -> Result<u8> {
    let parts = load_algebra_parts(path)?;
    let a = Algebra::from_parts_unchecked(parts)?;
    let diagnostics: Vec<String> = validate(&a).iter().map(ToString::to_string).collect();
    let valid = diagnostics.is_empty();
    if ctx.sink.human() {
        println!("{}: dimension {} over {:?}", path.display(), a.dim(), a.field());
        if valid {
            println!("valid");
        }
        for d in &diagnostics {
            println!("  {d}");
        }
    }
    let code = if valid { exit::OK } else { exit::DATA };
    ctx.finish("alg-validate", code, ValidateResult { path: path.to_path_buf(), dim: a.dim(), valid, diagnostics })
}

#[derive(Serialize)]
struct ExtRow {
    degree: usize,
    module_path: usize,
    derived_path: usize,
    agree: bool,
}

#[derive(Serialize)]
struct ExtTable {
    max_degree: usize,
    resolution_bound: usize,
    betti: Vec<usize>,
    rows: Vec<ExtRow>,
    agree: bool,
}

fn load_pair(algebra: Option<&Path>, x: &Path, y: &Path) -> Result<(Module, Module)> {
    let fallback = algebra.map(load_algebra).transpose()?;
    let mx = load_module(x, fallback.as_ref()).with_context(|| format!("loading {}", x.display()))?;
    let my = load_module(y, Some(mx.algebra())).with_context(|| format!("loading {}", y.display()))?;
    let my = my.over(mx.algebra()).context("the two modules live over different algebras")?;
    Ok((mx, my))
}

pub fn ext_table(ctx: &Ctx, algebra: Option<&Path>, x: &Path, y: &Path, max_degree: usize) -> Result<u8> {
    let (mx, my) = load_pair(algebra, x, y)?;
    let bound = max_degree + 1;
    let res = minimal_resolution(&mx, bound)?;
    let module_path = res.ext_dims(&my, max_degree)?;
    let derived = derived_hom_dims(
        &ChainComplex::stalk(&mx, 0),
        &ChainComplex::stalk(&my, 0),
        0..=max_degree as i64,
    )?;
    let rows: Vec<ExtRow> = module_path
        .iter()
        .zip(&derived)
        .enumerate()
        .map(|(i, (&a, &(_, b)))| ExtRow { degree: i, module_path: a, derived_path: b, agree: a == b })
        .collect();
    let agree = rows.iter().all(|r| r.agree);
    if ctx.sink.human() {
        println!("{:>6} {:>8} {:>8}", "i", "module", "derived");
        for r in &rows {
            let flag = if r.agree { "" } else { "  MISMATCH" };
            println!("{:>6} {:>8} {:>8}{flag}", r.degree, r.module_path, r.derived_path);
        }
    }
    let table = ExtTable { max_degree, resolution_bound: bound, betti: res.betti.clone(), rows, agree };
    let code = if agree { exit::OK } else { exit::INTERNAL };
    ctx.finish("ext-table", code, table)?;
    if !agree {
        return Err(Internal("module and derived computations of Ext disagree".into()).into());
    }
    Ok(code)
}

#[derive(Serialize)]
struct ResolvedFile {
    bound: i64,
    minimal: bool,
    betti: Vec<(i64, usize)>,
    projective: ComplexFile,
    /// `(k, ε_k)` for each degree of the projective complex.
    augmentation: Vec<(i64, MatrixRows)>,
}

#[derive(Serialize)]
struct OmegaReport {
    artifacts: Vec<PathBuf>,
    omega: OmegaSummary,
    /// Resolution of the syzygy as a module, in the same format as the module resolutions.
    omega_resolution: ResolutionFile,
}

pub fn resolve_omega(ctx: &Ctx, complex: &Path, bound: i64, dir: &Path) -> Result<u8> {
    let c = load_complex(complex)?;
    let om = omega(&c, bound)?;
    let alg = inline_algebra(c.algebra());
    let p = &om.resolved.projective;
    let resolved = ResolvedFile {
        bound: om.resolved.bound,
        minimal: om.resolved.minimal,
        betti: om.resolved.betti(),
        projective: ComplexFile::from_complex(p, alg.clone()),
        augmentation: (p.low()..=p.high()).map(|k| (k, matrix_rows(&om.resolved.augmentation.component(k)))).collect(),
    };
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let paths = [dir.join("resolution.json"), dir.join("omega.json"), dir.join("q_complex.json")];
    write_json(&paths[0], &resolved)?;
    write_json(&paths[1], &ModuleFile::from_module(&om.omega, Some(alg.clone())))?;
    write_json(&paths[2], &ComplexFile::from_complex(&om.q, alg))?;
    let omega_resolution = ResolutionFile::from_resolution(&minimal_resolution(&om.omega, bound.max(1) as usize)?);

    let summary = om.summary();
    if ctx.sink.human() {
        println!("homology in degrees {}..={} (width n = {})", om.m, om.m + om.n, om.n);
        println!("omega: dimension {}, placed in degree {}", om.omega.dim(), om.placement);
        print_checks(&summary.checks);
        for p in &paths {
            println!("wrote {}", p.display());
        }
    }
    let code = if summary.checks.all_hold() { exit::OK } else { exit::INTERNAL };
    ctx.finish("resolve-omega", code, OmegaReport { artifacts: paths.to_vec(), omega: summary, omega_resolution })
}

fn print_checks(c: &OmegaChecks) {
    let mark = |b: bool| if b { "ok" } else { "FAILED" };
    println!("  q termwise projective        {}", mark(c.q_termwise_projective));
    println!("  differentials square to zero {}", mark(c.differentials_square_to_zero));
    println!("  resolution is exact cone     {}", mark(c.resolution_is_quasi_isomorphism));
    println!("  truncation sequence exact    {}", mark(c.truncation_sequence_exact));
    println!("  omega is the cokernel        {}", mark(c.omega_is_cokernel));
    println!("  tail homology iso to omega   {}", c.tail_homology_iso);
    println!("  tail exact above n+1         {}", mark(c.tail_exact_above));
}

fn print_orth(label: &str, r: &OrthReport) {
    let dims: Vec<usize> = r.dims.iter().map(|&(_, d)| d).collect();
    println!("{label}: degrees {}..={}", -r.window, r.window);
    println!("  {}", dims_line(&dims));
    if r.vanishes_in_window {
        println!("  vanishes for {} <= |i| <= {}", r.threshold, r.window);
    } else {
        println!("  nonzero at {:?}", r.nonzero_degrees);
    }
}

#[derive(Serialize)]
struct PerpResult {
    reports: Vec<OrthReport>,
    vanishes: bool,
}

pub fn perp_check(ctx: &Ctx, left: &Path, right: Option<&Path>, window: i64, threshold: i64) -> Result<u8> {
    let l = load_complex(left)?;
    let reports = match right {
        Some(r) => vec![check_perp(&l, &load_complex(r)?, window, threshold)?],
        None => {
            let ring = ChainComplex::stalk(&Module::regular(l.algebra().clone()), 0);
            vec![check_perp(&l, &l, window, threshold)?, check_perp(&l, &ring, window, threshold)?]
        }
    };
    if ctx.sink.human() {
        let labels: &[&str] = if right.is_some() { &["Hom(M, Σ^i N)"] } else { &["Hom(M, Σ^i M)", "Hom(M, Σ^i R)"] };
        for (label, r) in labels.iter().zip(&reports) {
            print_orth(label, r);
        }
    }
    let vanishes = reports.iter().all(|r| r.vanishes_in_window);
    ctx.finish("perp-check", exit::OK, PerpResult { reports, vanishes })
}

pub fn perfect_check(ctx: &Ctx, complex: &Path, bound: i64) -> Result<u8> {
    let c = load_complex(complex)?;
    let verdict = is_perfect(&c, bound, ctx.seed)?;
    if ctx.sink.human() {
        print_perfection(&verdict);
    }
    let code = match verdict {
        Perfection::Unknown { .. } => exit::INCONCLUSIVE,
        _ => exit::OK,
    };
    ctx.finish("perfect-check", code, verdict)
}

fn print_perfection(p: &Perfection) {
    match p {
        Perfection::Perfect { omega_pd, representative } => {
            print!("perfect");
            if let Some(pd) = omega_pd {
                print!(", pd(omega) = {pd}");
            }
            if let Some((a, b)) = representative {
                print!(", projective representative in degrees {a}..={b}");
            }
            println!();
        }
        Perfection::NotPerfect { .. } => println!("not perfect: omega has certified infinite projective dimension"),
        Perfection::Unknown { bound } => println!("unknown: no certificate through bound {bound}"),
    }
}

pub fn garc_exit(rep: &GarcReport) -> u8 {
    if rep.transfer_violated() {
        return exit::INTERNAL;
    }
    match rep.classification {
        Classification::HypothesesFail | Classification::Consistent => exit::OK,
        Classification::CandidateCounterexample => exit::CANDIDATE,
        Classification::Inconclusive => exit::INCONCLUSIVE,
    }
}

pub fn garc_check(ctx: &Ctx, complex: &Path, window: i64, threshold: i64, bound: Option<i64>) -> Result<u8> {
    let c = load_complex(complex)?;
    let bound = bound.unwrap_or(window + 1);
    let rep = check_garc_instance(&c, window, threshold, bound, ctx.seed)?;
    if ctx.sink.human() {
        print_orth("Hom(M, Σ^i M)", &rep.self_orthogonality);
        print_orth("Hom(M, Σ^i R)", &rep.ring_orthogonality);
        if let Some(p) = &rep.perfection {
            print_perfection(p);
        }
        if let Some(t) = &rep.transfer {
            let state = if !t.checked { "not checked (window too small)" } else if t.holds { "holds" } else { "VIOLATED" };
            println!("omega-side window {} threshold {}: {state}", t.window, t.threshold);
        }
        println!("classification: {}", rep.classification.as_str());
    }
    let code = garc_exit(&rep);
    ctx.finish("garc-check", code, rep)?;
    if code == exit::INTERNAL {
        return Err(Internal("orthogonality failed to transfer to the syzygy".into()).into());
    }
    Ok(code)
}

#[derive(Serialize)]
struct DemoResult {
    scan: ScanReport,
    /// Instance checks for every hit, at threshold equal to the start degree.
    hit_checks: Vec<GarcReport>,
}

pub fn schulz_demo(ctx: &Ctx, field: Field, c: &str, opts: ScanOptions) -> Result<u8> {
    let c = field.parse(c).map_err(|e| Usage(format!("parameter c: {e}")))?;
    let scan = schulz_scan(field, &c, &opts)?;
    let a = Arc::new(make_builtin(&Builtin::Schulz { c: c.clone() }, field)?);
    let hit_checks = scan
        .hits
        .iter()
        .map(|l| {
            let m = ChainComplex::stalk(&schulz_module(&a, l)?, 0);
            check_garc_instance(&m, opts.window as i64, opts.start_degree.max(1) as i64, opts.bound as i64, opts.seed)
        })
        .collect::<garc_core::Result<Vec<_>>>()?;

    if ctx.sink.human() {
        println!("algebra k<x,y>/(x^2, y^2, xy - c yx) over {field:?}, c = {c}");
        match scan.root_of_unity_order {
            Some(r) => println!("c is a root of unity of order {r}"),
            None => println!("c is not a root of unity"),
        }
        println!("Frobenius certificate: {}", if scan.frobenius.is_some() { "present" } else { "absent" });
        println!("{:>8} {:>5}  {:<26} {:<26} from", "lambda", "proj", "Ext^i(M,M) i>=1", "Ext^i(M,R) i>=1");
        for e in &scan.entries {
            let mark = if e.passes { "  <- hit" } else { "" };
            let from = e.vanishing_from.map_or("-".to_string(), |s| s.to_string());
            println!(
                "{:>8} {:>5}  {:<26} {:<26} {from}{mark}",
                e.lambda.to_string(),
                e.projective,
                dims_line(&e.ext_self),
                dims_line(&e.ext_ring)
            );
        }
        for (l, rep) in scan.hits.iter().zip(&hit_checks) {
            println!("lambda = {l}: {}", rep.classification.as_str());
        }
        for n in &scan.notes {
            println!("note: {n}");
        }
    }
    let code = hit_checks.iter().map(garc_exit).max().unwrap_or(exit::OK);
    ctx.finish("schulz-demo", code, DemoResult { scan, hit_checks })
}

pub enum MakeWhat {
    Algebra { builtin: String, field: Field, param: String, explicit: bool },
    Module { algebra: PathBuf, kind: String },
    Stalk { module: PathBuf, algebra: Option<PathBuf>, degree: i64 },
}

fn emit_file<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    match out {
        Some(p) => write_json(p, value)?,
        None => println!("{}", serde_json::to_string_pretty(value)?),
    }
    Ok(())
}

/// Modules named on the command line: `regular`, `simple:I`, `projective:I,J,..`, `schulz:LAMBDA`.
pub fn named_module(a: &Arc<Algebra>, kind: &str) -> Result<Module> {
    let (name, arg) = kind.split_once(':').unwrap_or((kind, ""));
    let indices = || -> Result<Vec<usize>> {
        arg.split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| Usage(format!("bad index list {arg:?}")).into()))
            .collect()
    };
    Ok(match name {
        "regular" => Module::regular(a.clone()),
        "simple" => Module::simple(a.clone(), indices()?[0])?,
        "projective" => Module::projective(a.clone(), &indices()?)?,
        "schulz" => schulz_module(a, &Lambda::parse(a.field(), arg)?)?,
        _ => return Err(Usage(format!("unknown module kind {kind:?}")).into()),
    })
}

pub fn make(out: Option<&Path>, what: MakeWhat) -> Result<u8> {
    match what {
        MakeWhat::Algebra { builtin, field, param, explicit } => {
            let b = Builtin::parse(&builtin, field, &param)?;
            let a = make_builtin(&b, field)?;
            if explicit {
                emit_file(out, &AlgebraSpec::Explicit(AlgebraFile::from_algebra(&a)))?;
            } else {
                emit_file(out, &BuiltinFile { builtin, field, param })?;
            }
        }
        MakeWhat::Module { algebra, kind } => {
            let a = load_algebra(&algebra)?;
            let m = named_module(&a, &kind)?;
            emit_file(out, &ModuleFile::from_module(&m, Some(inline_algebra(&a))))?;
        }
        MakeWhat::Stalk { module, algebra, degree } => {
            let fallback = algebra.as_deref().map(load_algebra).transpose()?;
            let m = load_module(&module, fallback.as_ref())?;
            let c = ChainComplex::stalk(&m, degree);
            emit_file(out, &ComplexFile::from_complex(&c, inline_algebra(m.algebra())))?;
        }
    }
    Ok(exit::OK)
}
