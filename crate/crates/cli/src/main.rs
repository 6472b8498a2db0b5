//! `garc`: Ext tables, syzygies of complexes, perfectness and orthogonality
//! checks over finite-dimensional algebras, all in exact arithmetic.
//!
//! Exit codes: 0 success, 2 candidate counterexample, 3 inconclusive,
//! 64 usage error, 65 malformed or unsuitable input, 70 internal inconsistency.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use garc_core::garc::ScanOptions;
use garc_core::{Error as CoreError, Field};

use commands::{Ctx, MakeWhat};
use report::{exit, parse_field, Internal, Sink, Usage};

#[derive(Debug, Parser)]
#[command(name = "garc", version, about = "Exact homological computations over finite-dimensional algebras")]
struct Cli {
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for the randomized isomorphism search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Print the JSON report on stdout instead of tables.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check associativity, unit, idempotents and radical of an algebra file.
    AlgValidate { algebra: PathBuf },

    /// Tabulate dim Ext^i(X, Y) two independent ways.
    ExtTable {
        /// Algebra for module files that do not name one.
        #[arg(long)]
        algebra: Option<PathBuf>,
        x: PathBuf,
        y: PathBuf,
        #[arg(long, short = 'W', default_value_t = 6)]
        max_degree: usize,
    },

    /// Resolve a complex and write its syzygy, the resolution and the perfect piece.
    ResolveOmega {
        complex: PathBuf,
        #[arg(long, short = 'B')]
        bound: i64,
        /// Directory for resolution.json, omega.json and q_complex.json.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },

    /// Windowed vanishing of Hom(M, Σ^i N); without N, against M and the algebra.
    PerpCheck {
        left: PathBuf,
        right: Option<PathBuf>,
        #[arg(long, short = 'W', default_value_t = 12)]
        window: i64,
        #[arg(long, short = 't', default_value_t = 1)]
        threshold: i64,
    },

    /// Decide whether a complex is perfect, with a certificate.
    PerfectCheck {
        complex: PathBuf,
        #[arg(long, short = 'B', default_value_t = 12)]
        bound: i64,
    },

    /// Test one instance of the derived conjecture and classify it.
    GarcCheck {
        complex: PathBuf,
        #[arg(long, short = 'W', default_value_t = 12)]
        window: i64,
        #[arg(long, short = 't', default_value_t = 1)]
        threshold: i64,
        /// Resolution bound; defaults to window + 1.
        #[arg(long, short = 'B')]
        bound: Option<i64>,
    },

    /// Sweep the cyclic modules over k<x,y>/(x^2, y^2, xy - c yx).
    SchulzDemo {
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: Field,
        #[arg(long, short = 'c', default_value = "2", allow_hyphen_values = true)]
        c: String,
        #[arg(long, short = 'W', default_value_t = 12)]
        window: usize,
        /// Resolution bound; defaults to window + 1.
        #[arg(long, short = 'B')]
        bound: Option<usize>,
        /// Lowest Ext degree required to vanish.
        #[arg(long, default_value_t = 1)]
        start_degree: usize,
    },

    /// Write input files for builtin algebras, named modules and stalk complexes.
    #[command(subcommand)]
    Make(MakeCommand),
}

#[derive(Debug, Subcommand)]
enum MakeCommand {
    /// A builtin algebra: schulz, truncated_poly, path_An, full_matrix, cyclic_group.
    Algebra {
        builtin: String,
        #[arg(long, value_parser = parse_field, default_value = "Q")]
        field: Field,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        param: String,
        /// Write the full structure constants instead of the builtin name.
        #[arg(long)]
        explicit: bool,
    },
    /// regular, simple:I, projective:I,J or schulz:LAMBDA.
    Module {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(allow_hyphen_values = true)]
        kind: String,
    },
    /// A module placed in a single degree.
    Stalk {
        module: PathBuf,
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i64,
    },
}

fn run(cli: Cli) -> Result<u8> {
    let ctx = Ctx { sink: Sink { out: cli.out.as_deref(), json: cli.json }, seed: cli.seed };
    match cli.command {
        Command::AlgValidate { algebra } => commands::alg_validate(&ctx, &algebra),
        Command::ExtTable { algebra, x, y, max_degree } => {
            commands::ext_table(&ctx, algebra.as_deref(), &x, &y, max_degree)
        }
        Command::ResolveOmega { complex, bound, dir } => commands::resolve_omega(&ctx, &complex, bound, &dir),
        Command::PerpCheck { left, right, window, threshold } => {
            commands::perp_check(&ctx, &left, right.as_deref(), window, threshold)
        }
        Command::PerfectCheck { complex, bound } => commands::perfect_check(&ctx, &complex, bound),
        Command::GarcCheck { complex, window, threshold, bound } => {
            commands::garc_check(&ctx, &complex, window, threshold, bound)
        }
        Command::SchulzDemo { field, c, window, bound, start_degree } => {
            let opts = ScanOptions { window, bound: bound.unwrap_or(window + 1), start_degree, seed: cli.seed };
            commands::schulz_demo(&ctx, field, &c, opts)
        }
        Command::Make(what) => {
            let what = match what {
                MakeCommand::Algebra { builtin, field, param, explicit } => {
                    MakeWhat::Algebra { builtin, field, param, explicit }
                }
                MakeCommand::Module { algebra, kind } => MakeWhat::Module { algebra, kind },
                MakeCommand::Stalk { module, algebra, degree } => MakeWhat::Stalk { module, algebra, degree },
            };
            commands::make(cli.out.as_deref(), what)
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return exit::USAGE;
        }
        if cause.is::<Internal>() {
            return exit::INTERNAL;
        }
        if let Some(e) = cause.downcast_ref::<CoreError>() {
            return match e {
                CoreError::InvalidParameter(_) => exit::USAGE,
                CoreError::SingularMatrix => exit::INTERNAL,
                _ => exit::DATA,
            };
        }
    }
    exit::INTERNAL
}

fn hint(err: &anyhow::Error) -> Option<String> {
    err.chain().find_map(|c| match c.downcast_ref::<CoreError>() {
        Some(CoreError::BoundTooSmall { needed, .. }) => Some(format!("rerun with --bound {needed} or larger")),
        Some(CoreError::ZeroComplex) => Some("an exact complex is perfect; there is nothing to resolve".into()),
        _ => None,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::OK,
                _ => exit::USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            if let Some(h) = hint(&err) {
                eprintln!("hint: {h}");
            }
            ExitCode::from(exit_code_for(&err))
        }
    }
}
