//! Command-line surface for the Loday homology engine.
//!
//! Exit codes: 0 on success or agreement, 10 when a report contains a
//! discrepancy, 1 on internal errors, 2 on usage errors.

pub mod config;
pub mod report;
pub mod suite;

use std::fmt;
use std::fs;
use std::path::Path;

use loday_core::algebra::{exterior, load_coefficients, polynomial, truncated_poly, validate_algebra, AlgebraDocument};
use loday_core::oracle::{torus_bicomplex, total_homology};
use loday_core::simplicial::validate;
use loday_core::stability::{compare_spaces, compare_tables, product_decomposition_check, space_homology};
use loday_core::{Coefficients, ComparisonReport, Error, GradedAlgebra, LodayOptions, SpaceExpr};

pub use config::{parse_args, AlgebraSpec, CoeffSpec, Command, Format, RunConfig};
use report::{render_comparison, render_table, render_validation, Check, Header};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 10;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Clap(clap::Error),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Clap(e) => e.exit_code(),
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Clap(e) => write!(f, "{e}"),
            CliError::Internal(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BasisTooLarge { .. } | Error::Internal(_) => CliError::Internal(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// A rendered report and the exit code that goes with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub report: String,
    pub exit_code: i32,
}

fn read(path: &Path, flag: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{flag}: cannot read {}: {e}", path.display())))
}

fn unvalidated_file_algebra(path: &Path) -> Result<GradedAlgebra, CliError> {
    let text = read(path, "--algebra")?;
    let doc: AlgebraDocument = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("--algebra: {e}")))?;
    doc.build().map_err(|e| CliError::Usage(format!("--algebra: {e}")))
}

/// Builds the algebra named by the config, over the configured field.
pub fn resolve_algebra(cfg: &RunConfig) -> Result<GradedAlgebra, CliError> {
    let a = match &cfg.algebra {
        AlgebraSpec::TruncPoly(m) => {
            truncated_poly(cfg.field, *m).map_err(|e| CliError::Usage(format!("--algebra: {e}")))?
        }
        AlgebraSpec::Poly => polynomial(cfg.field),
        AlgebraSpec::Exterior => exterior(cfg.field),
        AlgebraSpec::File(path) => {
            let a = unvalidated_file_algebra(path)?;
            if let Some(v) = validate_algebra(&a, None).violations.first() {
                return Err(CliError::Usage(format!("--algebra: {v}")));
            }
            a
        }
    };
    if a.field() != cfg.field {
        return Err(CliError::Usage(format!(
            "--field: the algebra is over {}, not {}",
            a.field(),
            cfg.field
        )));
    }
    Ok(a.with_label(cfg.algebra.to_string()))
}

pub fn resolve_coefficients(cfg: &RunConfig, a: &GradedAlgebra) -> Result<Coefficients, CliError> {
    match &cfg.coeff {
        CoeffSpec::Unit => Ok(Coefficients::Unit),
        CoeffSpec::SelfAlgebra => Ok(Coefficients::SelfAlgebra),
        CoeffSpec::File(path) => {
            load_coefficients(a, &read(path, "--coeff")?).map_err(|e| CliError::Usage(format!("--coeff: {e}")))
        }
    }
}

pub fn options(cfg: &RunConfig) -> LodayOptions {
    LodayOptions {
        max_degree: cfg.max_degree,
        weight_bound: cfg.weight_bound,
        normalized: cfg.normalized,
        max_basis: cfg.max_basis,
        verify_boundaries: false,
    }
}

fn header(cfg: &RunConfig) -> Header {
    Header {
        command: cfg.command.to_string(),
        algebra: cfg.algebra.to_string(),
        coeff: cfg.coeff.to_string(),
        normalized: cfg.normalized,
    }
}

fn comparison_output(cfg: &RunConfig, r: &ComparisonReport) -> Output {
    Output {
        report: render_comparison(&header(cfg), r, cfg.format),
        exit_code: if r.verdict.agrees() { EXIT_OK } else { EXIT_DISCREPANCY },
    }
}

/// Executes a validated configuration.
pub fn run(cfg: &RunConfig) -> Result<Output, CliError> {
    match cfg.command {
        Command::Compute => {
            let a = resolve_algebra(cfg)?;
            let c = resolve_coefficients(cfg, &a)?;
            let t = space_homology(&cfg.spaces[0], &a, &c, &options(cfg))?;
            Ok(Output {
                report: render_table(&header(cfg), &cfg.spaces[0].to_string(), &t, cfg.format),
                exit_code: EXIT_OK,
            })
        }
        Command::Compare => {
            let a = resolve_algebra(cfg)?;
            let c = resolve_coefficients(cfg, &a)?;
            let r = compare_spaces(&cfg.spaces[0], &cfg.spaces[1], &a, &c, &options(cfg))?;
            Ok(comparison_output(cfg, &r))
        }
        Command::CheckProduct => {
            let a = resolve_algebra(cfg)?;
            let c = resolve_coefficients(cfg, &a)?;
            let r = product_decomposition_check(&cfg.spaces[0], &cfg.spaces[1], &a, &c, &options(cfg))?;
            Ok(comparison_output(cfg, &r))
        }
        Command::OracleBicomplex => {
            let a = resolve_algebra(cfg)?;
            let c = resolve_coefficients(cfg, &a)?;
            let b = total_homology(&torus_bicomplex(&a, &c, cfg.max_degree, cfg.weight_bound)?)?;
            let torus = SpaceExpr::prod(SpaceExpr::S1, SpaceExpr::S1);
            let t = space_homology(&torus, &a, &c, &options(cfg))?;
            let r = compare_tables("bicomplex", &torus.to_string(), a.label(), b, t)?;
            Ok(comparison_output(cfg, &r))
        }
        Command::Validate => {
            let checks = validation_checks(cfg)?;
            let ok = checks.iter().all(|c| c.violations.is_empty());
            Ok(Output {
                report: render_validation(&checks, cfg.format),
                exit_code: if ok { EXIT_OK } else { EXIT_INTERNAL },
            })
        }
        Command::SeedSuite => {
            let results = suite::run_all();
            let mut report = String::new();
            for r in &results {
                report.push_str(&r.line());
                report.push('\n');
            }
            let passed = results.iter().filter(|r| r.passed).count();
            report.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
            Ok(Output {
                report,
                exit_code: if passed == results.len() {
                    EXIT_OK
                } else {
                    EXIT_INTERNAL
                },
            })
        }
    }
}

fn validation_checks(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let top = cfg.max_degree + 1;
    for e in &cfg.spaces {
        let x = e.build(top)?;
        let mut violations: Vec<String> = validate(&x).violations.iter().map(ToString::to_string).collect();
        if !x.is_connected() {
            violations.push("not connected".into());
        }
        checks.push(Check {
            target: format!("space {e} (levels 0..{top})"),
            violations,
        });
    }
    let a = match &cfg.algebra {
        AlgebraSpec::File(path) => {
            let a = unvalidated_file_algebra(path)?;
            if a.field() != cfg.field {
                return Err(CliError::Usage(format!(
                    "--field: the algebra is over {}, not {}",
                    a.field(),
                    cfg.field
                )));
            }
            a
        }
        _ => resolve_algebra(cfg)?,
    };
    let report = validate_algebra(&a, cfg.weight_bound);
    checks.push(Check {
        target: format!("algebra {} over {}", cfg.algebra, cfg.field),
        violations: report.violations.iter().map(ToString::to_string).collect(),
    });
    if let CoeffSpec::File(path) = &cfg.coeff {
        let text = read(path, "--coeff")?;
        let violations = match load_coefficients(&a, &text) {
            Ok(_) => Vec::new(),
            Err(e) => vec![e.to_string()],
        };
        checks.push(Check {
            target: format!("coefficients {}", cfg.coeff),
            violations,
        });
    }
    Ok(checks)
}

/// Parses, runs and prints; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let result = parse_args(argv).and_then(|cfg| run(&cfg));
    match result {
        Ok(out) => {
            print!("{}", out.report);
            out.exit_code
        }
        Err(CliError::Clap(e)) => {
            let code = e.exit_code();
            let _ = e.print();
            code
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
