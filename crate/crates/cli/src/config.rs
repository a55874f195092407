use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use loday_core::loday::DEFAULT_MAX_BASIS;
use loday_core::{FieldSpec, SpaceExpr};

use crate::CliError;

/// Environment variable overriding the default basis-size ceiling.
pub const MAX_BASIS_ENV: &str = "LODAY_MAX_BASIS";

#[derive(Debug, Parser)]
#[command(
    name = "loday",
    version,
    about = "Homology of Loday constructions over prime fields and Q"
)]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    /// Run the acceptance suite and print a pass/fail summary.
    #[arg(long)]
    seed_suite: bool,
    #[command(subcommand)]
    command: Option<Sub>,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Homology table of one space.
    Compute {
        /// Space expression, e.g. prod(S1,S1)
        #[arg(long)]
        space: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the homology tables of two spaces.
    Compare {
        /// Left space expression
        #[arg(long)]
        space_a: String,
        /// Right space expression
        #[arg(long)]
        space_b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare X x Y with X v Y v (X ^ Y).
    CheckProduct {
        /// Left space expression
        #[arg(long)]
        space_a: String,
        /// Right space expression
        #[arg(long)]
        space_b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the torus bicomplex with the simplicial product of circles.
    OracleBicomplex {
        #[command(flatten)]
        common: Common,
    },
    /// Check simplicial identities and algebra axioms.
    Validate {
        /// Space expression to check
        #[arg(long)]
        space: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// truncpoly(m), poly, exterior or file(<path>)
    #[arg(long, default_value = "truncpoly(2)")]
    algebra: String,
    /// F<p> or Q
    #[arg(long, default_value = "F3")]
    field: String,
    /// unit, self or file(<path>)
    #[arg(long, default_value = "unit")]
    coeff: String,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Weight bound; required for poly
    #[arg(long)]
    max_weight: Option<u32>,
    /// Use the unnormalized complex
    #[arg(long)]
    no_normalize: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest basis block allowed (overrides LODAY_MAX_BASIS)
    #[arg(long)]
    max_basis: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Compute,
    Compare,
    CheckProduct,
    OracleBicomplex,
    Validate,
    SeedSuite,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Compute => "compute",
            Command::Compare => "compare",
            Command::CheckProduct => "check-product",
            Command::OracleBicomplex => "oracle-bicomplex",
            Command::Validate => "validate",
            Command::SeedSuite => "seed-suite",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSpec {
    TruncPoly(usize),
    Poly,
    Exterior,
    File(PathBuf),
}

impl AlgebraSpec {
    pub fn is_bounded(&self) -> bool {
        !matches!(self, AlgebraSpec::Poly)
    }
}

impl FromStr for AlgebraSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "poly" {
            return Ok(AlgebraSpec::Poly);
        }
        if s == "exterior" {
            return Ok(AlgebraSpec::Exterior);
        }
        if let Some(path) = call_arg(s, "file") {
            return Ok(AlgebraSpec::File(PathBuf::from(path)));
        }
        if let Some(m) = call_arg(s, "truncpoly") {
            return m
                .trim()
                .parse()
                .map(AlgebraSpec::TruncPoly)
                .map_err(|_| format!("bad truncation in {s:?}"));
        }
        Err(format!(
            "unknown algebra {s:?}; expected truncpoly(m), poly, exterior or file(<path>)"
        ))
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::TruncPoly(m) => write!(f, "truncpoly({m})"),
            AlgebraSpec::Poly => f.write_str("poly"),
            AlgebraSpec::Exterior => f.write_str("exterior"),
            AlgebraSpec::File(p) => write!(f, "file({})", p.display()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffSpec {
    Unit,
    SelfAlgebra,
    File(PathBuf),
}

impl FromStr for CoeffSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "unit" => Ok(CoeffSpec::Unit),
            "self" => Ok(CoeffSpec::SelfAlgebra),
            other => call_arg(other, "file")
                .map(|p| CoeffSpec::File(PathBuf::from(p)))
                .ok_or_else(|| format!("unknown coefficients {other:?}; expected unit, self or file(<path>)")),
        }
    }
}

impl fmt::Display for CoeffSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSpec::Unit => f.write_str("unit"),
            CoeffSpec::SelfAlgebra => f.write_str("self"),
            CoeffSpec::File(p) => write!(f, "file({})", p.display()),
        }
    }
}

/// `name(arg)` -> `arg`.
fn call_arg<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// The expressions the command needs: one for compute and validate
    /// (possibly none for validate), two for compare and check-product.
    pub spaces: Vec<SpaceExpr>,
    pub algebra: AlgebraSpec,
    pub field: FieldSpec,
    pub coeff: CoeffSpec,
    pub max_degree: usize,
    pub weight_bound: Option<u32>,
    pub normalized: bool,
    pub format: Format,
    pub max_basis: usize,
}

fn space(flag: &str, s: &str) -> Result<SpaceExpr, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

/// Parses a full argument vector, program name first.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    let (command, spaces, common) = match cli.command {
        None if cli.seed_suite => {
            return Ok(RunConfig {
                command: Command::SeedSuite,
                spaces: Vec::new(),
                algebra: AlgebraSpec::TruncPoly(2),
                field: FieldSpec::prime(3).expect("3 is prime"),
                coeff: CoeffSpec::Unit,
                max_degree: 2,
                weight_bound: None,
                normalized: true,
                format: Format::Text,
                max_basis: env_max_basis()?,
            })
        }
        None => return Err(CliError::Usage("a subcommand or --seed-suite is required".into())),
        Some(Sub::Compute { space: s, common }) => (Command::Compute, vec![space("space", &s)?], common),
        Some(Sub::Compare {
            space_a,
            space_b,
            common,
        }) => (
            Command::Compare,
            vec![space("space-a", &space_a)?, space("space-b", &space_b)?],
            common,
        ),
        Some(Sub::CheckProduct {
            space_a,
            space_b,
            common,
        }) => (
            Command::CheckProduct,
            vec![space("space-a", &space_a)?, space("space-b", &space_b)?],
            common,
        ),
        Some(Sub::OracleBicomplex { common }) => (Command::OracleBicomplex, Vec::new(), common),
        Some(Sub::Validate { space: s, common }) => {
            let spaces = match s {
                Some(s) => vec![space("space", &s)?],
                None => Vec::new(),
            };
            (Command::Validate, spaces, common)
        }
    };
    let algebra: AlgebraSpec = common
        .algebra
        .parse()
        .map_err(|e| CliError::Usage(format!("--algebra: {e}")))?;
    let field: FieldSpec = common
        .field
        .parse()
        .map_err(|e| CliError::Usage(format!("--field: {e}")))?;
    let coeff: CoeffSpec = common
        .coeff
        .parse()
        .map_err(|e| CliError::Usage(format!("--coeff: {e}")))?;
    if !algebra.is_bounded() && common.max_weight.is_none() && command != Command::Validate {
        return Err(CliError::Usage(format!(
            "--max-weight: a weight bound is required for {algebra}"
        )));
    }
    let max_basis = match common.max_basis {
        Some(n) => n,
        None => env_max_basis()?,
    };
    Ok(RunConfig {
        command,
        spaces,
        algebra,
        field,
        coeff,
        max_degree: common.max_degree,
        weight_bound: common.max_weight,
        normalized: !common.no_normalize,
        format: common.format,
        max_basis,
    })
}

fn env_max_basis() -> Result<usize, CliError> {
    match std::env::var(MAX_BASIS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_BASIS_ENV}: not a count: {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_BASIS),
    }
}
