//! Argument parsing and the validated run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpalg_core::catalog::CatalogSpec;
use qpalg_core::grassmann::DEFAULT_MAX_GENERATORS;
use qpalg_core::Scalar;

use crate::CliError;

/// Environment variable capping the generator count of catalog algebras.
pub const MAX_N_VAR: &str = "QPALG_MAX_N";

#[derive(Parser, Debug)]
#[command(name = "qpalg", version, about = "Exact checks for quasi-Poisson superalgebras and their loop algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Subcommand, Debug)]
pub enum Sub {
    /// QP axioms, derived identities and bracket compatibility.
    Verify(CommonArgs),
    /// Loop-algebra Jacobi identity, Virasoro subalgebra and grading on a window.
    LoopCheck(CommonArgs),
    /// Locality orders and k-th products of distributions.
    Locality(CommonArgs),
    /// The n-th product table of the loop algebra.
    NthProducts(CommonArgs),
    /// Structure constants as JSON.
    Export(CommonArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Catalog algebra: K:N, W:N, S:N:alpha=A, S_tilde:N or CK6.
    #[arg(long, value_name = "SPEC")]
    pub algebra: Option<String>,
    /// Algebra JSON file produced by `export`.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Named distribution example (locality only).
    #[arg(long, value_name = "NAME")]
    pub example: Option<String>,
    /// Parameter of the nonfinite_5_6 example.
    #[arg(long, value_name = "SCALAR")]
    pub alpha: Option<String>,
    /// Half-width W of the mode window.
    #[arg(long, default_value_t = 4)]
    pub window: i64,
    /// Largest locality order tried.
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    LoopCheck,
    Locality,
    NthProducts,
    Export,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::LoopCheck => "loop-check",
            Command::Locality => "locality",
            Command::NthProducts => "nth-products",
            Command::Export => "export",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Catalog(CatalogSpec),
    Input(PathBuf),
    Example { name: String, alpha: Option<Scalar> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub source: Source,
    pub window: i64,
    pub nmax: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub max_n: usize,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Reads the generator cap from its environment value, if set.
pub fn max_n_from(value: Option<&str>) -> Result<usize, CliError> {
    match value {
        None => Ok(DEFAULT_MAX_GENERATORS),
        Some(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(|| usage(format!("{MAX_N_VAR} must be a positive integer, got {v:?}"))),
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli, max_n: usize) -> Result<RunConfig, CliError> {
        let (command, args) = match cli.command {
            Sub::Verify(a) => (Command::Verify, a),
            Sub::LoopCheck(a) => (Command::LoopCheck, a),
            Sub::Locality(a) => (Command::Locality, a),
            Sub::NthProducts(a) => (Command::NthProducts, a),
            Sub::Export(a) => (Command::Export, a),
        };
        let given = [args.algebra.is_some(), args.input.is_some(), args.example.is_some()];
        if given.iter().filter(|g| **g).count() != 1 {
            return Err(usage("give exactly one of --algebra, --input, --example"));
        }
        if args.alpha.is_some() && args.example.is_none() {
            return Err(usage("--alpha only applies to --example"));
        }
        let source = if let Some(spec) = args.algebra {
            Source::Catalog(spec.parse::<CatalogSpec>()?)
        } else if let Some(path) = args.input {
            Source::Input(path)
        } else {
            if command != Command::Locality {
                return Err(usage("--example is only accepted by `locality`"));
            }
            let alpha = args.alpha.map(|s| s.parse::<Scalar>()).transpose()?;
            Source::Example {
                name: args.example.expect("checked"),
                alpha,
            }
        };
        RunConfig::new(command, source, args.window, args.nmax, args.out, args.format, max_n)
    }

    /// Enforces `W ≥ 3` and `N_max ≥ 1`.
    pub fn new(
        command: Command,
        source: Source,
        window: i64,
        nmax: usize,
        out: Option<PathBuf>,
        format: Format,
        max_n: usize,
    ) -> Result<RunConfig, CliError> {
        if window < 3 {
            return Err(usage(format!("--window must be at least 3, got {window}")));
        }
        if nmax < 1 {
            return Err(usage("--nmax must be at least 1"));
        }
        Ok(RunConfig {
            command,
            source,
            window,
            nmax,
            out,
            format,
            max_n,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(args).map_err(|e| usage(e.to_string()))?;
        RunConfig::from_cli(cli, 8)
    }

    #[test]
    fn defaults() {
        let c = parse(&["qpalg", "verify", "--algebra", "CK6"]).unwrap();
        assert_eq!((c.window, c.nmax, c.format), (4, 8, Format::Json));
        assert_eq!(c.source, Source::Catalog(CatalogSpec::ck6()));
    }

    #[test]
    fn rejects_bad_configs() {
        let err = parse(&["qpalg", "verify", "--algebra", "S:1:alpha=0"]).unwrap_err();
        assert!(err.to_string().contains("S requires N ≥ 2"), "{err}");
        assert!(parse(&["qpalg", "verify"]).is_err());
        assert!(parse(&["qpalg", "verify", "--example", "witt"]).is_err());
        assert!(parse(&["qpalg", "loop-check", "--algebra", "K:1", "--window", "2"]).is_err());
        assert!(parse(&["qpalg", "locality", "--algebra", "K:1", "--nmax", "0"]).is_err());
        assert!(parse(&["qpalg", "locality", "--example", "nonfinite_5_6", "--alpha", "x"]).is_err());
    }

    #[test]
    fn generator_cap() {
        assert_eq!(max_n_from(None).unwrap(), DEFAULT_MAX_GENERATORS);
        assert_eq!(max_n_from(Some("3")).unwrap(), 3);
        assert!(max_n_from(Some("0")).is_err());
        assert!(max_n_from(Some("many")).is_err());
    }
}
