//! Front end for `qpalg-core`: argument handling, report rendering and the
//! exit-code contract (0 all checks pass, 1 a check failed, 2 usage or IO).

pub mod commands;
pub mod config;

use std::fmt;
use std::io::Write;

use clap::Parser;
use serde_json::Value;

pub use commands::run;
pub use config::{max_n_from, Cli, Command, Format, RunConfig, Source, MAX_N_VAR};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Core(qpalg_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<qpalg_core::Error> for CliError {
    fn from(e: qpalg_core::Error) -> CliError {
        CliError::Core(e)
    }
}

/// A finished report in both renderings.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable") + "\n",
            Format::Text => self.text.clone(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

/// Runs the configuration and writes the report to `--out` or `stdout`.
pub fn execute(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let outcome = run(config)?;
    let body = outcome.render(config.format);
    match &config.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => stdout.write_all(body.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(outcome.exit_code())
}

/// Full entry point over raw arguments and the generator-cap variable.
pub fn main_with(args: &[String], max_n: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let result = max_n_from(max_n)
        .and_then(|cap| RunConfig::from_cli(cli, cap))
        .and_then(|config| execute(&config, stdout));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}
