//! Command-line front end for `gentrig`.
//!
//! [`run`] executes a parsed [`Cli`] and writes its records to any
//! `io::Write`; the binary is a thin wrapper that maps [`CliError`] to the
//! process exit code (1 check failed, 2 usage, 3 non-convergence).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod input;
pub mod output;
pub mod verify;

use std::io::Write;

use gentrig::DoubleDouble;

pub use args::Cli;
pub use config::{ConfigFile, Format, Grid, Precision, Settings};
pub use error::{CliError, CliResult};
pub use verify::{run_verify, Suite, VerifyReport};

use args::{Command, SuiteArg};
use output::Emitter;

macro_rules! at_precision {
    ($p:expr, $f:ident($($arg:expr),*)) => {
        match $p {
            Precision::Single => commands::$f::<f32, _>($($arg),*),
            Precision::Double => commands::$f::<f64, _>($($arg),*),
            Precision::Extended => commands::$f::<DoubleDouble, _>($($arg),*),
        }
    };
}

/// Runs one command. `precision_env` is the value of `GENTRIG_PRECISION`,
/// if set. Output already written stays written when an error is returned.
pub fn run<W: Write>(cli: &Cli, precision_env: Option<&str>, out: W) -> CliResult<()> {
    let config = cli.config.as_deref().map(ConfigFile::load).transpose()?;
    let settings = Settings::resolve(cli.format.as_deref(), cli.precision.as_deref(), precision_env, config.as_ref())?;
    let mut em = Emitter::new(out, settings.format, settings.precision);
    let result = match &cli.command {
        Command::Eval(a) => at_precision!(settings.precision, eval(a, &mut em)),
        Command::Oracle(a) => at_precision!(settings.precision, oracle(a, &mut em)),
        Command::Coeffs(a) => commands::coeffs(a, &mut em),
        Command::Zeros(a) => at_precision!(settings.precision, zeros_cmd(a, &mut em)),
        Command::Terminant(a) => at_precision!(settings.precision, terminant(a, &mut em)),
        Command::Table(a) => at_precision!(settings.precision, table(a, &mut em)),
        Command::Verify(a) => verify_cmd(a.suite, a.verbose, &settings, &mut em),
    };
    em.finish()?;
    result
}

fn verify_cmd<W: Write>(suite: SuiteArg, verbose: bool, settings: &Settings, em: &mut Emitter<W>) -> CliResult<()> {
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Tables => vec![Suite::Tables],
        SuiteArg::Envelope => vec![Suite::Envelope],
        SuiteArg::Bounds => vec![Suite::Bounds],
        SuiteArg::Zeros => vec![Suite::Zeros],
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::Terminant => vec![Suite::Terminant],
    };
    let mut failed = Vec::new();
    for s in suites {
        let report = match settings.precision {
            Precision::Single => run_verify::<f32>(s, &settings.grid)?,
            Precision::Double => run_verify::<f64>(s, &settings.grid)?,
            Precision::Extended => run_verify::<DoubleDouble>(s, &settings.grid)?,
        };
        em.emit(&report.record())?;
        if verbose {
            for f in &report.failures {
                eprintln!("{s}: {f}");
            }
        }
        if !report.passed() {
            failed.push(format!("{s} ({} of {} cases)", report.cases_failed, report.cases_run));
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Assertion(format!("failing suites: {}", failed.join(", "))))
    }
}
