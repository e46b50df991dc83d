//! `xmosc`: tables and verification reports for the extended oscillator.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid parameters,
//! 3 failed verification.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub mod args;
pub mod commands;
pub mod output;
pub mod repro;

use args::{Cli, Command};
use commands::Outcome;
use output::emit;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Invalid(String),
    Io(std::io::Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => EXIT_USAGE,
            Failure::Invalid(_) => EXIT_INVALID,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(s) => write!(f, "usage error: {s}"),
            Failure::Invalid(s) => write!(f, "invalid parameters: {s}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<xm_oscillator::Error> for Failure {
    fn from(e: xm_oscillator::Error) -> Self {
        match e {
            xm_oscillator::Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let (outcome, output): (Outcome, _) = match cli.command {
        Command::Validate { model, output } => (commands::validate(&model)?, output),
        Command::Potential {
            model,
            grid,
            output,
        } => (commands::potential(&model, &grid)?, output),
        Command::Spectrum {
            model,
            levels,
            compare_fd,
            grid,
            output,
        } => (
            commands::spectrum(&model, &levels, compare_fd, grid)?,
            output,
        ),
        Command::Wavefunction {
            model,
            levels,
            grid,
            conventional,
            order,
            output,
        } => (
            commands::wavefunction(&model, &levels, &grid, conventional, order)?,
            output,
        ),
        Command::Gram {
            model,
            levels,
            order,
            tol,
            output,
        } => (commands::gram(&model, &levels, order, tol)?, output),
        Command::Residual {
            model,
            n,
            points,
            output,
        } => (commands::residual(&model, n, points as usize)?, output),
        Command::EigCompare {
            model,
            count,
            grid,
            output,
        } => (commands::eigen_compare(&model, count, grid)?, output),
        Command::Repro {
            out,
            order,
            grid,
            points,
        } => {
            let pass = repro::run(&out, order, grid, points, stdout)?;
            writeln!(
                stderr,
                "repro: {}",
                if pass {
                    "all verifications pass"
                } else {
                    "verification FAILED"
                }
            )?;
            return Ok(if pass { EXIT_OK } else { EXIT_VERIFICATION });
        }
    };
    emit(
        &outcome.doc.render(output.format),
        output.out.as_deref(),
        stdout,
    )?;
    if let Some(s) = &outcome.summary {
        writeln!(stderr, "{s}")?;
    }
    Ok(outcome.code)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {f}");
            f.code()
        }
    }
}
