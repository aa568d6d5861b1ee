//! `degflow` — compute, simulate, fit, and cross-validate degree
//! distributions of growing networks.
//!
//! Exit codes: 0 on success (including `--help`/`--version`), 1 for usage
//! problems, 2 when a computation or file operation fails.

mod exec;
mod files;
mod opts;

use clap::error::ErrorKind;
use clap::Parser;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Configuration problems clap cannot rule out on its own.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(#[from] degflow_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Parse {
        path: String,
        line: usize,
        reason: String,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            _ => 2,
        }
    }

    /// A reader downstream of stdout hung up; by Unix convention that is
    /// not our failure.
    fn is_broken_pipe(&self) -> bool {
        matches!(self, CliError::Io { source, .. }
            if source.kind() == std::io::ErrorKind::BrokenPipe)
    }
}

fn main() -> ExitCode {
    let cli = match opts::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; anything else the
            // parser rejects is a usage error.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match exec::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if err.is_broken_pipe() {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
