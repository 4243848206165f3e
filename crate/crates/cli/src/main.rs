mod args;
mod commands;
mod config_file;
mod dist;

use std::fmt;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;

/// Invalid flag values detected outside clap. Exit code 2.
#[derive(Debug)]
pub struct UsageError(String);

impl UsageError {
    pub fn new(message: impl Into<String>) -> Self {
        UsageError(message.into())
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// A check that ran and failed. Exit code 1.
#[derive(Debug)]
pub struct Failure(String);

impl Failure {
    pub fn new(message: impl Into<String>) -> Self {
        Failure(message.into())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failure {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<occ_core::Error>() {
            return match e {
                occ_core::Error::SubsetCapExceeded { .. } => 3,
                occ_core::Error::ThresholdTie => 4,
                occ_core::Error::Io(_) => 1,
                _ => 2,
            };
        }
        if cause.is::<UsageError>() {
            return 2;
        }
    }
    1
}

fn diagnose(message: &str, code: u8) -> ExitCode {
    let line: Vec<&str> = message.split_whitespace().collect();
    eprintln!("occ: {}", line.join(" "));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let argv = match config_file::expand_config_args(std::env::args_os().collect()) {
        Ok(argv) => argv,
        Err(e) => return diagnose(&format!("{e:#}"), 2),
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                _ => {
                    let rendered = e.render().to_string();
                    let first = rendered.lines().next().unwrap_or("invalid arguments");
                    diagnose(first.trim_start_matches("error: "), 2)
                }
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => diagnose(&format!("{e:#}"), exit_code(&e)),
    }
}
