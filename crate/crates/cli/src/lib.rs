//! Command-line front end for `spinpoly`.
//!
//! Each invocation writes one document to standard output (JSON by default,
//! text with `--format plain`) and a one-line summary to standard error.
//! Exit codes: 0 success / member / satisfied, 1 a well-formed negative
//! answer, 2 input or usage error.

pub mod commands;
pub mod document;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::document::{Report, Status};

#[derive(Debug, Parser)]
#[command(
    name = "spinpoly",
    version,
    about = "Exact computations on the spin correlation polytope"
)]
pub struct Cli {
    /// Output format for standard output.
    #[arg(long, value_enum, default_value_t = Format::Structured, global = true)]
    pub format: Format,
    /// Seed for randomized commands.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Structured,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the 2^(n-1) vertices of C_n.
    Vertices { n: usize },
    /// List the Bell inequalities for n spins.
    Bells { n: usize },
    /// Report the Bell inequalities a matrix violates.
    Check { file: PathBuf },
    /// Decide membership in C_n by exact LP.
    Member { file: PathBuf },
    /// Build a spin distribution with the given correlations.
    Realize { file: PathBuf },
    /// Barycentric coordinates in the three-spin tetrahedron.
    Barycentric { file: PathBuf },
    /// Enumerate the facets of C_n.
    Facets { n: usize },
    /// Decide whether C_n is a simplex.
    #[command(name = "simplex-check")]
    SimplexCheck { n: usize },
    /// Find a Bell-satisfying matrix outside C_n (n >= 5).
    Gap { n: usize },
    /// Monte-Carlo estimate of the correlations of a realizing distribution.
    Sample {
        file: PathBuf,
        #[arg(long)]
        count: u64,
    },
}

/// Everything an invocation produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn dispatch(cli: &Cli) -> commands::CommandResult {
    use commands::*;
    match &cli.command {
        Command::Vertices { n } => vertices(*n),
        Command::Bells { n } => bells(*n),
        Command::Check { file } => check(&read_matrix(file)?),
        Command::Member { file } => member(&read_matrix(file)?),
        Command::Realize { file } => realize(&read_matrix(file)?),
        Command::Barycentric { file } => barycentric(&read_matrix(file)?),
        Command::Facets { n } => facets(*n),
        Command::SimplexCheck { n } => simplex_check(*n),
        Command::Gap { n } => gap(*n, cli.seed),
        Command::Sample { file, count } => sample(&read_matrix(file)?, *count, cli.seed),
    }
}

fn render(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let command: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let start = Instant::now();

    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            return Outcome {
                code: 0,
                stdout: e.to_string(),
                stderr: String::new(),
            };
        }
        Err(e) => {
            let report = Report {
                command,
                status: Status::Error,
                result: None,
                error: Some(e.kind().to_string()),
                timing_us: start.elapsed().as_micros() as u64,
            };
            return Outcome {
                code: 2,
                stdout: render(&report),
                stderr: e.to_string(),
            };
        }
    };

    let outcome = dispatch(&cli);
    let timing_us = start.elapsed().as_micros() as u64;
    match outcome {
        Ok(answer) => {
            let stdout = match cli.format {
                Format::Structured => render(&Report {
                    command,
                    status: answer.status,
                    result: Some(answer.result),
                    error: None,
                    timing_us,
                }),
                Format::Plain => answer.plain,
            };
            Outcome {
                code: answer.status.exit_code(),
                stdout,
                stderr: format!("{}\n", answer.summary),
            }
        }
        Err(message) => {
            let stdout = match cli.format {
                Format::Structured => render(&Report {
                    command,
                    status: Status::Error,
                    result: None,
                    error: Some(message.clone()),
                    timing_us,
                }),
                Format::Plain => format!("error: {message}\n"),
            };
            Outcome {
                code: 2,
                stdout,
                stderr: format!("error: {message}\n"),
            }
        }
    }
}
