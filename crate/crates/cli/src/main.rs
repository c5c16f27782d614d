mod crystal;
mod finite;
mod padic;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gammafactor::par::Exec;
use serde::Deserialize;
use thiserror::Error;

use report::Output;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl From<gammafactor::Error> for CliError {
    fn from(e: gammafactor::Error) -> Self {
        match e {
            gammafactor::Error::Internal(m) => CliError::Internal(m),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(name = "gammafactor", version, about = "Gamma factors, basic functions and the crystal Weyl action")]
struct Cli {
    /// Output format; TSV is available for tabular results only.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Normalization fixture file (defaults to the built-in copy).
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Finite-field gamma sums, the finite-main sweep and GL(2) tables.
    Finite(finite::FiniteArgs),
    /// Local factors over Q_p.
    Padic(padic::PadicArgs),
    /// Randomized certification of the crystal Weyl action.
    Crystal(crystal::CrystalArgs),
}

const BUILTIN_FIXTURE: &str = include_str!("../fixtures/normalization.json");

#[derive(Clone, Debug, Deserialize)]
pub struct FixtureOracle {
    pub primes: Vec<u64>,
    pub s: f64,
    pub radius: u32,
    pub level: u32,
    pub fourier_weights: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Fixture {
    pub version: u32,
    pub tate_eps_normalization: i32,
    pub fourier_shift_exponent: i32,
    pub oracle: FixtureOracle,
}

impl Fixture {
    pub fn normalization(&self) -> gammafactor::padic::Normalization {
        gammafactor::padic::Normalization {
            tate_eps_q_power: self.tate_eps_normalization,
            fourier_shift_exponent: self.fourier_shift_exponent,
        }
    }
}

fn load_fixture(path: Option<&PathBuf>) -> CliResult<(Fixture, String)> {
    let (text, label) = match path {
        Some(p) => (
            std::fs::read_to_string(p).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?,
            p.display().to_string(),
        ),
        None => (BUILTIN_FIXTURE.to_string(), "builtin".to_string()),
    };
    let f: Fixture = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad fixture file: {e}")))?;
    if f.version != 1 {
        return Err(CliError::Usage(format!("unsupported fixture version {}", f.version)));
    }
    Ok((f, label))
}

fn run(cli: &Cli) -> CliResult<Output> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match &cli.command {
        Command::Finite(a) => finite::run(a, exec),
        Command::Padic(a) => {
            let (fixture, label) = load_fixture(cli.fixtures.as_ref())?;
            padic::run(a, &fixture, &label, exec)
        }
        Command::Crystal(a) => crystal::run(a, exec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.report).expect("report serializes"));
                }
                Format::Tsv => match &out.table {
                    Some(t) => print!("{}", t.render()),
                    None => {
                        eprintln!("error: usage: --format tsv is only available for tables");
                        return ExitCode::from(2);
                    }
                },
            }
            if out.report.summary.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Usage(_) => ExitCode::from(2),
                CliError::Internal(_) => ExitCode::from(1),
            }
        }
    }
}
