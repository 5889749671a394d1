mod analyze;
mod compile;
mod experiment;
mod output;
mod synth;

use clap::{Parser, Subcommand, ValueEnum};
use output::Output;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl From<qac_core::Error> for CliError {
    fn from(e: qac_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonReport,
}

#[derive(Debug, Parser)]
#[command(name = "qac", version, about = "Synthesis, compilation and light-cone analysis for QAC circuits")]
pub struct Cli {
    /// Output style: human text (CSV for experiments) or one JSON report document.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Numerical tolerance for fidelity and bound checks.
    #[arg(long, default_value_t = 1e-9, global = true)]
    pub tol: f64,
    /// Largest qubit count handed to the dense simulator.
    #[arg(long, default_value_t = qac_core::sim::DEFAULT_QUBIT_CAP, global = true)]
    pub qubit_cap: usize,
    /// Circuit file for synth/compile; report destination for analyze/experiment.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthesized circuit to --out.
    Synth {
        #[command(subcommand)]
        kind: synth::Kind,
    },
    /// Compile an all-to-all circuit onto the (n+1) × n lattice.
    Compile(compile::Args),
    /// Light-cone, separability and restriction analysis of a circuit file.
    Analyze(analyze::Args),
    /// Bound experiments; exits 1 if any report is unsatisfied.
    Experiment {
        #[command(subcommand)]
        suite: experiment::Suite,
    },
}

fn run(cli: &Cli) -> CliResult {
    let out = Output::new(cli);
    match &cli.command {
        // --out names the circuit file here, so reports go to stdout
        Command::Synth { kind } => synth::run(cli, kind, &out.into_stdout()),
        Command::Compile(args) => compile::run(cli, args, &out.into_stdout()),
        Command::Analyze(args) => analyze::run(cli, args, &out),
        Command::Experiment { suite } => experiment::run(cli, suite, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Domain(_) => 1,
                CliError::Usage(_) => 2,
            })
        }
    }
}
