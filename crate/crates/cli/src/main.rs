//! `cdg`: analyse, construct and enumerate candidate character degree graphs.

mod analyze;
mod construct;
mod enumerate;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::io::Run;

#[derive(Parser)]
#[command(name = "cdg", version, about = "Character degree graph toolkit")]
struct Cli {
    /// Write a run manifest (command line, input and output digests).
    #[arg(long, global = true, value_name = "FILE")]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph against the necessary conditions and classify it.
    Analyze(analyze::AnalyzeArgs),
    /// Build graphs from the constructive families.
    #[command(subcommand)]
    Construct(construct::ConstructCommand),
    /// Enumerate every graph on n vertices up to isomorphism.
    Enumerate(enumerate::EnumerateArgs),
    /// Build the Eulerian catalog and compare its size with the lower bound.
    VerifyBound(enumerate::VerifyBoundArgs),
    /// Check the structural results on every class of a given order.
    Sweep(enumerate::SweepArgs),
}

/// Flags shared by every command that writes results.
#[derive(Args, Clone, Debug, Default)]
pub struct OutputArgs {
    /// Print machine JSON to standard output instead of text.
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON result to this file.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

/// Exit status: 0 pass, 1 verified false, 2 usage or input error.
#[derive(Debug)]
pub enum Failure {
    Negative,
    Input(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut run = Run::new(std::env::args().collect());
    let result = match &cli.command {
        Command::Analyze(a) => analyze::run(a, &mut run),
        Command::Construct(c) => construct::run(c, &mut run),
        Command::Enumerate(e) => enumerate::run_enumerate(e, &mut run),
        Command::VerifyBound(v) => enumerate::run_verify_bound(v, &mut run),
        Command::Sweep(s) => enumerate::run_sweep(s, &mut run),
    };
    let result = result.and_then(|pass| {
        if let Some(path) = &cli.manifest {
            run.write_manifest(path)?;
        }
        Ok(pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) | Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
