//! `mfao` — command-line front end for the two-mode fermion laboratory.
//!
//! Exit codes: 0 success, 1 validation failure, 2 argument error, 3 I/O
//! failure.

mod config;
mod output;
mod run;

use clap::Parser;
use std::process::ExitCode;

use config::{RunArgs, RunConfig};

#[derive(Parser)]
#[command(
    name = "mfao",
    version,
    about = "Two interacting fermion modes in a constant magnetic field: exact \
             spectra and evolution, quasiparticle transformations, mean-field \
             dynamics, symmetry classification, and the classical precession \
             picture."
)]
struct Cli {
    #[command(subcommand)]
    command: CommandKind,
}

#[derive(clap::Subcommand)]
enum CommandKind {
    /// Closed-form energy spectrum of the four basis states
    Spectrum(RunArgs),
    /// Exact state evolution with observable expectation values
    EvolveExact(RunArgs),
    /// Mean-field trajectory of the transformation angles
    EvolveMeanfield(RunArgs),
    /// Symmetry survey of the six special parameterizations
    SymmetryReport(RunArgs),
    /// Quantum vs classical precession equivalence report
    ClassicalCheck(RunArgs),
    /// Run the full property-check suite (exit 1 on any failure)
    Validate(RunArgs),
}

impl CommandKind {
    fn parts(&self) -> (&'static str, &RunArgs) {
        match self {
            CommandKind::Spectrum(a) => ("spectrum", a),
            CommandKind::EvolveExact(a) => ("evolve-exact", a),
            CommandKind::EvolveMeanfield(a) => ("evolve-meanfield", a),
            CommandKind::SymmetryReport(a) => ("symmetry-report", a),
            CommandKind::ClassicalCheck(a) => ("classical-check", a),
            CommandKind::Validate(a) => ("validate", a),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = cli.command.parts();
    let outcome = RunConfig::resolve(args).and_then(|cfg| run::dispatch(name, &cfg));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
