use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use presympt::{ExperimentKind, run_from_files};

/// Presymplectic integration experiments.
#[derive(Parser)]
#[command(name = "presympt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one system and record the trajectory.
    Simulate(Io),
    /// Fit convergence orders from a step-size sweep.
    Order(Io),
    /// Final gradient norm over a (gamma, h) grid.
    PhaseSweep(Io),
    /// Objective gap against the continuous-time rate.
    RateReport(Io),
    /// Monte Carlo benchmark on random quadratics.
    QuadBench(Io),
}

#[derive(Args)]
struct Io {
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, io) = match cli.command {
        Command::Simulate(io) => (ExperimentKind::Simulate, io),
        Command::Order(io) => (ExperimentKind::Order, io),
        Command::PhaseSweep(io) => (ExperimentKind::PhaseSweep, io),
        Command::RateReport(io) => (ExperimentKind::RateReport, io),
        Command::QuadBench(io) => (ExperimentKind::QuadBench, io),
    };
    match run_from_files(kind, &io.config, &io.out, io.threads) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("presympt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
