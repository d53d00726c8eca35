//! Command-line front end for TL1 gradient denoising.
//!
//! Exit codes: 0 success, 2 usage error, 3 I/O failure, 4 numeric failure.
//! Every subcommand is deterministic given its flags: noise seeds are
//! explicit and timing columns default to zero (enable with --timings).
//! Grid parallelism honors the RAYON_NUM_THREADS environment variable.

mod commands;
mod error;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "tl1denoise",
    version,
    about = "Grayscale image denoising with transformed-L1 gradient regularization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    Denoise(commands::denoise::DenoiseArgs),
    AddNoise(commands::add_noise::AddNoiseArgs),
    Evaluate(commands::evaluate::EvaluateArgs),
    Sweep(commands::sweep::SweepArgs),
    Bench(commands::bench::BenchArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Denoise(args) => commands::denoise::run(args),
        Command::AddNoise(args) => commands::add_noise::run(args),
        Command::Evaluate(args) => commands::evaluate::run(args),
        Command::Sweep(args) => commands::sweep::run(args),
        Command::Bench(args) => commands::bench::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
