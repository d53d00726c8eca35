use std::path::PathBuf;

use clap::Args;
use tl1denoise::{denoise, write_image, Image, SolverParams};

use crate::commands::{read_input, validate_bit_depth, MethodArg};
use crate::error::{CliError, CliResult};
use crate::report::{write_json, ReportDoc};

/// Denoise a grayscale image.
#[derive(Debug, Args)]
pub struct DenoiseArgs {
    /// Input image (PGM P2/P5 or 8/16-bit grayscale PNG)
    #[arg(long)]
    pub input: PathBuf,
    /// Output image path (.pgm or .png)
    #[arg(long)]
    pub output: PathBuf,
    /// Gradient penalty
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// TL1 shape parameter (required for --method tl1, ignored for l1)
    #[arg(long)]
    pub a: Option<f64>,
    /// Fidelity weight
    #[arg(long)]
    pub mu: f64,
    /// Splitting penalty weight (prox step is 1/lambda)
    #[arg(long)]
    pub lambda: f64,
    /// Relative-change stopping tolerance
    #[arg(long, default_value_t = SolverParams::DEFAULT_TOL)]
    pub tol: f64,
    /// Iteration cap
    #[arg(long, default_value_t = SolverParams::DEFAULT_MAX_ITERS)]
    pub max_iters: usize,
    /// Clamp the result to [0, 1] before writing
    #[arg(long)]
    pub clamp: bool,
    /// Write a JSON solver report (schema_version 1) to this path
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Output sample depth (8 or 16)
    #[arg(long, default_value_t = 8)]
    pub bit_depth: u8,
}

pub fn run(args: &DenoiseArgs) -> CliResult<()> {
    let depth = validate_bit_depth(args.bit_depth)?;
    let mut params = match args.method {
        MethodArg::Tl1 => {
            let a = args.a.ok_or_else(|| {
                CliError::usage("--a is required when --method is tl1")
            })?;
            SolverParams::tl1(a, args.mu, args.lambda)
        }
        MethodArg::L1 => SolverParams::l1(args.mu, args.lambda),
    };
    params.tol = args.tol;
    params.max_iters = args.max_iters;
    params.validate()?;

    let noisy = read_input(&args.input)?;
    let (restored, solver_report) = denoise(&noisy, &params)?;
    let output = if args.clamp {
        Image::new(restored.pixels().mapv(|v| v.clamp(0.0, 1.0)))
            .expect("clamped image stays valid")
    } else {
        restored
    };
    write_image(&output, &args.output, depth)?;

    if let Some(report_path) = &args.report {
        let doc = ReportDoc {
            schema_version: ReportDoc::SCHEMA_VERSION,
            method: args.method.name().to_string(),
            a: match args.method {
                MethodArg::Tl1 => args.a,
                MethodArg::L1 => None,
            },
            mu: args.mu,
            lambda: args.lambda,
            tol: args.tol,
            max_iters: args.max_iters,
            clamped: args.clamp,
            iterations_run: solver_report.iterations_run,
            converged: solver_report.converged,
            final_rel_change: solver_report.final_rel_change,
            elapsed_seconds: solver_report.elapsed.as_secs_f64(),
            rel_change_trace: solver_report.rel_change_trace.clone(),
            primal_residual_trace: solver_report.primal_residual_trace.clone(),
            objective_trace: solver_report.objective_trace.clone(),
        };
        write_json(report_path, &doc)?;
    }
    eprintln!(
        "denoised {} -> {} ({} iterations, converged: {})",
        args.input.display(),
        args.output.display(),
        solver_report.iterations_run,
        solver_report.converged
    );
    Ok(())
}
