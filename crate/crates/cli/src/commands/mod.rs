//! Subcommand implementations and the shared sweep engine.

pub mod add_noise;
pub mod bench;
pub mod denoise;
pub mod evaluate;
pub mod sweep;

use std::path::Path;
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use tl1denoise::{
    denoise_with_options, evaluate as evaluate_metrics, DenoiseOptions, Image, SolverParams,
};

use crate::error::{CliError, CliResult};
use crate::report::BenchRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Tl1,
    L1,
}

impl MethodArg {
    pub fn name(self) -> &'static str {
        match self {
            MethodArg::Tl1 => "tl1",
            MethodArg::L1 => "l1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Psnr,
    Ssim,
}

impl ObjectiveArg {
    fn score(self, row: &BenchRow) -> f64 {
        match self {
            ObjectiveArg::Psnr => row.psnr_db,
            ObjectiveArg::Ssim => row.ssim,
        }
    }
}

/// Cartesian parameter grid for one method.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub mu_values: Vec<f64>,
    pub lambda_values: Vec<f64>,
    /// Ignored (collapsed to a single placeholder) for the L1 method.
    pub a_values: Vec<f64>,
    pub objective: ObjectiveArg,
}

impl SweepGrid {
    pub fn validate(&self) -> CliResult<()> {
        for (name, values) in [
            ("--mu-grid", &self.mu_values),
            ("--lambda-grid", &self.lambda_values),
            ("--a-grid", &self.a_values),
        ] {
            if values.is_empty() {
                return Err(CliError::usage(format!("{name} must not be empty")));
            }
            if values.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
                return Err(CliError::usage(format!("{name} values must be positive")));
            }
            if values.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CliError::usage(format!(
                    "{name} values must be strictly ascending"
                )));
            }
        }
        Ok(())
    }
}

/// Parses a comma-separated list of floats.
pub fn parse_grid(flag: &'static str, text: &str) -> CliResult<Vec<f64>> {
    let values: Vec<f64> = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::usage(format!("{flag}: cannot parse `{t}` as a number")))
        })
        .collect::<CliResult<_>>()?;
    if values.is_empty() {
        return Err(CliError::usage(format!("{flag} must not be empty")));
    }
    Ok(values)
}

pub fn read_input(path: &Path) -> CliResult<Image> {
    tl1denoise::read_image(path).map_err(CliError::from)
}

pub fn validate_bit_depth(bits: u8) -> CliResult<tl1denoise::BitDepth> {
    match bits {
        8 => Ok(tl1denoise::BitDepth::Eight),
        16 => Ok(tl1denoise::BitDepth::Sixteen),
        other => Err(CliError::usage(format!(
            "--bit-depth must be 8 or 16, got {other}"
        ))),
    }
}

pub fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Stopping settings and timing policy shared by every run in a command.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub tol: f64,
    pub max_iters: usize,
    /// Record wall-clock seconds; when false the seconds column is 0 so
    /// reruns reproduce output byte for byte.
    pub timings: bool,
}

/// Runs every grid point, in parallel across points but with output in grid
/// order, so results are deterministic regardless of scheduling. Returns the
/// rows and the index of the best row under the grid's objective (ties break
/// toward the earlier grid point).
pub fn run_sweep(
    clean: &Image,
    noisy: &Image,
    method: MethodArg,
    grid: &SweepGrid,
    image_name: &str,
    config: &RunConfig,
) -> CliResult<(Vec<BenchRow>, usize)> {
    grid.validate()?;
    let placeholder_a = [0.0_f64];
    let a_values: &[f64] = match method {
        MethodArg::Tl1 => &grid.a_values,
        MethodArg::L1 => &placeholder_a,
    };
    let mut points = Vec::new();
    for &mu in &grid.mu_values {
        for &lambda in &grid.lambda_values {
            for &a in a_values {
                points.push((mu, lambda, a));
            }
        }
    }

    let rows: Vec<CliResult<BenchRow>> = points
        .par_iter()
        .map(|&point| run_single(clean, noisy, method, point, image_name, config))
        .collect();
    let rows: Vec<BenchRow> = rows.into_iter().collect::<CliResult<_>>()?;

    let best = rows
        .iter()
        .enumerate()
        .max_by(|(ia, ra), (ib, rb)| {
            grid.objective
                .score(ra)
                .partial_cmp(&grid.objective.score(rb))
                .expect("metric scores are not NaN")
                .then(ib.cmp(ia))
        })
        .map(|(i, _)| i)
        .expect("grid is nonempty");
    Ok((rows, best))
}

/// One denoise run with parameters `(mu, lambda, a)`, evaluated against the
/// clean reference.
pub fn run_single(
    clean: &Image,
    noisy: &Image,
    method: MethodArg,
    (mu, lambda, a): (f64, f64, f64),
    image_name: &str,
    config: &RunConfig,
) -> CliResult<BenchRow> {
    let mut params = match method {
        MethodArg::Tl1 => SolverParams::tl1(a, mu, lambda),
        MethodArg::L1 => SolverParams::l1(mu, lambda),
    };
    params.tol = config.tol;
    params.max_iters = config.max_iters;
    let start = Instant::now();
    let (restored, report) = denoise_with_options(
        noisy,
        &params,
        &DenoiseOptions {
            collect_traces: false,
        },
    )?;
    let seconds = if config.timings {
        start.elapsed().as_secs_f64()
    } else {
        0.0
    };
    let metrics = evaluate_metrics(&restored, clean)?;
    Ok(BenchRow {
        method: method.name().to_string(),
        image: image_name.to_string(),
        mu,
        lambda,
        a,
        ssim: metrics.ssim,
        psnr_db: metrics.psnr_db,
        iterations: report.iterations_run,
        seconds,
    })
}
