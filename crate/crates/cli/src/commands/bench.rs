use std::path::{Path, PathBuf};

use clap::Args;
use tl1denoise::{add_gaussian_noise, NoiseSpec, SolverParams};

use crate::commands::{
    file_stem, parse_grid, read_input, run_single, run_sweep, MethodArg, ObjectiveArg, RunConfig,
    SweepGrid,
};
use crate::error::{CliError, CliResult};
use crate::report::{bench_csv_line, markdown_table, print_stdout, write_text, BenchRow, BENCH_CSV_HEADER};

/// Build an SSIM/PSNR comparison table over images and methods.
///
/// Each image is treated as clean ground truth; noise is synthesized in
/// memory from --sigma/--seed (no quantization of the noisy intermediate),
/// every requested method denoises it, and the resulting metrics form one
/// table row per (method, image) pair.
#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Image files and/or directories (directories expand to their .pgm and
    /// .png entries in name order)
    #[arg(long, num_args = 1.., required = true)]
    pub images: Vec<PathBuf>,
    /// Comma-separated subset of {tl1, l1}
    #[arg(long, default_value = "tl1,l1")]
    pub methods: String,
    /// Noise standard deviation applied to every image
    #[arg(long)]
    pub sigma: f64,
    /// Noise seed applied to every image
    #[arg(long)]
    pub seed: u64,
    /// Fixed TL1 parameters; alternative to --auto-sweep
    #[arg(long, requires_all = ["tl1_mu", "tl1_lambda"])]
    pub tl1_a: Option<f64>,
    #[arg(long)]
    pub tl1_mu: Option<f64>,
    #[arg(long)]
    pub tl1_lambda: Option<f64>,
    /// Fixed L1 parameters; alternative to --auto-sweep
    #[arg(long, requires = "l1_lambda")]
    pub l1_mu: Option<f64>,
    #[arg(long)]
    pub l1_lambda: Option<f64>,
    /// Tune each (method, image) pair by grid search instead of fixed params
    #[arg(long)]
    pub auto_sweep: bool,
    /// Grids for --auto-sweep
    #[arg(long, default_value = "5,10,20,40")]
    pub mu_grid: String,
    #[arg(long, default_value = "1,2,5,10")]
    pub lambda_grid: String,
    #[arg(long, default_value = "0.1,0.5,1,4")]
    pub a_grid: String,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Ssim)]
    pub objective: ObjectiveArg,
    /// Write the CSV table here (otherwise it prints after the markdown)
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    /// Write the markdown table here (otherwise it prints to stdout)
    #[arg(long)]
    pub out_md: Option<PathBuf>,
    #[arg(long, default_value_t = SolverParams::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = SolverParams::DEFAULT_MAX_ITERS)]
    pub max_iters: usize,
    /// Record wall-clock seconds; off by default so reruns with the same
    /// flags reproduce the tables byte for byte
    #[arg(long)]
    pub timings: bool,
}

fn expand_images(inputs: &[PathBuf]) -> CliResult<Vec<PathBuf>> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(input)
                .map_err(|e| CliError::Io(format!("cannot list {}: {e}", input.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| {
                    matches!(
                        p.extension().and_then(|e| e.to_str()),
                        Some("pgm") | Some("png")
                    )
                })
                .collect();
            entries.sort();
            if entries.is_empty() {
                return Err(CliError::Io(format!(
                    "directory {} contains no .pgm or .png images",
                    input.display()
                )));
            }
            files.extend(entries);
        } else if input.is_file() {
            files.push(input.clone());
        } else {
            return Err(CliError::Io(format!(
                "image path {} does not exist",
                input.display()
            )));
        }
    }
    Ok(files)
}

fn parse_methods(text: &str) -> CliResult<Vec<MethodArg>> {
    let mut methods = Vec::new();
    for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match token {
            "tl1" => methods.push(MethodArg::Tl1),
            "l1" => methods.push(MethodArg::L1),
            other => {
                return Err(CliError::usage(format!(
                    "--methods accepts tl1 and l1, got `{other}`"
                )))
            }
        }
    }
    if methods.is_empty() {
        return Err(CliError::usage("--methods must name at least one method"));
    }
    Ok(methods)
}

fn bench_one(
    args: &BenchArgs,
    grid: &SweepGrid,
    method: MethodArg,
    path: &Path,
) -> CliResult<BenchRow> {
    let clean = read_input(path)?;
    let noisy = add_gaussian_noise(
        &clean,
        &NoiseSpec {
            sigma: args.sigma,
            seed: args.seed,
        },
    );
    let name = file_stem(path);
    let config = RunConfig {
        tol: args.tol,
        max_iters: args.max_iters,
        timings: args.timings,
    };
    if args.auto_sweep {
        let (rows, best) = run_sweep(&clean, &noisy, method, grid, &name, &config)?;
        return Ok(rows[best].clone());
    }
    let (a, mu, lambda) = match method {
        MethodArg::Tl1 => match (args.tl1_a, args.tl1_mu, args.tl1_lambda) {
            (Some(a), Some(mu), Some(lambda)) => (a, mu, lambda),
            _ => {
                return Err(CliError::usage(
                    "tl1 needs --tl1-a/--tl1-mu/--tl1-lambda (or --auto-sweep)",
                ))
            }
        },
        MethodArg::L1 => match (args.l1_mu, args.l1_lambda) {
            (Some(mu), Some(lambda)) => (0.0, mu, lambda),
            _ => {
                return Err(CliError::usage(
                    "l1 needs --l1-mu/--l1-lambda (or --auto-sweep)",
                ))
            }
        },
    };
    run_single(
        &clean,
        &noisy,
        method,
        (mu, lambda, if method == MethodArg::L1 { 1.0 } else { a }),
        &name,
        &config,
    )
    .map(|mut row| {
        if method == MethodArg::L1 {
            row.a = 0.0;
        }
        row
    })
}

pub fn run(args: &BenchArgs) -> CliResult<()> {
    if !(args.sigma >= 0.0 && args.sigma.is_finite()) {
        return Err(CliError::usage(format!(
            "--sigma must be nonnegative and finite, got {}",
            args.sigma
        )));
    }
    let methods = parse_methods(&args.methods)?;
    let files = expand_images(&args.images)?;
    let grid = SweepGrid {
        mu_values: parse_grid("--mu-grid", &args.mu_grid)?,
        lambda_values: parse_grid("--lambda-grid", &args.lambda_grid)?,
        a_values: parse_grid("--a-grid", &args.a_grid)?,
        objective: args.objective,
    };
    if args.auto_sweep {
        grid.validate()?;
    }

    let mut rows = Vec::new();
    for method in &methods {
        for file in &files {
            rows.push(bench_one(args, &grid, *method, file)?);
        }
    }

    let image_names: Vec<String> = files.iter().map(|p| file_stem(p)).collect();
    let method_names: Vec<String> = methods.iter().map(|m| m.name().to_string()).collect();
    let markdown = markdown_table(&image_names, &method_names, &rows);

    let mut csv = String::from(BENCH_CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&bench_csv_line(row));
        csv.push('\n');
    }

    match &args.out_md {
        Some(path) => write_text(path, &markdown)?,
        None => print_stdout(&markdown),
    }
    match &args.out_csv {
        Some(path) => write_text(path, &csv)?,
        None => {
            print_stdout("\n");
            print_stdout(&csv);
        }
    }
    Ok(())
}
