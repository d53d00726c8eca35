use std::path::PathBuf;

use clap::{Args, ValueEnum};
use tl1denoise::{psnr_with_range, ssim_with_range};

use crate::commands::read_input;
use crate::error::{CliError, CliResult};
use crate::report::{fmt_metric, json_metric, print_stdout};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// Compare a test image against a reference with PSNR and SSIM.
#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Image under evaluation
    #[arg(long)]
    pub test: PathBuf,
    /// Ground-truth reference (same dimensions)
    #[arg(long)]
    pub reference: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Dynamic range L of the metrics (1 for normalized data, 255 for
    /// 8-bit conventions)
    #[arg(long, default_value_t = 1.0)]
    pub dynamic_range: f64,
}

pub fn run(args: &EvaluateArgs) -> CliResult<()> {
    if !(args.dynamic_range > 0.0 && args.dynamic_range.is_finite()) {
        return Err(CliError::usage(format!(
            "--dynamic-range must be positive and finite, got {}",
            args.dynamic_range
        )));
    }
    let test = read_input(&args.test)?;
    let reference = read_input(&args.reference)?;
    let psnr_db = psnr_with_range(&test, &reference, args.dynamic_range)?;
    let ssim = ssim_with_range(&test, &reference, args.dynamic_range)?;

    let text = match args.format {
        Format::Plain => format!("psnr_db: {}\nssim: {}\n", fmt_metric(psnr_db), fmt_metric(ssim)),
        Format::Csv => format!("psnr_db,ssim\n{},{}\n", fmt_metric(psnr_db), fmt_metric(ssim)),
        Format::Json => {
            let doc = serde_json::json!({
                "psnr_db": json_metric(psnr_db),
                "ssim": json_metric(ssim),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
    };
    print_stdout(&text);
    Ok(())
}
