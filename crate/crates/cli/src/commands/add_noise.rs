use std::path::PathBuf;

use clap::Args;
use tl1denoise::{add_gaussian_noise, write_image, NoiseSpec};

use crate::commands::{read_input, validate_bit_depth};
use crate::error::{CliError, CliResult};

/// Add seeded Gaussian noise to an image.
///
/// The noisy values are clamped only when quantized for the output file;
/// 16-bit output (the default) keeps that quantization loss negligible.
#[derive(Debug, Args)]
pub struct AddNoiseArgs {
    /// Input image (PGM P2/P5 or 8/16-bit grayscale PNG)
    #[arg(long)]
    pub input: PathBuf,
    /// Output image path (.pgm or .png)
    #[arg(long)]
    pub output: PathBuf,
    /// Noise standard deviation in normalized intensity units
    #[arg(long)]
    pub sigma: f64,
    /// RNG seed; the same seed always reproduces the same noise
    #[arg(long)]
    pub seed: u64,
    /// Output sample depth (8 or 16)
    #[arg(long, default_value_t = 16)]
    pub bit_depth: u8,
}

pub fn run(args: &AddNoiseArgs) -> CliResult<()> {
    let depth = validate_bit_depth(args.bit_depth)?;
    if !(args.sigma >= 0.0 && args.sigma.is_finite()) {
        return Err(CliError::usage(format!(
            "--sigma must be nonnegative and finite, got {}",
            args.sigma
        )));
    }
    let clean = read_input(&args.input)?;
    let noisy = add_gaussian_noise(
        &clean,
        &NoiseSpec {
            sigma: args.sigma,
            seed: args.seed,
        },
    );
    write_image(&noisy, &args.output, depth)?;
    eprintln!(
        "added sigma={} noise (seed {}) -> {}; values outside [0,1] were clamped at write",
        args.sigma,
        args.seed,
        args.output.display()
    );
    Ok(())
}
