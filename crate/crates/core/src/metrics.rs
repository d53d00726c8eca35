//! PSNR and SSIM for comparing a reconstruction against ground truth.
//!
//! SSIM follows the original definition: 11x11 Gaussian window with sigma
//! 1.5, stability constants `C1 = (0.01 L)^2` and `C2 = (0.03 L)^2`, and
//! valid-region filtering (no padding), so only windows fully inside the
//! image contribute. The dynamic range `L` defaults to 1 for normalized
//! images.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::image::{Image, Plane};

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
const SSIM_K1: f64 = 0.01;
const SSIM_K2: f64 = 0.03;

/// PSNR/SSIM pair for one image comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricResult {
    /// Decibels; `f64::INFINITY` for identical images.
    pub psnr_db: f64,
    pub ssim: f64,
}

/// Computes both metrics with dynamic range 1.
pub fn evaluate(test: &Image, reference: &Image) -> Result<MetricResult> {
    Ok(MetricResult {
        psnr_db: psnr(test, reference)?,
        ssim: ssim(test, reference)?,
    })
}

/// Peak signal-to-noise ratio with dynamic range 1:
/// `10 log10(1 / MSE)`, infinite when the images are identical.
pub fn psnr(test: &Image, reference: &Image) -> Result<f64> {
    psnr_with_range(test, reference, 1.0)
}

/// PSNR with an explicit dynamic range: `10 log10(L^2 / MSE)`.
pub fn psnr_with_range(test: &Image, reference: &Image, dynamic_range: f64) -> Result<f64> {
    check_shapes(test, reference)?;
    assert!(dynamic_range > 0.0, "dynamic range must be positive");
    let n = (test.height() * test.width()) as f64;
    let mse = test
        .pixels()
        .iter()
        .zip(reference.pixels().iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / n;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (dynamic_range * dynamic_range / mse).log10())
}

/// Mean structural similarity with dynamic range 1.
pub fn ssim(test: &Image, reference: &Image) -> Result<f64> {
    ssim_with_range(test, reference, 1.0)
}

/// Mean SSIM with an explicit dynamic range.
pub fn ssim_with_range(test: &Image, reference: &Image, dynamic_range: f64) -> Result<f64> {
    check_shapes(test, reference)?;
    assert!(dynamic_range > 0.0, "dynamic range must be positive");
    let (h, w) = test.shape();
    if h < SSIM_WINDOW || w < SSIM_WINDOW {
        return Err(Error::InvalidDimensions {
            height: h,
            width: w,
            reason: "SSIM needs at least an 11x11 image",
        });
    }
    let c1 = (SSIM_K1 * dynamic_range) * (SSIM_K1 * dynamic_range);
    let c2 = (SSIM_K2 * dynamic_range) * (SSIM_K2 * dynamic_range);

    let x = test.pixels();
    let y = reference.pixels();
    let window = gaussian_window();
    let mu_x = filter_valid(x, &window);
    let mu_y = filter_valid(y, &window);
    let xx = filter_valid(&(x * x), &window);
    let yy = filter_valid(&(y * y), &window);
    let xy = filter_valid(&(x * y), &window);

    let mut total = 0.0;
    for ((&mx, &my), ((&sxx, &syy), &sxy)) in mu_x
        .iter()
        .zip(mu_y.iter())
        .zip(xx.iter().zip(yy.iter()).zip(xy.iter()))
    {
        let var_x = sxx - mx * mx;
        let var_y = syy - my * my;
        let cov = sxy - mx * my;
        let num = (2.0 * mx * my + c1) * (2.0 * cov + c2);
        let den = (mx * mx + my * my + c1) * (var_x + var_y + c2);
        total += num / den;
    }
    Ok(total / mu_x.len() as f64)
}

fn check_shapes(test: &Image, reference: &Image) -> Result<()> {
    if test.shape() != reference.shape() {
        return Err(Error::ShapeMismatch {
            expected: reference.shape(),
            actual: test.shape(),
        });
    }
    Ok(())
}

/// 1-D Gaussian taps; the 2-D window is their outer product, normalized so
/// the 121 weights sum to 1.
fn gaussian_window() -> [f64; SSIM_WINDOW] {
    let mut taps = [0.0; SSIM_WINDOW];
    let center = (SSIM_WINDOW / 2) as f64;
    let mut sum = 0.0;
    for (k, tap) in taps.iter_mut().enumerate() {
        let d = k as f64 - center;
        *tap = (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
        sum += *tap;
    }
    for tap in taps.iter_mut() {
        *tap /= sum;
    }
    taps
}

/// Separable valid-region correlation with the outer-product window:
/// filter rows, then columns. Output shape (h-10) x (w-10).
fn filter_valid(plane: &Plane, taps: &[f64; SSIM_WINDOW]) -> Array2<f64> {
    let (h, w) = plane.dim();
    let wv = w - SSIM_WINDOW + 1;
    let hv = h - SSIM_WINDOW + 1;
    let mut rows = Array2::<f64>::zeros((h, wv));
    for i in 0..h {
        for j in 0..wv {
            let mut acc = 0.0;
            for (k, &t) in taps.iter().enumerate() {
                acc += t * plane[[i, j + k]];
            }
            rows[[i, j]] = acc;
        }
    }
    let mut out = Array2::<f64>::zeros((hv, wv));
    for i in 0..hv {
        for j in 0..wv {
            let mut acc = 0.0;
            for (k, &t) in taps.iter().enumerate() {
                acc += t * rows[[i + k, j]];
            }
            out[[i, j]] = acc;
        }
    }
    out
}
