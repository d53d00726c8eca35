//! Closed-form solver for the quadratic image subproblem
//! `(mu I + lambda (D_x^T D_x + D_y^T D_y)) u = r`.
//!
//! Under periodic boundaries the difference operators are circulant, so the
//! left-hand side diagonalizes in the 2-D Fourier basis: the solve reduces to
//! an elementwise division by `mu + lambda * F[K]` with `K` the Laplacian
//! kernel. The frequency-domain denominator is precomputed once per
//! `(shape, mu, lambda)` and shared across all solver iterations.
//!
//! FFT convention: unnormalized forward transform, inverse scaled by `1/(NM)`,
//! so a forward/inverse round trip is the identity to machine precision. The
//! ratio in the closed-form update is invariant to this choice.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::image::{div_x, div_y, norm_inf, LaplacianKernel, Plane};

/// Cached 1-D plans for a fixed `height x width` grid.
struct Fft2 {
    height: usize,
    width: usize,
    row_fwd: Arc<dyn Fft<f64>>,
    col_fwd: Arc<dyn Fft<f64>>,
    row_inv: Arc<dyn Fft<f64>>,
    col_inv: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    fn new(height: usize, width: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            height,
            width,
            row_fwd: planner.plan_fft(width, FftDirection::Forward),
            col_fwd: planner.plan_fft(height, FftDirection::Forward),
            row_inv: planner.plan_fft(width, FftDirection::Inverse),
            col_inv: planner.plan_fft(height, FftDirection::Inverse),
        }
    }

    /// Unnormalized 2-D transform of a row-major `height x width` buffer.
    /// The spectrum lands in `out` in transposed (`width x height`) layout,
    /// saving one transposition per direction on the solver's hot path.
    fn forward_into_transposed(&self, data: &mut [Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(data.len(), self.height * self.width);
        debug_assert_eq!(out.len(), data.len());
        for chunk in data.chunks_exact_mut(self.width) {
            self.row_fwd.process(chunk);
        }
        transpose(data, out, self.height, self.width);
        for chunk in out.chunks_exact_mut(self.height) {
            self.col_fwd.process(chunk);
        }
    }

    /// Unnormalized inverse of [`Self::forward_into_transposed`]: consumes a
    /// transposed spectrum, leaves a row-major image in `out`. Callers divide
    /// by `height * width` to complete the round trip.
    fn inverse_from_transposed(&self, spectrum: &mut [Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(spectrum.len(), self.height * self.width);
        debug_assert_eq!(out.len(), spectrum.len());
        for chunk in spectrum.chunks_exact_mut(self.height) {
            self.col_inv.process(chunk);
        }
        transpose(spectrum, out, self.width, self.height);
        for chunk in out.chunks_exact_mut(self.width) {
            self.row_inv.process(chunk);
        }
    }
}

/// Cache-blocked out-of-place transpose of a `rows x cols` buffer.
fn transpose(data: &[Complex64], out: &mut [Complex64], rows: usize, cols: usize) {
    const TILE: usize = 32;
    for i0 in (0..rows).step_by(TILE) {
        for j0 in (0..cols).step_by(TILE) {
            for i in i0..(i0 + TILE).min(rows) {
                for j in j0..(j0 + TILE).min(cols) {
                    out[j * rows + i] = data[i * cols + j];
                }
            }
        }
    }
}

fn to_complex(plane: &Plane) -> Vec<Complex64> {
    plane.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}

/// Frequency-domain denominator `mu + lambda * F[K]` for a fixed grid shape
/// and parameter pair, with the FFT plans it was built from.
pub struct LaplacianSpectrum {
    denom: Plane,
    /// Same values in the transposed layout the solver's FFT pipeline uses.
    denom_transposed: Vec<f64>,
    mu: f64,
    lambda: f64,
    fft: Fft2,
}

impl LaplacianSpectrum {
    pub fn denom(&self) -> &Plane {
        &self.denom
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn shape(&self) -> (usize, usize) {
        self.denom.dim()
    }
}

/// Transforms the Laplacian kernel and assembles `mu + lambda * F[K]`.
///
/// The kernel's transform is real and nonnegative; tiny imaginary or negative
/// round-off residues are stripped so `denom >= mu` holds exactly, and the
/// zero-frequency bin is pinned to `mu` (the kernel sums to zero, so its DC
/// coefficient vanishes analytically).
pub fn precompute_spectrum(
    kernel: &LaplacianKernel,
    mu: f64,
    lambda: f64,
) -> Result<LaplacianSpectrum> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "mu",
            value: mu,
            requirement: "must be positive and finite",
        });
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            requirement: "must be positive and finite",
        });
    }
    let (h, w) = kernel.shape();
    let fft = Fft2::new(h, w);
    let mut buf = to_complex(kernel.plane());
    let mut spec = vec![Complex64::default(); h * w];
    fft.forward_into_transposed(&mut buf, &mut spec);
    // The kernel sums to zero, so its zero-frequency coefficient vanishes
    // analytically; pin it against transform round-off.
    spec[0] = Complex64::new(0.0, 0.0);
    let max_imag = spec.iter().fold(0.0_f64, |m, c| m.max(c.im.abs()));
    assert!(
        max_imag <= 1e-10,
        "Laplacian kernel transform is not real: imaginary leakage {max_imag}"
    );
    let denom_transposed: Vec<f64> = spec
        .iter()
        .map(|c| mu + lambda * c.re.max(0.0))
        .collect();
    let denom = Plane::from_shape_fn((h, w), |(i, j)| denom_transposed[j * h + i]);
    Ok(LaplacianSpectrum {
        denom,
        denom_transposed,
        mu,
        lambda,
        fft,
    })
}

fn check_shape(plane: &Plane, expected: (usize, usize)) -> Result<()> {
    if plane.dim() != expected {
        return Err(Error::ShapeMismatch {
            expected,
            actual: plane.dim(),
        });
    }
    Ok(())
}

fn check_finite(plane: &Plane, context: &'static str) -> Result<()> {
    if plane.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { context })
    }
}

/// Solves `(mu I + lambda (D_x^T D_x + D_y^T D_y)) u = r` for
/// `r = mu f + lambda D_x^T(dx - bx) + lambda D_y^T(dy - by)`
/// by elementwise division in the frequency domain.
///
/// The result is real up to FFT round-off; the imaginary residue is verified
/// to be negligible relative to `r` before being discarded.
pub fn solve_u(
    f: &Plane,
    dx_minus_bx: &Plane,
    dy_minus_by: &Plane,
    spectrum: &LaplacianSpectrum,
) -> Result<Plane> {
    let shape = spectrum.shape();
    check_shape(f, shape)?;
    check_shape(dx_minus_bx, shape)?;
    check_shape(dy_minus_by, shape)?;
    check_finite(f, "solve_u input f")?;
    check_finite(dx_minus_bx, "solve_u input dx - bx")?;
    check_finite(dy_minus_by, "solve_u input dy - by")?;

    let mut r = div_x(dx_minus_bx) + div_y(dy_minus_by);
    r.mapv_inplace(|v| v * spectrum.lambda);
    r.zip_mut_with(f, |acc, &fv| *acc += spectrum.mu * fv);
    let r_scale = 1.0_f64.max(norm_inf(&r));

    let (h, w) = shape;
    let mut buf = to_complex(&r);
    let mut spec = vec![Complex64::default(); h * w];
    spectrum.fft.forward_into_transposed(&mut buf, &mut spec);
    for (c, &d) in spec.iter_mut().zip(spectrum.denom_transposed.iter()) {
        *c /= d;
    }
    spectrum.fft.inverse_from_transposed(&mut spec, &mut buf);
    let scale = 1.0 / (h * w) as f64;

    let mut max_imag = 0.0_f64;
    for c in buf.iter_mut() {
        *c *= scale;
        max_imag = max_imag.max(c.im.abs());
    }
    let u = Plane::from_shape_fn((h, w), |(i, j)| buf[i * w + j].re);
    if max_imag > 1e-8 * r_scale {
        return Err(Error::NonFinite {
            context: "solve_u imaginary residue exceeds tolerance",
        });
    }
    Ok(u)
}
