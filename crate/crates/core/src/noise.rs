//! Seeded Gaussian noise synthesis and a piecewise-constant test phantom.
//!
//! Reproducibility contract: samples come from the ChaCha20 stream cipher RNG
//! (`rand_chacha` 0.9, seeded with `SeedableRng::seed_from_u64`) pushed
//! through an explicit Box-Muller transform, visiting pixels in row-major
//! order. Uniforms are built as `((bits >> 11) + 1) * 2^-53`, i.e. on `(0, 1]`
//! so the logarithm is always defined. The same `(sigma, seed)` therefore
//! yields the same noise plane on every platform and release.

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::image::{Image, Plane};

/// Noise strength and seed for reproducible synthesis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    /// Standard deviation in normalized intensity units.
    pub sigma: f64,
    pub seed: u64,
}

/// Deterministic stream of standard normal samples.
struct GaussianSource {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl GaussianSource {
    fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha20Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform double on (0, 1] from the top 53 bits of a draw.
    fn uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 1.0) * (1.0 / 9_007_199_254_740_992.0)
    }

    fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let radius = (-2.0 * self.uniform().ln()).sqrt();
        let angle = std::f64::consts::TAU * self.uniform();
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }
}

/// Adds i.i.d. `N(0, sigma^2)` noise to every pixel.
///
/// The result is deliberately not clamped to `[0, 1]`; the additive model the
/// solver assumes has unbounded support. Clamping happens only at file-write
/// time.
pub fn add_gaussian_noise(img: &Image, spec: &NoiseSpec) -> Image {
    assert!(
        spec.sigma >= 0.0 && spec.sigma.is_finite(),
        "sigma must be nonnegative and finite"
    );
    if spec.sigma == 0.0 {
        return img.clone();
    }
    let mut source = GaussianSource::new(spec.seed);
    let noisy = img.pixels().map(|&v| v + spec.sigma * source.next());
    Image::new(noisy).expect("finite input plus finite noise stays finite")
}

/// Which synthetic phantom to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhantomKind {
    /// Piecewise-constant geometry: two rectangles, a disk, and a triangle
    /// at distinct gray levels on a flat background. Gradients are zero
    /// except on shape boundaries.
    Shapes,
}

/// Generates a deterministic piecewise-constant phantom.
///
/// Geometry scales with the requested size; both dimensions must be at least
/// 64 so the shapes stay resolvable.
pub fn make_phantom(height: usize, width: usize, kind: PhantomKind) -> Result<Image> {
    if height < 64 || width < 64 {
        return Err(Error::InvalidDimensions {
            height,
            width,
            reason: "phantom requires at least 64 samples per axis",
        });
    }
    let PhantomKind::Shapes = kind;

    let h = height as f64;
    let w = width as f64;
    let radius = 0.13 * h.min(w);
    let (disk_ci, disk_cj) = (0.32 * h, 0.75 * w);
    // Triangle vertices in (row, col) coordinates.
    let tri = [(0.55 * h, 0.15 * w), (0.92 * h, 0.30 * w), (0.75 * h, 0.88 * w)];

    let plane = Plane::from_shape_fn((height, width), |(i, j)| {
        let (y, x) = (i as f64 + 0.5, j as f64 + 0.5);
        let in_rect_a = y >= 0.10 * h && y < 0.40 * h && x >= 0.08 * w && x < 0.45 * w;
        let in_rect_b = y >= 0.12 * h && y < 0.26 * h && x >= 0.50 * w && x < 0.58 * w;
        let in_disk = {
            let (dy, dx) = (y - disk_ci, x - disk_cj);
            dy * dy + dx * dx <= radius * radius
        };
        if in_rect_a {
            0.85
        } else if in_rect_b {
            0.40
        } else if in_disk {
            0.55
        } else if point_in_triangle(y, x, &tri) {
            0.95
        } else {
            0.20
        }
    });
    Image::new(plane)
}

fn point_in_triangle(y: f64, x: f64, tri: &[(f64, f64); 3]) -> bool {
    let side = |(ay, ax): (f64, f64), (by, bx): (f64, f64)| (bx - ax) * (y - ay) - (by - ay) * (x - ax);
    let d0 = side(tri[0], tri[1]);
    let d1 = side(tri[1], tri[2]);
    let d2 = side(tri[2], tri[0]);
    let has_neg = d0 < 0.0 || d1 < 0.0 || d2 < 0.0;
    let has_pos = d0 > 0.0 || d1 > 0.0 || d2 > 0.0;
    !(has_neg && has_pos)
}
