//! Scalar and elementwise proximal operators.
//!
//! The transformed-L1 penalty `(a+1)|x| / (a+|x|)` interpolates between an
//! L0-like count (a -> 0) and the L1 norm (a -> infinity). Its proximal
//! mapping with quadratic weight `lambda`,
//!
//! ```text
//! prox(x) = argmin_v  (a+1)|v|/(a+|v|) + (lambda/2) (v - x)^2
//! ```
//!
//! has a closed form: a threshold below which the output is zero and, above
//! it, the largest root of the stationarity cubic expressed trigonometrically.
//! [`prox_tl1_oracle`] is an independent brute-force minimizer kept for
//! validating the closed form; tests assert the closed form never loses to it.

use crate::image::Plane;

/// Shape and step parameters of the TL1 proximal operator.
///
/// `beta` is the quadratic step `1/lambda`: the prox solves
/// `argmin_v tl1_a(v) + (1/(2 beta)) (v - x)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tl1Params {
    pub a: f64,
    pub beta: f64,
}

impl Tl1Params {
    /// Parameters for the prox as it appears inside ADMM, where the
    /// quadratic carries weight `lambda/2`.
    pub fn from_penalty_weight(a: f64, lambda: f64) -> Self {
        assert!(a > 0.0 && lambda > 0.0, "a and lambda must be positive");
        Self { a, beta: 1.0 / lambda }
    }

    pub fn lambda(&self) -> f64 {
        1.0 / self.beta
    }

    /// Magnitude below which the prox returns exactly zero.
    pub fn threshold(&self) -> f64 {
        prox_tl1_threshold(self.lambda(), self.a)
    }

    pub fn prox(&self, x: f64) -> f64 {
        prox_tl1_scalar(x, self.lambda(), self.a)
    }
}

/// Single transformed-L1 term `(a+1)|x| / (a + |x|)`.
#[inline]
pub fn tl1_value(x: f64, a: f64) -> f64 {
    let ax = x.abs();
    (a + 1.0) * ax / (a + ax)
}

/// Transformed-L1 penalty of a vector: sum of [`tl1_value`] over entries.
pub fn tl1_penalty(xs: &[f64], a: f64) -> f64 {
    debug_assert!(a > 0.0);
    xs.iter().map(|&x| tl1_value(x, a)).sum()
}

/// Soft-thresholding `sign(x) * max(|x| - t, 0)`, the proximal operator of
/// the absolute value with threshold `t`.
#[inline]
pub fn soft_threshold(x: f64, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    let shrunk = x.abs() - t;
    if shrunk > 0.0 {
        shrunk * x.signum()
    } else {
        0.0
    }
}

/// Objective of the scalar TL1 prox problem at candidate `v`.
#[inline]
pub fn prox_objective(v: f64, x: f64, lambda: f64, a: f64) -> f64 {
    tl1_value(v, a) + 0.5 * lambda * (v - x) * (v - x)
}

/// Zero/nonzero threshold of the TL1 prox for quadratic weight `lambda`.
///
/// With `beta = 1/lambda`: `beta * (a+1)/a` in the small-step regime
/// `beta <= a^2 / (2(a+1))`, else `sqrt(2 beta (a+1)) - a/2`.
pub fn prox_tl1_threshold(lambda: f64, a: f64) -> f64 {
    debug_assert!(lambda > 0.0 && a > 0.0);
    let beta = 1.0 / lambda;
    if beta <= a * a / (2.0 * (a + 1.0)) {
        beta * (a + 1.0) / a
    } else {
        (2.0 * beta * (a + 1.0)).sqrt() - 0.5 * a
    }
}

/// Closed-form TL1 proximal operator,
/// `argmin_v (a+1)|v|/(a+|v|) + (lambda/2)(v - x)^2`.
///
/// Ties at the threshold resolve to 0, so the output is the sparser of the
/// two global minimizers when both exist.
pub fn prox_tl1_scalar(x: f64, lambda: f64, a: f64) -> f64 {
    debug_assert!(lambda > 0.0 && a > 0.0 && x.is_finite());
    let t = prox_tl1_threshold(lambda, a);
    let ax = x.abs();
    if ax <= t {
        return 0.0;
    }
    let beta = 1.0 / lambda;
    // Largest root of (v - |x|)(a + v)^2 + beta a (a+1) = 0 via the
    // trigonometric solution of the depressed cubic. The arccos argument can
    // stray past [-1, 1] by round-off.
    let s = a + ax;
    let arg = (1.0 - 27.0 * beta * a * (a + 1.0) / (2.0 * s * s * s)).clamp(-1.0, 1.0);
    let phi = arg.acos();
    let magnitude = (2.0 / 3.0) * s * (phi / 3.0).cos() - 2.0 * a / 3.0 + ax / 3.0;
    // Round-off can push the root marginally past |x|; the minimizer never
    // exceeds the input in magnitude.
    magnitude.clamp(0.0, ax) * x.signum()
}

/// Elementwise [`prox_tl1_scalar`] over a plane.
pub fn prox_tl1_plane(z: &Plane, lambda: f64, a: f64) -> Plane {
    z.mapv(|x| prox_tl1_scalar(x, lambda, a))
}

/// Elementwise [`soft_threshold`] over a plane.
pub fn soft_threshold_plane(z: &Plane, t: f64) -> Plane {
    z.mapv(|x| soft_threshold(x, t))
}

/// Brute-force global minimizer of the TL1 prox objective.
///
/// Scans a dense grid over `[0, |x|]` (the minimizer shares the sign of `x`
/// and never grows in magnitude), then refines the best cell by golden-section
/// search down to an interval of 1e-12. Independent of the closed form above;
/// exists to validate it and is far too slow for production use.
pub fn prox_tl1_oracle(x: f64, lambda: f64, a: f64) -> f64 {
    assert!(lambda > 0.0 && a > 0.0 && x.is_finite());
    if x == 0.0 {
        return 0.0;
    }
    let ax = x.abs();
    const GRID: usize = 100_000;
    let step = ax / GRID as f64;
    let mut best_idx = 0usize;
    let mut best_val = prox_objective(0.0, ax, lambda, a);
    for idx in 1..=GRID {
        let v = idx as f64 * step;
        let val = prox_objective(v, ax, lambda, a);
        if val < best_val {
            best_val = val;
            best_idx = idx;
        }
    }
    let lo = step * best_idx.saturating_sub(1) as f64;
    let hi = (step * (best_idx + 1) as f64).min(ax);
    let v = golden_section_min(|v| prox_objective(v, ax, lambda, a), lo, hi, 1e-12);
    // The boundary candidate v = 0 stays in play; prefer it on ties.
    if prox_objective(0.0, ax, lambda, a) <= prox_objective(v, ax, lambda, a) {
        0.0
    } else {
        v * x.signum()
    }
}

fn golden_section_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // Iteration cap: 150 golden steps shrink any double-precision bracket to
    // its rounding floor, which can sit above an absolute tolerance when the
    // bracket endpoints are large.
    for _ in 0..150 {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}
