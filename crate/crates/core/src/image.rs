//! Image container and the periodic finite-difference operators used by the
//! solver: forward differences `D_x`/`D_y`, their adjoints, and the 5-point
//! Laplacian kernel whose circular convolution equals `D_x^T D_x + D_y^T D_y`.
//!
//! Conventions: planes are row-major with index `(i, j) = (row, column)`.
//! `grad_x` differences along columns (j), `grad_y` along rows (i), both with
//! periodic wrap-around.

use ndarray::Array2;

use crate::error::{Error, Result};

/// Row-major 2-D plane of 64-bit floats.
pub type Plane = Array2<f64>;

/// A finite grayscale image of at least 2x2 pixels.
///
/// Pixel values are `f64` and nominally live in `[0, 1]`, but any finite
/// value is allowed; intermediate solver iterates and unclamped noisy images
/// go outside that range.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    pixels: Plane,
}

impl Image {
    /// Wraps a plane, validating the shape and finiteness invariants.
    pub fn new(pixels: Plane) -> Result<Self> {
        let (h, w) = pixels.dim();
        if h < 2 || w < 2 {
            return Err(Error::InvalidDimensions {
                height: h,
                width: w,
                reason: "each axis needs at least two samples",
            });
        }
        if !pixels.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "image pixels",
            });
        }
        Ok(Self { pixels })
    }

    /// Constant-valued image.
    pub fn constant(height: usize, width: usize, value: f64) -> Result<Self> {
        Self::new(Plane::from_elem((height, width), value))
    }

    /// Builds an image from a per-pixel function of `(row, col)`.
    pub fn from_fn(
        height: usize,
        width: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        Self::new(Plane::from_shape_fn((height, width), |(i, j)| f(i, j)))
    }

    pub fn height(&self) -> usize {
        self.pixels.nrows()
    }

    pub fn width(&self) -> usize {
        self.pixels.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.pixels.dim()
    }

    pub fn pixels(&self) -> &Plane {
        &self.pixels
    }

    pub fn into_pixels(self) -> Plane {
        self.pixels
    }
}

/// Pair of same-shape planes holding the x- and y-components of a gradient
/// (or of the solver's auxiliary/dual variables, which share that layout).
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    pub dx: Plane,
    pub dy: Plane,
}

impl GradientField {
    pub fn zeros(height: usize, width: usize) -> Self {
        Self {
            dx: Plane::zeros((height, width)),
            dy: Plane::zeros((height, width)),
        }
    }

    /// Forward-difference gradient of a plane.
    pub fn of(u: &Plane) -> Self {
        Self {
            dx: grad_x(u),
            dy: grad_y(u),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        self.dx.dim()
    }
}

fn assert_plane(u: &Plane) {
    let (h, w) = u.dim();
    assert!(h >= 2 && w >= 2, "plane must be at least 2x2, got {h}x{w}");
}

/// Forward difference along columns with periodic wrap:
/// `out[i,j] = u[i,(j+1) mod M] - u[i,j]`.
pub fn grad_x(u: &Plane) -> Plane {
    assert_plane(u);
    let (h, w) = u.dim();
    Plane::from_shape_fn((h, w), |(i, j)| u[[i, (j + 1) % w]] - u[[i, j]])
}

/// Forward difference along rows with periodic wrap:
/// `out[i,j] = u[(i+1) mod N, j] - u[i,j]`.
pub fn grad_y(u: &Plane) -> Plane {
    assert_plane(u);
    let (h, w) = u.dim();
    Plane::from_shape_fn((h, w), |(i, j)| u[[(i + 1) % h, j]] - u[[i, j]])
}

/// Adjoint of [`grad_x`] under the periodic inner product:
/// `out[i,j] = p[i,(j-1) mod M] - p[i,j]`, so that
/// `<grad_x(u), p> = <u, div_x(p)>` exactly.
pub fn div_x(p: &Plane) -> Plane {
    assert_plane(p);
    let (h, w) = p.dim();
    Plane::from_shape_fn((h, w), |(i, j)| p[[i, (j + w - 1) % w]] - p[[i, j]])
}

/// Adjoint of [`grad_y`]: `out[i,j] = p[(i-1) mod N, j] - p[i,j]`.
pub fn div_y(p: &Plane) -> Plane {
    assert_plane(p);
    let (h, w) = p.dim();
    Plane::from_shape_fn((h, w), |(i, j)| p[[(i + h - 1) % h, j]] - p[[i, j]])
}

/// The 5-point periodic Laplacian kernel.
///
/// Circular convolution of a plane with this kernel equals
/// `div_x(grad_x(u)) + div_y(grad_y(u))`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianKernel {
    plane: Plane,
}

impl LaplacianKernel {
    pub fn plane(&self) -> &Plane {
        &self.plane
    }

    pub fn shape(&self) -> (usize, usize) {
        self.plane.dim()
    }
}

/// Builds the Laplacian kernel for an `height x width` grid:
/// 4 at the origin, -1 at the four periodic nearest neighbors.
pub fn laplacian_kernel(height: usize, width: usize) -> Result<LaplacianKernel> {
    if height < 2 || width < 2 {
        return Err(Error::InvalidDimensions {
            height,
            width,
            reason: "Laplacian kernel needs at least a 2x2 grid",
        });
    }
    let mut plane = Plane::zeros((height, width));
    // Accumulate rather than assign: on a 2-sample axis the +1 and -1
    // neighbors coincide and their contributions stack to -2.
    plane[[0, 0]] += 4.0;
    plane[[0, 1]] += -1.0;
    plane[[1, 0]] += -1.0;
    plane[[height - 1, 0]] += -1.0;
    plane[[0, width - 1]] += -1.0;
    Ok(LaplacianKernel { plane })
}

/// Euclidean inner product of two planes.
pub fn dot(a: &Plane, b: &Plane) -> f64 {
    debug_assert_eq!(a.dim(), b.dim());
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// Euclidean norm of a plane.
pub fn norm_l2(a: &Plane) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Max-abs norm of a plane.
pub fn norm_inf(a: &Plane) -> f64 {
    a.iter().fold(0.0_f64, |m, &x| m.max(x.abs()))
}
