//! Grayscale image file I/O: PGM (P2 ASCII and P5 binary, maxval up to
//! 65535) and 8/16-bit grayscale PNG.
//!
//! Reading normalizes samples to `[0, 1]` by dividing by the file's maxval.
//! Writing clamps to `[0, 1]` and quantizes with `round(x * maxval)`,
//! rounding halves away from zero, so an 8-bit round trip reproduces the
//! original samples exactly.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use image::DynamicImage;

use crate::error::{Error, Result};
use crate::image::{Image, Plane};

/// Output sample depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitDepth {
    Eight,
    Sixteen,
}

impl BitDepth {
    pub fn maxval(self) -> u32 {
        match self {
            BitDepth::Eight => 255,
            BitDepth::Sixteen => 65535,
        }
    }
}

fn path_str(path: &Path) -> String {
    path.display().to_string()
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path_str(path),
        source,
    }
}

/// Reads a PGM or grayscale PNG file into a normalized image.
///
/// The container is detected from the file's magic bytes, not its extension.
pub fn read_image(path: &Path) -> Result<Image> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    match bytes.first() {
        Some(b'P') if bytes.get(1) == Some(&b'2') || bytes.get(1) == Some(&b'5') => {
            read_pgm(path, &bytes)
        }
        Some(0x89) if bytes.get(1..4) == Some(b"PNG") => read_png(path, &bytes),
        _ => Err(Error::UnsupportedFormat {
            path: path_str(path),
            detail: "expected PGM (P2/P5) or PNG magic bytes".into(),
        }),
    }
}

/// Writes an image as binary PGM (P5) or PNG depending on the extension.
pub fn write_image(img: &Image, path: &Path, bit_depth: BitDepth) -> Result<()> {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .as_deref()
    {
        Some("pgm") => write_pgm(img, path, bit_depth, false),
        Some("png") => write_png(img, path, bit_depth),
        other => Err(Error::UnsupportedFormat {
            path: path_str(path),
            detail: format!("cannot infer container from extension {other:?}; use .pgm or .png"),
        }),
    }
}

/// Writes an ASCII (P2) PGM regardless of extension.
pub fn write_pgm_ascii(img: &Image, path: &Path, bit_depth: BitDepth) -> Result<()> {
    write_pgm(img, path, bit_depth, true)
}

/// Clamp to [0, 1] and quantize; halves round away from zero.
fn quantize(v: f64, maxval: u32) -> u32 {
    (v.clamp(0.0, 1.0) * maxval as f64).round() as u32
}

fn write_pgm(img: &Image, path: &Path, bit_depth: BitDepth, ascii: bool) -> Result<()> {
    let maxval = bit_depth.maxval();
    let (h, w) = img.shape();
    let mut out: Vec<u8> = Vec::with_capacity(h * w * 2 + 64);
    let magic = if ascii { "P2" } else { "P5" };
    write!(out, "{magic}\n{w} {h}\n{maxval}\n").expect("vec write");
    if ascii {
        let mut line_len = 0usize;
        for &v in img.pixels().iter() {
            let token = quantize(v, maxval).to_string();
            if line_len > 0 && line_len + 1 + token.len() > 70 {
                out.push(b'\n');
                line_len = 0;
            }
            if line_len > 0 {
                out.push(b' ');
                line_len += 1;
            }
            out.extend_from_slice(token.as_bytes());
            line_len += token.len();
        }
        out.push(b'\n');
    } else if maxval < 256 {
        out.extend(img.pixels().iter().map(|&v| quantize(v, maxval) as u8));
    } else {
        for &v in img.pixels().iter() {
            let q = quantize(v, maxval) as u16;
            out.extend_from_slice(&q.to_be_bytes());
        }
    }
    fs::write(path, out).map_err(|e| io_err(path, e))
}

fn write_png(img: &Image, path: &Path, bit_depth: BitDepth) -> Result<()> {
    let (h, w) = img.shape();
    let save = |d: DynamicImage| {
        d.save_with_format(path, image::ImageFormat::Png)
            .map_err(|e| Error::Io {
                path: path_str(path),
                source: std::io::Error::other(e),
            })
    };
    match bit_depth {
        BitDepth::Eight => {
            let samples: Vec<u8> = img.pixels().iter().map(|&v| quantize(v, 255) as u8).collect();
            let buf = image::GrayImage::from_raw(w as u32, h as u32, samples)
                .expect("buffer sized from image shape");
            save(DynamicImage::ImageLuma8(buf))
        }
        BitDepth::Sixteen => {
            let samples: Vec<u16> = img
                .pixels()
                .iter()
                .map(|&v| quantize(v, 65535) as u16)
                .collect();
            let buf =
                image::ImageBuffer::<image::Luma<u16>, Vec<u16>>::from_raw(w as u32, h as u32, samples)
                    .expect("buffer sized from image shape");
            save(DynamicImage::ImageLuma16(buf))
        }
    }
}

fn read_png(path: &Path, bytes: &[u8]) -> Result<Image> {
    let decoded = image::load_from_memory(bytes).map_err(|e| Error::MalformedFile {
        path: path_str(path),
        detail: e.to_string(),
    })?;
    let (plane, maxval) = match decoded {
        DynamicImage::ImageLuma8(buf) => {
            let (w, h) = buf.dimensions();
            let data: Vec<f64> = buf.into_raw().iter().map(|&s| s as f64).collect();
            (shape_plane(path, h, w, data)?, 255.0)
        }
        DynamicImage::ImageLuma16(buf) => {
            let (w, h) = buf.dimensions();
            let data: Vec<f64> = buf.into_raw().iter().map(|&s| s as f64).collect();
            (shape_plane(path, h, w, data)?, 65535.0)
        }
        other => {
            return Err(Error::UnsupportedFormat {
                path: path_str(path),
                detail: format!(
                    "only 8/16-bit grayscale PNG is supported, found {:?}",
                    other.color()
                ),
            })
        }
    };
    Image::new(plane / maxval)
}

fn shape_plane(path: &Path, h: u32, w: u32, data: Vec<f64>) -> Result<Plane> {
    if h == 0 || w == 0 {
        return Err(Error::InvalidDimensions {
            height: h as usize,
            width: w as usize,
            reason: "file declares a zero dimension",
        });
    }
    Plane::from_shape_vec((h as usize, w as usize), data).map_err(|_| Error::MalformedFile {
        path: path_str(path),
        detail: "pixel count does not match declared dimensions".into(),
    })
}

fn read_pgm(path: &Path, bytes: &[u8]) -> Result<Image> {
    let malformed = |detail: &str| Error::MalformedFile {
        path: path_str(path),
        detail: detail.into(),
    };
    let ascii = bytes[1] == b'2';
    let mut pos = 2usize;
    let mut header = [0u64; 3];
    for slot in header.iter_mut() {
        let (value, next) = next_header_token(bytes, pos).ok_or_else(|| malformed("truncated header"))?;
        *slot = value;
        pos = next;
    }
    let [w, h, maxval] = header;
    if w == 0 || h == 0 {
        return Err(Error::InvalidDimensions {
            height: h as usize,
            width: w as usize,
            reason: "file declares a zero dimension",
        });
    }
    if maxval == 0 || maxval > 65535 {
        return Err(malformed("maxval must be in 1..=65535"));
    }
    let (w, h) = (w as usize, h as usize);
    let count = w * h;
    let mut samples: Vec<f64> = Vec::with_capacity(count);
    if ascii {
        while samples.len() < count {
            let (value, next) =
                next_header_token(bytes, pos).ok_or_else(|| malformed("truncated raster"))?;
            if value > maxval {
                return Err(malformed("sample exceeds maxval"));
            }
            samples.push(value as f64);
            pos = next;
        }
    } else {
        // Exactly one whitespace byte separates the maxval token from the raster.
        let start = pos + 1;
        let wide = maxval > 255;
        let stride = if wide { 2 } else { 1 };
        let raster = bytes
            .get(start..start + count * stride)
            .ok_or_else(|| malformed("truncated raster"))?;
        for chunk in raster.chunks_exact(stride) {
            let value = if wide {
                u16::from_be_bytes([chunk[0], chunk[1]]) as u64
            } else {
                chunk[0] as u64
            };
            if value > maxval {
                return Err(malformed("sample exceeds maxval"));
            }
            samples.push(value as f64);
        }
    }
    let plane = Plane::from_shape_vec((h, w), samples).expect("sized above");
    Image::new(plane / maxval as f64)
}

/// Next unsigned integer in a PGM header, skipping whitespace and `#` comments.
/// Returns the value and the position just past its last digit.
fn next_header_token(bytes: &[u8], mut pos: usize) -> Option<(u64, usize)> {
    loop {
        match bytes.get(pos)? {
            b' ' | b'\t' | b'\r' | b'\n' => pos += 1,
            b'#' => {
                while *bytes.get(pos)? != b'\n' {
                    pos += 1;
                }
            }
            b'0'..=b'9' => break,
            _ => return None,
        }
    }
    let mut value: u64 = 0;
    while let Some(d @ b'0'..=b'9') = bytes.get(pos) {
        value = value.checked_mul(10)?.checked_add((d - b'0') as u64)?;
        pos += 1;
    }
    Some((value, pos))
}
