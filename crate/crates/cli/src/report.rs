//! Machine-readable output: the JSON solver report, sweep/bench CSV rows,
//! and the markdown comparison table.
//!
//! Schema versions: JSON reports carry `schema_version` (currently 1); the
//! CSV layouts are fixed by their headers. PSNR of identical images prints
//! as the string `inf` in every format.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const SWEEP_CSV_HEADER: &str = "method,image,mu,lambda,a,ssim,psnr_db,iterations,seconds";
pub const BENCH_CSV_HEADER: &str = "method,image,ssim,psnr_db,iterations,seconds";

/// JSON document written by `denoise --report`.
#[derive(Debug, Serialize)]
pub struct ReportDoc {
    pub schema_version: u32,
    pub method: String,
    pub a: Option<f64>,
    pub mu: f64,
    pub lambda: f64,
    pub tol: f64,
    pub max_iters: usize,
    pub clamped: bool,
    pub iterations_run: usize,
    pub converged: bool,
    pub final_rel_change: f64,
    pub elapsed_seconds: f64,
    pub rel_change_trace: Vec<f64>,
    pub primal_residual_trace: Vec<f64>,
    pub objective_trace: Vec<f64>,
}

impl ReportDoc {
    pub const SCHEMA_VERSION: u32 = 1;
}

/// One evaluated solver run inside a sweep or bench table.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub method: String,
    pub image: String,
    pub mu: f64,
    pub lambda: f64,
    /// TL1 shape parameter; 0 marks "not applicable" for the L1 method.
    pub a: f64,
    pub ssim: f64,
    pub psnr_db: f64,
    pub iterations: usize,
    pub seconds: f64,
}

/// `inf`-aware fixed-point formatting.
pub fn fmt_metric(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        format!("{v:.6}")
    }
}

fn fmt_param(v: f64) -> String {
    // Shortest round-trip representation keeps grids readable in CSV.
    format!("{v}")
}

pub fn sweep_csv_line(row: &BenchRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{:.3}",
        row.method,
        row.image,
        fmt_param(row.mu),
        fmt_param(row.lambda),
        fmt_param(row.a),
        fmt_metric(row.ssim),
        fmt_metric(row.psnr_db),
        row.iterations,
        row.seconds
    )
}

pub fn bench_csv_line(row: &BenchRow) -> String {
    format!(
        "{},{},{},{},{},{:.3}",
        row.method,
        row.image,
        fmt_metric(row.ssim),
        fmt_metric(row.psnr_db),
        row.iterations,
        row.seconds
    )
}

/// Markdown table mirroring the SSIM/PSNR-per-image comparison layout:
/// one row per method, an SSIM and a PSNR column per image.
pub fn markdown_table(images: &[String], methods: &[String], rows: &[BenchRow]) -> String {
    let mut out = String::new();
    out.push_str("| Method |");
    for img in images {
        out.push_str(&format!(" {img} SSIM | {img} PSNR (dB) |"));
    }
    out.push('\n');
    out.push_str("|---|");
    for _ in images {
        out.push_str("---|---|");
    }
    out.push('\n');
    for method in methods {
        out.push_str(&format!("| {method} |"));
        for img in images {
            match rows
                .iter()
                .find(|r| &r.method == method && &r.image == img)
            {
                Some(r) => {
                    out.push_str(&format!(" {} | {} |", fmt_metric(r.ssim), fmt_metric(r.psnr_db)))
                }
                None => out.push_str(" - | - |"),
            }
        }
        out.push('\n');
    }
    out
}

pub fn write_text(path: &Path, content: &str) -> CliResult<()> {
    std::fs::write(path, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

pub fn write_json(path: &Path, doc: &impl Serialize) -> CliResult<()> {
    let mut buf = serde_json::to_vec_pretty(doc)
        .map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))?;
    buf.push(b'\n');
    std::fs::write(path, buf)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// JSON value for evaluate output; infinities become the string `inf`.
pub fn json_metric(v: f64) -> serde_json::Value {
    if v.is_infinite() {
        serde_json::Value::String("inf".into())
    } else {
        serde_json::json!(v)
    }
}

pub fn print_stdout(content: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(content.as_bytes());
}
