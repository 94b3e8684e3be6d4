//! Fixed CSV row schema shared by every Monte Carlo experiment kind.

use std::io::Write;

use crate::HarnessError;

/// Version tag carried in every summary; bump on any column change.
pub const RESULT_SCHEMA: &str = "fpp-result-v1";

/// Column set common to all experiment kinds; columns an experiment does
/// not populate stay empty.
pub const RESULT_COLUMNS: [&str; 13] = [
    "n",
    "rep",
    "seed",
    "W",
    "H",
    "u_n",
    "s_n",
    "W_pred_low",
    "W_pred_high",
    "H_pred",
    "W_norm",
    "H_norm",
    "gumbel_T",
];

#[derive(Debug, Clone, Default)]
pub struct ResultRow {
    pub n: u64,
    pub rep: u64,
    pub seed: u64,
    pub w: f64,
    pub h: u32,
    pub u_n: f64,
    pub s_n: f64,
    pub w_pred_low: Option<f64>,
    pub w_pred_high: Option<f64>,
    pub h_pred: Option<f64>,
    /// `W / (u_n s_n log n)`.
    pub w_norm: f64,
    /// `H / (s_n log n)`.
    pub h_norm: f64,
    pub gumbel_t: Option<f64>,
}

/// Every float is serialized with 17 significant digits so the CSV is a
/// lossless, byte-stable function of the run.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// Serialize rows as RFC-4180 CSV ('\n' line ends, '.' decimal point).
pub fn write_rows(rows: &[ResultRow]) -> Result<Vec<u8>, HarnessError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(RESULT_COLUMNS)
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.rep.to_string(),
            r.seed.to_string(),
            fmt_f64(r.w),
            r.h.to_string(),
            fmt_f64(r.u_n),
            fmt_f64(r.s_n),
            fmt_opt(r.w_pred_low),
            fmt_opt(r.w_pred_high),
            fmt_opt(r.h_pred),
            fmt_f64(r.w_norm),
            fmt_f64(r.h_norm),
            fmt_opt(r.gumbel_t),
        ])
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    }
    w.into_inner().map_err(|e| HarnessError::Config(e.to_string()))
}

/// Write a generic string table as CSV (census, convolution, moments).
pub fn write_table(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, HarnessError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).map_err(|e| HarnessError::Config(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| HarnessError::Config(e.to_string()))?;
    }
    w.into_inner().map_err(|e| HarnessError::Config(e.to_string()))
}

pub fn write_bytes(path: &std::path::Path, bytes: &[u8]) -> Result<(), HarnessError> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(bytes)?;
    Ok(())
}
