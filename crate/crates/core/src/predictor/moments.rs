//! First- and second-moment diagnostics for budgeted path counts.
//!
//! For a budget `b` and hop count `k`, the expected number of admissible
//! paths is `|S_{1,2}(k)| F^{*k}(b)`, a lower-bound certificate sums
//! `n^{k'-1} F^{*k'}(d)` over all lengths, and the variance-to-mean²
//! control is `Σ_{l=1}^{k-2} (l+1) n^{-l} F^{*(k-l)}(b) / F^{*k}(b)`.
//! Everything is assembled from log-scale convolution values.

use super::PredictError;
use crate::convolution::conv_closed_uniform_scaled;
use crate::models::{EdgeLaw, WeightModel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentDiagnostics {
    /// `Σ_{k'} n^{k'-1} F^{*k'}(d)`, truncated once terms are negligible.
    pub lower_sum: f64,
    /// `|S_{1,2}(k)| F^{*k}(b)`; may overflow to infinity, see the log.
    pub mean_nk: f64,
    pub log_mean_nk: f64,
    /// `Σ_{l=1}^{k-2} (l+1) n^{-l} F^{*(k-l)}(b) / F^{*k}(b)`.
    pub var_ratio_sum: f64,
}

/// Relative floor below which the tail of `lower_sum` is truncated.
const TERM_FLOOR: f64 = 1e-30;

/// Exact-moment diagnostics for uniform-base powered models, for which
/// the convolution CDF has a closed form at every order. Models without
/// an exact convolution route are refused.
pub fn moment_diagnostics(
    model: &WeightModel,
    n: u64,
    k: u32,
    b: f64,
    d: f64,
) -> Result<MomentDiagnostics, PredictError> {
    if k < 1 || n < 3 {
        return Err(PredictError::Domain(format!("need k >= 1 and n >= 3, got k={k}, n={n}")));
    }
    let (p, lambda) = match model.law(n) {
        EdgeLaw::PoweredUniform { p, lambda, .. } => (p, lambda),
        other => {
            return Err(PredictError::MomentUnavailable(format!(
                "no exact convolution closed form for {other:?}"
            )))
        }
    };
    let log_conv = |j: u32, x: f64| -> Result<f64, PredictError> {
        conv_closed_uniform_scaled(p, j, x, lambda)
            .map(|t| t.log_value)
            .map_err(|e| PredictError::MomentUnavailable(e.to_string()))
    };

    let log_n = (n as f64).ln();

    // Markov certificate sum. Terms rise to a peak near s_n log n and then
    // decay; truncate only in the decaying phase.
    let mut lower_sum = 0.0;
    let mut prev_term = f64::INFINITY;
    for kp in 1..n.min(10_000) as u32 {
        let term = ((kp as f64 - 1.0) * log_n + log_conv(kp, d)?).exp();
        lower_sum += term;
        if term < prev_term && term < TERM_FLOOR * lower_sum.max(f64::MIN_POSITIVE) {
            break;
        }
        prev_term = term;
    }

    // log |S_{1,2}(k)| = Σ_{j=2}^k log(n - j).
    let log_paths: f64 = (2..=k as u64).map(|j| ((n - j) as f64).ln()).sum();
    let log_mean_nk = log_paths + log_conv(k, b)?;

    let log_fk_b = log_conv(k, b)?;
    let mut var_ratio_sum = 0.0;
    for l in 1..=k.saturating_sub(2) {
        var_ratio_sum += (((l + 1) as f64).ln() - l as f64 * log_n + log_conv(k - l, b)?
            - log_fk_b)
            .exp();
    }

    Ok(MomentDiagnostics { lower_sum, mean_nk: log_mean_nk.exp(), log_mean_nk, var_ratio_sum })
}
