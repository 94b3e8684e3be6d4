//! Closed-form constants and per-(model, n) predictions.
//!
//! The scaling picture: in the intermediate class (`s_n log n -> ∞`,
//! `s_n² log n -> 0`) the optimal weight satisfies
//! `W_n / (u_n s_n log n) -> e` with explicit floor/ceiling bands, and
//! `H_n / (s_n log n) -> 1`. When `s_n log n -> γ` finite the hopcount
//! freezes at the integer minimizer `k(γ)` of `g_γ(x) = x e^{-γ(1-1/x)}`
//! and a linear transform of `W_n` has the Gumbel-type limit
//! `P(T > t) = exp(-a_k e^t)`.

mod moments;

pub use moments::{moment_diagnostics, MomentDiagnostics};

use thiserror::Error;

use crate::models::{Regime, WeightModel};
use crate::special::ln_gamma;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PredictError {
    #[error("{0}")]
    Domain(String),
    #[error("Gumbel transform not applicable: {0}")]
    GumbelNotApplicable(String),
    #[error("moment diagnostics unavailable: {0}")]
    MomentUnavailable(String),
}

pub const TWO_LOG_TWO: f64 = 1.3862943611198906;

/// Tolerance for detecting that γ sits exactly on a tie threshold γ_k.
const TIE_TOLERANCE: f64 = 1e-12;

/// Default hopcount band parameter β_n for the intermediate regime.
pub const DEFAULT_BETA: f64 = 0.25;

/// `η(x) = min(⌈x⌉, e^{x/⌊x⌋ - 1} ⌊x⌋)` for `x >= 1`; lies in [⌊x⌋, ⌈x⌉].
pub fn eta(x: f64) -> Result<f64, PredictError> {
    if !(x >= 1.0) {
        return Err(PredictError::Domain(format!("eta needs x >= 1, got {x}")));
    }
    let floor = x.floor();
    let ceil = x.ceil();
    Ok(ceil.min((x / floor - 1.0).exp() * floor))
}

/// `g_γ(x) = x e^{-γ(1 - 1/x)}` for `x > 0`; `g_γ(1) = 1` for every γ.
pub fn g_gamma(gamma: f64, x: f64) -> f64 {
    assert!(gamma >= 0.0 && x > 0.0);
    x * (-gamma * (1.0 - 1.0 / x)).exp()
}

/// Threshold `γ_k = k(k+1) log((k+1)/k)` at which `g_γ` has the tied
/// integer minimizers `k` and `k+1`. Strictly increasing; `γ_1 = 2 log 2`.
pub fn gamma_threshold(k: u64) -> f64 {
    assert!(k >= 1);
    let kf = k as f64;
    kf * (kf + 1.0) * (1.0 / kf).ln_1p()
}

/// Integer minimizer of `g_γ` with its value and tie flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimizer {
    pub k: u64,
    pub value: f64,
    /// True iff γ is (within 1e-12) a threshold γ_k, so `k` and `k+1`
    /// both minimize.
    pub tie: bool,
}

/// Minimizer of `g_γ` over the positive integers. The continuous minimum
/// sits at `x = γ`, so the integer minimizer is `⌊γ⌋ ∨ 1` or `⌈γ⌉`.
pub fn minimizer_k(gamma: f64) -> Minimizer {
    assert!(gamma >= 0.0);
    let k1 = (gamma.floor() as u64).max(1);
    let k2 = (gamma.ceil() as u64).max(1);
    if k1 == k2 {
        return Minimizer { k: k1, value: g_gamma(gamma, k1 as f64), tie: false };
    }
    let v1 = g_gamma(gamma, k1 as f64);
    let v2 = g_gamma(gamma, k2 as f64);
    if (gamma - gamma_threshold(k1)).abs() <= TIE_TOLERANCE {
        return Minimizer { k: k1, value: v1, tie: true };
    }
    if v1 <= v2 {
        Minimizer { k: k1, value: v1, tie: false }
    } else {
        Minimizer { k: k2, value: v2, tie: false }
    }
}

/// `θ(γ)`: the largest integer `k` with `g_γ(k) <= 1`. The set is the
/// integer interval `[1, x₀]` where `x₀ >= γ` solves `g_γ(x₀) = 1`.
pub fn theta(gamma: f64) -> u64 {
    assert!(gamma >= 0.0);
    if g_gamma(gamma, 2.0) > 1.0 {
        return 1;
    }
    let mut lo = gamma.max(2.0);
    let mut hi = lo;
    while g_gamma(gamma, hi) <= 1.0 {
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if g_gamma(gamma, mid) <= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut k = lo.floor() as u64;
    while g_gamma(gamma, (k + 1) as f64) <= 1.0 {
        k += 1;
    }
    while k > 1 && g_gamma(gamma, k as f64) > 1.0 {
        k -= 1;
    }
    k
}

/// Stirling constant `a_k = (2π)^{k/2} / sqrt(2πk)`; `a_1 = 1`.
pub fn stirling_a(k: u32) -> f64 {
    log_stirling_a(k).exp()
}

/// `ln a_k`, safe for large `k`.
pub fn log_stirling_a(k: u32) -> f64 {
    assert!(k >= 1);
    let two_pi = std::f64::consts::TAU;
    0.5 * k as f64 * two_pi.ln() - 0.5 * (two_pi * k as f64).ln()
}

/// `ψ(q) = (1/q - 1) log(1/(1-q))` extended by `ψ(0) = 1`, `ψ(1) = 0`;
/// strictly decreasing on [0, 1].
pub fn psi(q: f64) -> f64 {
    assert!((0.0..=1.0).contains(&q), "psi needs q in [0,1], got {q}");
    if q == 0.0 {
        return 1.0;
    }
    if q == 1.0 {
        return 0.0;
    }
    (1.0 / q - 1.0) * -(-q).ln_1p()
}

/// `φ(x) = -x + log x`; unique maximum -1 at x = 1.
pub fn phi(x: f64) -> f64 {
    assert!(x > 0.0);
    -x + x.ln()
}

/// Specification of the Gumbel-type limit for the bounded-hopcount
/// regime: `T = scale (λ^{s_n} W_n - g_γ(k)) + center_shift` with
/// `P(T > t) -> exp(-a_k e^t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GumbelSpec {
    pub k: u64,
    pub a_k: f64,
    pub gamma: f64,
    pub s_n: f64,
    /// `k / (g_γ(k) s_n)`.
    pub scale: f64,
    /// `((k-1)/s_n)(s_n log n - γ - s_n log(s_n)/2)`.
    pub center_shift: f64,
    /// `λ^{s_n}` of the base law.
    pub lambda_pow_sn: f64,
}

impl GumbelSpec {
    /// Transform an observed optimal weight into the limit variable `T`.
    pub fn statistic(&self, w: f64) -> f64 {
        self.scale * (self.lambda_pow_sn * w - g_gamma(self.gamma, self.k as f64))
            + self.center_shift
    }

    /// Limit CDF `P(T <= t) = 1 - exp(-a_k e^t)`.
    pub fn limit_cdf(&self, t: f64) -> f64 {
        -(-self.a_k * t.exp()).exp_m1()
    }

    /// `P(T > t) = exp(-a_k e^t)`.
    pub fn limit_survival(&self, t: f64) -> f64 {
        (-self.a_k * t.exp()).exp()
    }

    /// Inverse of [`Self::limit_cdf`] on (0, 1), for drawing reference
    /// samples in self-tests.
    pub fn limit_quantile(&self, u: f64) -> f64 {
        assert!(u > 0.0 && u < 1.0);
        ((-(-u).ln_1p()) / self.a_k).ln()
    }
}

/// Build the Gumbel transform for a powered model in the very-small
/// regime. Needs `γ > 2 log 2` and γ off the tie set.
pub fn gumbel_spec(model: &WeightModel, n: u64) -> Result<GumbelSpec, PredictError> {
    let gamma = match model.regime() {
        Regime::VerySmall { gamma } => gamma,
        other => {
            return Err(PredictError::GumbelNotApplicable(format!(
                "regime {other:?} has no bounded-hopcount Gumbel limit"
            )))
        }
    };
    if model.base().is_none() {
        return Err(PredictError::GumbelNotApplicable(
            "the transform is stated for powered models".into(),
        ));
    }
    if gamma <= TWO_LOG_TWO {
        return Err(PredictError::GumbelNotApplicable(format!(
            "needs gamma > 2 log 2, got {gamma}"
        )));
    }
    let m = minimizer_k(gamma);
    if m.tie {
        return Err(PredictError::GumbelNotApplicable(format!(
            "gamma = {gamma} is a tie threshold; hopcount splits between {} and {}",
            m.k,
            m.k + 1
        )));
    }
    let s_n = model.effective_sn(n);
    let log_n = (n as f64).ln();
    let kf = m.k as f64;
    Ok(GumbelSpec {
        k: m.k,
        a_k: stirling_a(m.k as u32),
        gamma,
        s_n,
        scale: kf / (m.value * s_n),
        center_shift: (kf - 1.0) / s_n * (s_n * log_n - gamma - s_n * s_n.ln() / 2.0),
        lambda_pow_sn: model.lambda().powf(s_n),
    })
}

/// Convenience wrapper: the transformed statistic for one weight.
pub fn gumbel_statistic(w: f64, spec: &GumbelSpec) -> f64 {
    spec.statistic(w)
}

/// Limit law attached to a prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitLaw {
    /// `T = scale (λ^{s_n} W_n - g_γ(k)) + shift` with survival
    /// `exp(-a_k e^t)`.
    Gumbel(GumbelSpec),
    /// `(W_n - 1)/s_n` converges to `log Z` of the base law.
    LogOfBase,
}

/// Per-(model, n) prediction: bands and centers for `W_n` and `H_n`,
/// plus the raw ingredients so experiments can re-band without
/// recomputation.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub n: u64,
    pub regime: Regime,
    pub u_n: f64,
    pub s_n: f64,
    pub p_n: f64,
    pub lambda: f64,
    /// `⌊s_n log n⌋` and `⌈s_n log n⌉`.
    pub k_minus: u64,
    pub k_plus: u64,
    /// Band half-width parameter(s) actually used, when any.
    pub eps_n: Option<f64>,
    pub beta_n: f64,
    pub w_band: Option<(f64, f64)>,
    pub w_center: Option<f64>,
    pub hop_center: Option<f64>,
    pub hop_band: Option<(f64, f64)>,
    /// Unique predicted hopcount (very small regime, off the tie set).
    pub hop_value: Option<u64>,
    /// Two-point hopcount support at a tie threshold or at γ = 2 log 2.
    pub hop_pair: Option<(u64, u64)>,
    pub limit_law: Option<LimitLaw>,
}

/// Prediction with the default hopcount band parameter.
pub fn predict(model: &WeightModel, n: u64) -> Prediction {
    predict_with_beta(model, n, DEFAULT_BETA)
}

/// Prediction for one model and size; `beta` sets the hopcount band
/// `(s_n log n / (1+β), s_n log n / (1-β))` in the diverging regimes.
pub fn predict_with_beta(model: &WeightModel, n: u64, beta: f64) -> Prediction {
    assert!(n >= 3, "predictions need n >= 3");
    assert!(beta > 0.0 && beta < 1.0);
    let params = model.regime_params(n);
    let log_n = (n as f64).ln();
    let s_log_n = params.s_n * log_n;
    let k_minus = s_log_n.floor() as u64;
    let k_plus = s_log_n.ceil() as u64;

    let mut p = Prediction {
        n,
        regime: params.regime,
        u_n: params.u_n,
        s_n: params.s_n,
        p_n: params.p_n,
        lambda: params.lambda,
        k_minus,
        k_plus,
        eps_n: None,
        beta_n: beta,
        w_band: None,
        w_center: None,
        hop_center: None,
        hop_band: None,
        hop_value: None,
        hop_pair: None,
        limit_law: None,
    };

    match params.regime {
        Regime::Intermediate => {
            let e = std::f64::consts::E;
            p.w_center = Some(e * params.u_n * s_log_n);
            p.hop_center = Some(s_log_n);
            p.hop_band = Some((s_log_n / (1.0 + beta), s_log_n / (1.0 - beta)));
            if let Some((_rho, alpha)) = model.log_frechet_params() {
                let ll = log_n.ln();
                // Hypothesis rates of the two one-sided theorems, each
                // with a safety factor of 2.
                let eps_up = 2.0
                    * (log_n.powf(-1.0 + 2.0 / alpha) * ll)
                        .max(log_n.powf(-1.0 / alpha) * ll.powi(3));
                let eps_lo = 2.0
                    * (log_n.powf(-1.0 + 1.0 / alpha) * ll)
                        .max(log_n.powf(-1.0 / alpha) * ll.powi(2));
                p.eps_n = Some(eps_up);
                p.w_band = Some((
                    ((1.0 - eps_lo) * e * k_minus as f64 * params.u_n).max(0.0),
                    (1.0 + eps_up) * e * k_plus as f64 * params.u_n,
                ));
            } else {
                // Powered base: floor/ceiling band with ε_n = sqrt(s_n log log n).
                let eps = (params.s_n * log_n.ln()).sqrt();
                p.eps_n = Some(eps);
                if s_log_n >= 1.0 {
                    let upper = e * eta(s_log_n).expect("s log n >= 1") * params.u_n;
                    let lower = ((1.0 - eps) * e * k_minus as f64 * params.u_n).max(0.0);
                    p.w_band = Some((lower, upper));
                }
            }
        }
        Regime::VerySmall { gamma } => {
            // The bounded-hopcount predictions are stated for the powered
            // families; for E^{-γ} weights only the ingredients apply.
            if model.base().is_some() {
                let scale = params.lambda.powf(params.s_n);
                let m = minimizer_k(gamma);
                p.w_center = Some(m.value / scale);
                p.w_band = Some((m.value / scale, 1.0 / scale));
                if m.tie {
                    p.hop_pair = Some((m.k, m.k + 1));
                } else if (gamma - TWO_LOG_TWO).abs() <= TIE_TOLERANCE {
                    p.hop_pair = Some((1, 2));
                } else {
                    p.hop_value = Some(m.k);
                }
                if gamma < TWO_LOG_TWO {
                    p.limit_law = Some(LimitLaw::LogOfBase);
                } else if let Ok(spec) = gumbel_spec(model, n) {
                    p.limit_law = Some(LimitLaw::Gumbel(spec));
                }
            }
        }
        Regime::ConstantS { s } => {
            // First-order constant 1/(s Γ(1+1/s)^s) against n^{-s} s log n,
            // with base scale entering as (λn)^{-s}.
            let constant = 1.0 / (s * (ln_gamma(1.0 + 1.0 / s) * s).exp());
            let scale = (params.lambda * n as f64).powf(-s);
            p.w_center = Some(scale * s * log_n * constant);
            p.hop_center = Some(s_log_n);
            p.hop_band = Some((s_log_n / (1.0 + beta), s_log_n / (1.0 - beta)));
        }
        Regime::Other => {}
    }
    p
}

/// Admissibility reminder for the β_n parameter of the hopcount band: the
/// band theorem quantifies over sequences with
/// `limsup s_n log(1/s_n) / β_n² <= 1/2 - δ` and
/// `(β_n s_n log n)^{-1} (s_n log n - ⌊s_n log n⌋) -> 0`; a constant
/// β works at desk scale, which is why it is caller-chosen.
pub fn beta_admissible(model: &WeightModel, n: u64, beta: f64) -> bool {
    let s = model.effective_sn(n);
    s * (1.0 / s).ln() / (beta * beta) <= 0.5
}
