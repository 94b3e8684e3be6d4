//! The k-fold convolution CDF `F^{*k}(x)` deep in its lower tail.
//!
//! Tail probabilities in the regimes of interest behave like `n^{-k}` and
//! underflow double precision once multiplied out, so every quantity here
//! is carried as a log-probability.
//!
//! Routes provided:
//!
//! * [`conv_closed_uniform`] — the exact closed form
//!   `x^{kp} Γ(p+1)^k / Γ(kp+1)` for the uniform base (no error term);
//! * [`conv_conditional_mc`] — unbiased tail-exact Monte Carlo using the
//!   exact factorization `F^{*k}(x) = F(x)^k P(Σ X̃_i <= x)` with
//!   `X̃ ~ X | X <= x`, so only an O(1)-ish factor is estimated;
//! * [`conv_grid`] — iterated numerical convolution with upper/lower
//!   Riemann bracketing (see [`grid`]);
//! * certified sandwich bounds: [`bounds_generic`] (product-density
//!   simplex maximum), [`bounds_powered`] (powered bases), and
//!   [`bounds_logfrechet`], each with its validity threshold;
//! * [`conv_powered_asymptotic_log`] — the leading-order tail
//!   `(b/k)^{kp} p^{(k-1)/2} a_k` for powered weights with large `p`.

mod grid;

pub use grid::{conv_grid, log_spaced_grid, GridEstimate};

use thiserror::Error;

use crate::models::{EdgeLaw, WeightModel};
use crate::predictor::log_stirling_a;
use crate::rng::{splitmix_at, unit_open};
use crate::special::ln_gamma;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConvError {
    #[error("{0}")]
    Domain(String),
    #[error("x = {x} is at or above the validity threshold x-hat = {xhat}")]
    AboveThreshold { x: f64, xhat: f64 },
    #[error("simplex maximization not certified for this family/range")]
    ConvexityNotCertified,
    #[error("conditional Monte Carlo needs F(x) > 0")]
    ZeroCdf,
    #[error("conditional Monte Carlo needs at least {min} replications, got {got}")]
    TooFewReps { min: u64, got: u64 },
    #[error("grid must be strictly increasing and positive")]
    BadGrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMethod {
    ClosedForm,
    ConditionalMc,
    Grid,
}

/// A tail probability carried in log scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    /// `ln F^{*k}(x)`; `-inf` encodes an exact or estimated zero.
    pub log_value: f64,
    pub method: TailMethod,
    /// Relative standard error of the estimate; present iff the method is
    /// conditional Monte Carlo.
    pub rel_std_error: Option<f64>,
}

impl TailEstimate {
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }

    /// Absolute standard error, when the method reports one.
    pub fn std_error(&self) -> Option<f64> {
        self.rel_std_error.map(|r| r * self.value())
    }
}

/// Certified sandwich `exp(log_lower) <= F^{*k}(x) <= exp(log_upper)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    pub log_lower: f64,
    /// Absent when the density-based upper bound is unavailable for the
    /// family at the queried scale.
    pub log_upper: Option<f64>,
    /// Upper end of the x-range the bounds are certified on.
    pub validity_threshold: Option<f64>,
}

/// Exact `F^{*k}(x) = x^{kp} Γ(p+1)^k / Γ(kp+1)` for weights `U^{1/p}`
/// with `U` uniform on (0, 1); valid on `x in [0, 1]` with no error term.
pub fn conv_closed_uniform(p: f64, k: u32, x: f64) -> Result<TailEstimate, ConvError> {
    conv_closed_uniform_scaled(p, k, x, 1.0)
}

/// The uniform closed form for base scale `λ`: the weight `Z^{1/p}` with
/// `Z` uniform on `(0, 1/λ)` rescaled by `λ^{1/p}` has the λ = 1 law, so
/// `F^{*k}(x) = (λ^{1/p} x)^{kp} Γ(p+1)^k / Γ(kp+1) = λ^k x^{kp} ...`.
pub fn conv_closed_uniform_scaled(p: f64, k: u32, x: f64, lambda: f64) -> Result<TailEstimate, ConvError> {
    if !(p > 1.0) {
        return Err(ConvError::Domain(format!("closed form needs p > 1, got {p}")));
    }
    if k < 1 {
        return Err(ConvError::Domain("k must be at least 1".into()));
    }
    if !(0.0..).contains(&x) || lambda.powf(1.0 / p) * x > 1.0 {
        return Err(ConvError::Domain(format!(
            "closed form needs 0 <= lambda^(1/p) x <= 1, got x = {x}, lambda = {lambda}"
        )));
    }
    let kf = k as f64;
    let log_value = kf * lambda.ln() + kf * p * x.ln() + kf * ln_gamma(p + 1.0) - ln_gamma(kf * p + 1.0);
    Ok(TailEstimate { log_value, method: TailMethod::ClosedForm, rel_std_error: None })
}

const MC_MIN_REPS: u64 = 1_000;

/// Conditional Monte Carlo estimate of `F^{*k}(x)`.
///
/// `F^{*k}(x) = F(x)^k P(Σ_{i<=k} X̃_i <= x)` exactly, with `X̃` the edge
/// weight conditioned on `X <= x`; the certain factor `F(x)^k` is carried
/// in log scale and only the conditional probability is estimated.
/// Unbiased, with the binomial standard error reported; deterministic
/// given `seed`.
pub fn conv_conditional_mc(
    model: &WeightModel,
    n: u64,
    k: u32,
    x: f64,
    reps: u64,
    seed: u64,
) -> Result<TailEstimate, ConvError> {
    if reps < MC_MIN_REPS {
        return Err(ConvError::TooFewReps { min: MC_MIN_REPS, got: reps });
    }
    if k < 1 {
        return Err(ConvError::Domain("k must be at least 1".into()));
    }
    let law = model.law(n);
    let f_x = law.cdf(x);
    if f_x <= 0.0 {
        return Err(ConvError::ZeroCdf);
    }
    let mut successes = 0u64;
    for rep in 0..reps {
        let stream_seed = splitmix_at(seed, rep);
        let mut sum = 0.0;
        let mut ok = true;
        for i in 0..k {
            let u = unit_open(splitmix_at(stream_seed, i as u64));
            // The conditional law lives on (0, x]; the clamp removes the
            // one-ulp spill of quantile(cdf(x)).
            sum += law.quantile(u * f_x).min(x);
            if sum > x {
                ok = false;
                break;
            }
        }
        if ok {
            successes += 1;
        }
    }
    let p_hat = successes as f64 / reps as f64;
    let rel = if successes == 0 {
        f64::INFINITY
    } else {
        ((1.0 - p_hat) / (p_hat * reps as f64)).sqrt()
    };
    Ok(TailEstimate {
        log_value: k as f64 * f_x.ln() + p_hat.ln(),
        method: TailMethod::ConditionalMc,
        rel_std_error: Some(rel),
    })
}

/// Log of `max { prod f(x_i) : Σ x_i <= x, x_i >= 0 }` for the model's
/// density `f = e^{-h}`.
///
/// With `h` strictly convex and blowing up at zero, the maximizer is the
/// equal split `x_i = min(x/k, x*)` where `x*` is the stationary point of
/// `h` (found by bisection to 1e-12; absent stationary points push `x*`
/// to the edge of the certified range). Families or ranges where the
/// convexity certificate fails are refused.
pub fn simplex_density_max(model: &WeightModel, n: u64, k: u32, x: f64) -> Result<f64, ConvError> {
    if k < 1 || !(x > 0.0) {
        return Err(ConvError::Domain(format!("need k >= 1 and x > 0, got k = {k}, x = {x}")));
    }
    let law = model.law(n);
    let kf = k as f64;
    match law {
        EdgeLaw::PoweredUniform { s, p, lambda } => {
            if p < 1.0 {
                return Err(ConvError::ConvexityNotCertified);
            }
            // h(y) = -ln(λp) - (p-1) ln y is decreasing: no stationary
            // point, equal split up to the support end.
            let support_end = (1.0 / lambda).powf(s);
            if x / kf >= support_end {
                return Err(ConvError::AboveThreshold { x, xhat: kf * support_end });
            }
            Ok(kf * law.log_density(x / kf))
        }
        EdgeLaw::PoweredExp { p, lambda, .. } => {
            if p <= 1.0 {
                return Err(ConvError::ConvexityNotCertified);
            }
            // h(y) = -ln(λp) - (p-1) ln y + λ y^p, strictly convex with
            // h' increasing from -inf to +inf.
            let h_prime = |y: f64| lambda * p * y.powf(p - 1.0) - (p - 1.0) / y;
            let x_star = bisect_increasing_root(h_prime, 1.0);
            Ok(kf * law.log_density((x / kf).min(x_star)))
        }
        EdgeLaw::LogFrechet { rho, alpha } => {
            if alpha <= 1.0 {
                return Err(ConvError::ConvexityNotCertified);
            }
            // Convexity of h = b ∘ (-ln) is certified only below the
            // stationary point x̂ = e^{-x̃}.
            let xhat = log_frechet_threshold(rho, alpha);
            if x / kf > xhat {
                return Err(ConvError::AboveThreshold { x, xhat: kf * xhat });
            }
            Ok(kf * law.log_density(x / kf))
        }
        EdgeLaw::NegPowerExp { .. } => Err(ConvError::ConvexityNotCertified),
    }
}

/// Product-density sandwich for any family with a bounded density:
///
/// `F(x/k)^k <= F^{*k}(x) <= x^k / k! * max prod f(x_i)`.
///
/// The lower bound is always available; the upper bound is absent when
/// the simplex maximum cannot be certified for the family at this scale.
pub fn bounds_generic(model: &WeightModel, n: u64, k: u32, x: f64) -> Result<BoundPair, ConvError> {
    if k < 1 || !(x > 0.0) {
        return Err(ConvError::Domain(format!("need k >= 1 and x > 0, got k = {k}, x = {x}")));
    }
    let kf = k as f64;
    let log_lower = kf * model.cdf(n, x / kf).ln();
    let log_upper = match simplex_density_max(model, n, k, x) {
        Ok(log_max) => Some(kf * x.ln() - ln_gamma(kf + 1.0) + log_max),
        Err(ConvError::ConvexityNotCertified) | Err(ConvError::AboveThreshold { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(BoundPair { log_lower, log_upper, validity_threshold: None })
}

/// Sandwich for powered weights `Z^{1/p}` with base CDF `G`:
///
/// `G((x/k)^p)^k <= F^{*k}(x) <= (c p)^k (x/k)^{kp}`, `c = e·d` where
/// `d` bounds `G'` on the smooth range. Certified for `x^p <= 1 ∧ x̂`.
pub fn bounds_powered(
    base: &crate::models::BaseDistribution,
    p: f64,
    k: u32,
    x: f64,
) -> Result<BoundPair, ConvError> {
    if k < 1 || !(x > 0.0) || !(p >= 1.0) {
        return Err(ConvError::Domain(format!("need k >= 1, x > 0, p >= 1; got k={k}, x={x}, p={p}")));
    }
    let range = base.smoothness_threshold().min(1.0);
    let xhat = range.powf(1.0 / p);
    if x.powf(p) > range {
        return Err(ConvError::AboveThreshold { x, xhat });
    }
    let kf = k as f64;
    let log_lower = kf * base.cdf((x / kf).powf(p)).ln();
    let c = std::f64::consts::E * base.density_sup();
    let log_upper = kf * (c * p).ln() + kf * p * (x / kf).ln();
    Ok(BoundPair { log_lower, log_upper: Some(log_upper), validity_threshold: Some(xhat) })
}

/// Leading-order tail of the k-fold convolution of `Z^{1/p}` weights for
/// large `p`: `ln[(b/k)^{kp} p^{(k-1)/2} a_k]` with the Stirling constant
/// `a_k = (2π)^{k/2} / sqrt(2πk)`.
///
/// The formula is stated for base scale 1; other scales are reduced to it
/// by the exact rescaling `X̃ = λ^{1/p} X`, which contributes `k ln λ`.
pub fn conv_powered_asymptotic_log(p: f64, k: u32, b: f64, lambda: f64) -> f64 {
    assert!(k >= 1 && p > 0.0 && b > 0.0 && lambda > 0.0);
    let kf = k as f64;
    kf * p * (b / kf).ln() + kf * lambda.ln() + 0.5 * (kf - 1.0) * p.ln() + log_stirling_a(k)
}

/// Stationary threshold `x̂(ρ, α)` of the log-Fréchet density: bisection
/// root `x̃` of `ρ α x^{α-1} - 1 - (α-1)/x`, mapped through `e^{-x̃}`.
pub fn log_frechet_threshold(rho: f64, alpha: f64) -> f64 {
    assert!(alpha > 1.0 && rho > 0.0);
    let b_prime = |x: f64| rho * alpha * x.powf(alpha - 1.0) - 1.0 - (alpha - 1.0) / x;
    (-bisect_increasing_root(b_prime, 1.0)).exp()
}

/// Sandwich for the log-Fréchet family, both sides in log scale:
///
/// `-kρ (ln(k/x))^α <= ln F^{*k}(x)` and
/// `ln F^{*k}(x) <= k ln(ραe) + k(α-1) ln ln(k/x) - kρ (ln(k/x))^α`,
/// certified for `x < x̂(ρ, α)`.
pub fn bounds_logfrechet(rho: f64, alpha: f64, k: u32, x: f64) -> Result<BoundPair, ConvError> {
    if k < 1 || !(x > 0.0) {
        return Err(ConvError::Domain(format!("need k >= 1 and x > 0, got k = {k}, x = {x}")));
    }
    if !(alpha > 1.0) {
        return Err(ConvError::Domain(format!("log-Fréchet bounds need alpha > 1, got {alpha}")));
    }
    let xhat = log_frechet_threshold(rho, alpha);
    if x >= xhat {
        return Err(ConvError::AboveThreshold { x, xhat });
    }
    let kf = k as f64;
    let log_ratio = (kf / x).ln();
    let common = -kf * rho * log_ratio.powf(alpha);
    let log_upper = kf * (rho * alpha * std::f64::consts::E).ln()
        + kf * (alpha - 1.0) * log_ratio.ln()
        + common;
    Ok(BoundPair { log_lower: common, log_upper: Some(log_upper), validity_threshold: Some(xhat) })
}

/// Root of a strictly increasing function by bracket expansion around
/// `start`, then bisection to 1e-12 relative.
fn bisect_increasing_root<F: Fn(f64) -> f64>(f: F, start: f64) -> f64 {
    let mut lo = start;
    let mut hi = start;
    while f(lo) > 0.0 {
        lo *= 0.5;
        assert!(lo > 1e-300, "failed to bracket root from below");
    }
    while f(hi) < 0.0 {
        hi *= 2.0;
        assert!(hi < 1e300, "failed to bracket root from above");
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi.abs() {
            break;
        }
    }
    0.5 * (lo + hi)
}
