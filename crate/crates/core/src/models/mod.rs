//! Edge-weight distribution families and their extreme-value scales.
//!
//! A [`WeightModel`] fixes, for every graph size `n`, a continuous and
//! strictly increasing edge-weight CDF `F_n` on the positive half-line:
//!
//! * `Powered` — `X = Z^{s_n}` where `Z` has a base law `G` with
//!   `G'(0+) = λ > 0` (uniform on `(0, 1/λ)` or exponential rate `λ`) and
//!   `s_n` comes from an [`SnRule`]. Then `F_n(x) = G(x^{1/s_n})`.
//! * `LogFrechet(ρ, α)` — `X = e^{-(E/ρ)^{1/α}}` with `E` standard
//!   exponential, so `F(x) = exp(-ρ (log 1/x)^α)` on `(0, 1)`; the law
//!   does not depend on `n`.
//! * `NegPowerExp(γ)` — `X = E^{-γ}`, so `F(x) = exp(-x^{-1/γ})`.
//!
//! The scale `u_n` solves `n F_n(u_n) = 1` and the effective disorder
//! parameter `s_n` is the per-family closed form (for `LogFrechet` it is
//! `(log n)^{-1+1/α} / (α ρ^{1/α})`, for `NegPowerExp` it is `γ/log n`).

mod parse;

pub use parse::parse_model;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} must lie in (0, 1), got {value}")]
    UnitDomain { what: &'static str, value: f64 },
    #[error("cannot parse model spec: {0}")]
    Parse(String),
}

/// Base law `Z` for powered models. Both choices satisfy `G'(0+) = λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaseDistribution {
    /// Uniform on `(0, 1/λ)`.
    Uniform { lambda: f64 },
    /// Exponential with rate `λ`.
    Exponential { lambda: f64 },
}

impl BaseDistribution {
    pub fn uniform(lambda: f64) -> Result<Self, ModelError> {
        require_positive("lambda", lambda)?;
        Ok(Self::Uniform { lambda })
    }

    pub fn exponential(lambda: f64) -> Result<Self, ModelError> {
        require_positive("lambda", lambda)?;
        Ok(Self::Exponential { lambda })
    }

    /// `G'(0+)`.
    pub fn lambda(&self) -> f64 {
        match *self {
            Self::Uniform { lambda } | Self::Exponential { lambda } => lambda,
        }
    }

    /// Base CDF `G`.
    pub fn cdf(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        match *self {
            Self::Uniform { lambda } => (lambda * y).min(1.0),
            Self::Exponential { lambda } => -(-lambda * y).exp_m1(),
        }
    }

    /// Base quantile `G^{-1}` on (0, 1).
    pub fn quantile(&self, q: f64) -> f64 {
        debug_assert!(q > 0.0 && q < 1.0);
        match *self {
            Self::Uniform { lambda } => q / lambda,
            Self::Exponential { lambda } => -(-q).ln_1p() / lambda,
        }
    }

    /// Base density `G'`.
    pub fn density(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        match *self {
            Self::Uniform { lambda } => {
                if y < 1.0 / lambda {
                    lambda
                } else {
                    0.0
                }
            }
            Self::Exponential { lambda } => lambda * (-lambda * y).exp(),
        }
    }

    /// `max { G'(y) : y <= 1 ∧ x̂ }`. Equals `λ` for both families.
    pub fn density_sup(&self) -> f64 {
        self.lambda()
    }

    /// Upper end of the interval where `G` is known to be C².
    /// Uniform: the support end `1/λ`; exponential: unbounded.
    pub fn smoothness_threshold(&self) -> f64 {
        match *self {
            Self::Uniform { lambda } => 1.0 / lambda,
            Self::Exponential { .. } => f64::INFINITY,
        }
    }
}

/// Rule producing the disorder sequence `s_n`.
#[derive(Debug, Clone, PartialEq)]
pub enum SnRule {
    /// `s_n = s`.
    Constant { s: f64 },
    /// `s_n = c (log n)^{-a}` with `a` in (0, 1).
    PowerOfLog { c: f64, a: f64 },
    /// `s_n = γ / log n` with `γ > 0`.
    GammaOverLog { gamma: f64 },
    /// Explicit `n -> s_n` table.
    Table { entries: BTreeMap<u64, f64> },
}

impl SnRule {
    pub fn constant(s: f64) -> Result<Self, ModelError> {
        require_positive("s", s)?;
        Ok(Self::Constant { s })
    }

    pub fn power_of_log(c: f64, a: f64) -> Result<Self, ModelError> {
        require_positive("c", c)?;
        if !(a > 0.0 && a < 1.0) {
            return Err(ModelError::InvalidParameter(format!(
                "power-of-log exponent a must lie in (0, 1), got {a}"
            )));
        }
        Ok(Self::PowerOfLog { c, a })
    }

    pub fn gamma_over_log(gamma: f64) -> Result<Self, ModelError> {
        // The type admits gamma = 0 on paper, but s_n > 0 is required for
        // the power map to be invertible, so zero is rejected here.
        require_positive("gamma", gamma)?;
        Ok(Self::GammaOverLog { gamma })
    }

    pub fn table(entries: BTreeMap<u64, f64>) -> Result<Self, ModelError> {
        if entries.is_empty() {
            return Err(ModelError::InvalidParameter("empty s_n table".into()));
        }
        for (&n, &s) in &entries {
            if n < 2 {
                return Err(ModelError::InvalidParameter(format!("table key n = {n} < 2")));
            }
            if !(s > 0.0) || !s.is_finite() {
                return Err(ModelError::InvalidParameter(format!("table s_{n} = {s}")));
            }
        }
        Ok(Self::Table { entries })
    }

    /// `s_n` for a concrete `n`.
    ///
    /// Panics if a `Table` rule has no entry for `n`; table rules must
    /// cover every size they are queried at.
    pub fn value(&self, n: u64) -> f64 {
        debug_assert!(n >= 2);
        let log_n = (n as f64).ln();
        match self {
            Self::Constant { s } => *s,
            Self::PowerOfLog { c, a } => c * log_n.powf(-a),
            Self::GammaOverLog { gamma } => gamma / log_n,
            Self::Table { entries } => *entries
                .get(&n)
                .unwrap_or_else(|| panic!("s_n table has no entry for n = {n}")),
        }
    }
}

/// Regime of a model, decided symbolically from the family and rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Regime {
    /// `s_n log n` has the finite limit `γ`.
    VerySmall { gamma: f64 },
    /// `s_n log n -> ∞` and `s_n² log n -> 0`.
    Intermediate,
    /// `s_n = s` fixed.
    ConstantS { s: f64 },
    /// No declared limit, or outside the classes above.
    Other,
}

#[derive(Debug, Clone, PartialEq)]
enum Family {
    Powered { base: BaseDistribution, rule: SnRule },
    LogFrechet { rho: f64, alpha: f64 },
    NegPowerExp { gamma: f64 },
}

/// An edge-weight law, valid for every `n >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightModel {
    family: Family,
}

/// Scale and disorder parameters of a model at a concrete `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeParams {
    pub n: u64,
    pub s_n: f64,
    /// `p_n = 1 / s_n`.
    pub p_n: f64,
    /// Solution of `n F_n(u_n) = 1`.
    pub u_n: f64,
    /// `G'(0+)` of the base law (1 for the n-independent families).
    pub lambda: f64,
    pub regime: Regime,
}

impl WeightModel {
    pub fn powered(base: BaseDistribution, rule: SnRule) -> Result<Self, ModelError> {
        Ok(Self { family: Family::Powered { base, rule } })
    }

    pub fn log_frechet(rho: f64, alpha: f64) -> Result<Self, ModelError> {
        require_positive("rho", rho)?;
        require_positive("alpha", alpha)?;
        Ok(Self { family: Family::LogFrechet { rho, alpha } })
    }

    pub fn neg_power_exp(gamma: f64) -> Result<Self, ModelError> {
        require_positive("gamma", gamma)?;
        Ok(Self { family: Family::NegPowerExp { gamma } })
    }

    /// The powered base law, if this is a powered model.
    pub fn base(&self) -> Option<BaseDistribution> {
        match &self.family {
            Family::Powered { base, .. } => Some(*base),
            _ => None,
        }
    }

    /// `G'(0+)` of the base law; 1 for the n-independent families.
    pub fn lambda(&self) -> f64 {
        match &self.family {
            Family::Powered { base, .. } => base.lambda(),
            _ => 1.0,
        }
    }

    /// Edge-weight CDF `F_n(x)`. Zero for `x <= 0`, monotone, and `1`
    /// beyond the upper end of the support.
    pub fn cdf(&self, n: u64, x: f64) -> f64 {
        self.law(n).cdf(x)
    }

    /// Inverse of [`Self::cdf`] on (0, 1).
    pub fn quantile(&self, n: u64, q: f64) -> Result<f64, ModelError> {
        if !(q > 0.0 && q < 1.0) {
            return Err(ModelError::UnitDomain { what: "quantile argument", value: q });
        }
        Ok(self.law(n).quantile(q))
    }

    /// Inverse-CDF sampling from a supplied unit variate in (0, 1).
    pub fn sample(&self, n: u64, unit: f64) -> Result<f64, ModelError> {
        self.quantile(n, unit)
    }

    /// Lebesgue density `F_n'(x)`.
    pub fn density(&self, n: u64, x: f64) -> f64 {
        self.law(n).density(x)
    }

    /// `ln F_n'(x)`; `-inf` outside the support.
    pub fn log_density(&self, n: u64, x: f64) -> f64 {
        self.law(n).log_density(x)
    }

    /// Extreme-value scale: the unique `u_n` with `n F_n(u_n) = 1`,
    /// from the per-family closed form.
    pub fn scale_un(&self, n: u64) -> f64 {
        assert!(n >= 2, "scale_un needs n >= 2, got {n}");
        let nf = n as f64;
        match &self.family {
            // u_n = G^{-1}(1/n)^{s_n}
            Family::Powered { base, rule } => base.quantile(1.0 / nf).powf(rule.value(n)),
            // u_n = exp(-(log n / rho)^{1/alpha})
            Family::LogFrechet { rho, alpha } => (-(nf.ln() / rho).powf(1.0 / alpha)).exp(),
            // u_n = (log n)^{-gamma}
            Family::NegPowerExp { gamma } => nf.ln().powf(-gamma),
        }
    }

    /// Root-finding cross-check for [`Self::scale_un`]: bisection on
    /// `n F_n(u) = 1` in log space to 1e-12 relative.
    pub fn scale_un_bisect(&self, n: u64) -> f64 {
        assert!(n >= 2);
        let target = 1.0 / n as f64;
        let mut hi = 1.0f64;
        while self.cdf(n, hi) <= target {
            hi *= 2.0;
            assert!(hi.is_finite(), "failed to bracket u_n from above");
        }
        let mut lo_ln = (-690.0f64).max(hi.ln() - 1500.0);
        let mut hi_ln = hi.ln();
        debug_assert!(self.cdf(n, lo_ln.exp()) < target);
        for _ in 0..200 {
            let mid = 0.5 * (lo_ln + hi_ln);
            if self.cdf(n, mid.exp()) < target {
                lo_ln = mid;
            } else {
                hi_ln = mid;
            }
            if hi_ln - lo_ln < 1e-13 {
                break;
            }
        }
        (0.5 * (lo_ln + hi_ln)).exp()
    }

    /// Effective disorder parameter `s_n`: the rule value for powered
    /// models, and the heuristic `-1/Φ_n'(log u_n)` evaluated in closed
    /// form for the n-independent families.
    pub fn effective_sn(&self, n: u64) -> f64 {
        assert!(n >= 2, "effective_sn needs n >= 2, got {n}");
        let log_n = (n as f64).ln();
        match &self.family {
            Family::Powered { rule, .. } => rule.value(n),
            Family::LogFrechet { rho, alpha } => {
                log_n.powf(-1.0 + 1.0 / alpha) / (alpha * rho.powf(1.0 / alpha))
            }
            Family::NegPowerExp { gamma } => gamma / log_n,
        }
    }

    /// Universality class, decided symbolically from family and rule.
    pub fn regime(&self) -> Regime {
        match &self.family {
            Family::Powered { rule, .. } => match rule {
                SnRule::Constant { s } => Regime::ConstantS { s: *s },
                SnRule::GammaOverLog { gamma } => Regime::VerySmall { gamma: *gamma },
                // s_n log n = c (log n)^{1-a} -> ∞ for a < 1;
                // s_n² log n = c² (log n)^{1-2a} -> 0 iff a > 1/2.
                SnRule::PowerOfLog { a, .. } => {
                    if *a > 0.5 {
                        Regime::Intermediate
                    } else {
                        Regime::Other
                    }
                }
                SnRule::Table { .. } => Regime::Other,
            },
            // s_n log n = α^{-1} ρ^{-1/α} (log n)^{1/α} -> ∞ always;
            // s_n² log n -> 0 iff α > 2.
            Family::LogFrechet { alpha, .. } => {
                if *alpha > 2.0 {
                    Regime::Intermediate
                } else {
                    Regime::Other
                }
            }
            Family::NegPowerExp { gamma } => Regime::VerySmall { gamma: *gamma },
        }
    }

    /// Bundle of the per-`n` scale parameters.
    pub fn regime_params(&self, n: u64) -> RegimeParams {
        let s_n = self.effective_sn(n);
        RegimeParams {
            n,
            s_n,
            p_n: 1.0 / s_n,
            u_n: self.scale_un(n),
            lambda: self.lambda(),
            regime: self.regime(),
        }
    }

    /// Closed-form evaluator frozen at a fixed `n`, for hot loops.
    pub fn law(&self, n: u64) -> EdgeLaw {
        assert!(n >= 2, "law needs n >= 2, got {n}");
        match &self.family {
            Family::Powered { base, rule } => {
                let s = rule.value(n);
                match *base {
                    BaseDistribution::Uniform { lambda } => {
                        EdgeLaw::PoweredUniform { s, p: 1.0 / s, lambda }
                    }
                    BaseDistribution::Exponential { lambda } => {
                        EdgeLaw::PoweredExp { s, p: 1.0 / s, lambda }
                    }
                }
            }
            Family::LogFrechet { rho, alpha } => EdgeLaw::LogFrechet { rho: *rho, alpha: *alpha },
            Family::NegPowerExp { gamma } => EdgeLaw::NegPowerExp { gamma: *gamma },
        }
    }

    /// Short family tag for CSV output.
    pub fn family_name(&self) -> &'static str {
        match &self.family {
            Family::Powered { base: BaseDistribution::Uniform { .. }, .. } => "powered-uniform",
            Family::Powered { base: BaseDistribution::Exponential { .. }, .. } => "powered-exp",
            Family::LogFrechet { .. } => "logfrechet",
            Family::NegPowerExp { .. } => "negpowexp",
        }
    }

    pub fn rule(&self) -> Option<&SnRule> {
        match &self.family {
            Family::Powered { rule, .. } => Some(rule),
            _ => None,
        }
    }

    /// LogFrechet parameters `(rho, alpha)`, if applicable.
    pub fn log_frechet_params(&self) -> Option<(f64, f64)> {
        match &self.family {
            Family::LogFrechet { rho, alpha } => Some((*rho, *alpha)),
            _ => None,
        }
    }
}

impl fmt::Display for WeightModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Powered { base, rule } => {
                let (name, lambda) = match base {
                    BaseDistribution::Uniform { lambda } => ("uniform", lambda),
                    BaseDistribution::Exponential { lambda } => ("exp", lambda),
                };
                write!(f, "powered:{name}:lambda={lambda}:rule=")?;
                match rule {
                    SnRule::Constant { s } => write!(f, "const(s={s})"),
                    SnRule::PowerOfLog { c, a } => write!(f, "powlog(c={c},a={a})"),
                    SnRule::GammaOverLog { gamma } => write!(f, "gammalog(gamma={gamma})"),
                    SnRule::Table { entries } => {
                        write!(f, "table(")?;
                        for (i, (n, s)) in entries.iter().enumerate() {
                            if i > 0 {
                                write!(f, ",")?;
                            }
                            write!(f, "{n}={s}")?;
                        }
                        write!(f, ")")
                    }
                }
            }
            Family::LogFrechet { rho, alpha } => write!(f, "logfrechet:rho={rho}:alpha={alpha}"),
            Family::NegPowerExp { gamma } => write!(f, "negpowexp:gamma={gamma}"),
        }
    }
}

/// Closed-form CDF/quantile/density of a model at one fixed `n`.
///
/// All variants map a unit variate through the quantile in a handful of
/// transcendental ops; the simulator calls these per edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeLaw {
    PoweredUniform { s: f64, p: f64, lambda: f64 },
    PoweredExp { s: f64, p: f64, lambda: f64 },
    LogFrechet { rho: f64, alpha: f64 },
    NegPowerExp { gamma: f64 },
}

impl EdgeLaw {
    #[inline]
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            Self::PoweredUniform { p, lambda, .. } => (lambda * x.powf(p)).min(1.0),
            Self::PoweredExp { p, lambda, .. } => -(-lambda * x.powf(p)).exp_m1(),
            Self::LogFrechet { rho, alpha } => {
                if x >= 1.0 {
                    1.0
                } else {
                    (-rho * (-x.ln()).powf(alpha)).exp()
                }
            }
            Self::NegPowerExp { gamma } => (-x.powf(-1.0 / gamma)).exp(),
        }
    }

    #[inline]
    pub fn quantile(&self, q: f64) -> f64 {
        debug_assert!(q > 0.0 && q < 1.0);
        match *self {
            Self::PoweredUniform { s, lambda, .. } => (q / lambda).powf(s),
            Self::PoweredExp { s, lambda, .. } => (-(-q).ln_1p() / lambda).powf(s),
            Self::LogFrechet { rho, alpha } => (-((-q.ln()) / rho).powf(1.0 / alpha)).exp(),
            Self::NegPowerExp { gamma } => (-q.ln()).powf(-gamma),
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            Self::PoweredUniform { p, lambda, .. } => {
                if lambda * x.powf(p) < 1.0 {
                    lambda * p * x.powf(p - 1.0)
                } else {
                    0.0
                }
            }
            Self::PoweredExp { p, lambda, .. } => {
                lambda * p * x.powf(p - 1.0) * (-lambda * x.powf(p)).exp()
            }
            Self::LogFrechet { rho, alpha } => {
                if x >= 1.0 {
                    0.0
                } else {
                    let t = -x.ln();
                    rho * alpha / x * t.powf(alpha - 1.0) * (-rho * t.powf(alpha)).exp()
                }
            }
            Self::NegPowerExp { gamma } => {
                let t = x.powf(-1.0 / gamma);
                t / (gamma * x) * (-t).exp()
            }
        }
    }

    pub fn log_density(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        match *self {
            Self::PoweredUniform { p, lambda, .. } => {
                if lambda * x.powf(p) < 1.0 {
                    lambda.ln() + p.ln() + (p - 1.0) * x.ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
            Self::PoweredExp { p, lambda, .. } => {
                lambda.ln() + p.ln() + (p - 1.0) * x.ln() - lambda * x.powf(p)
            }
            Self::LogFrechet { rho, alpha } => {
                if x >= 1.0 {
                    f64::NEG_INFINITY
                } else {
                    let t = -x.ln();
                    (rho * alpha).ln() - x.ln() + (alpha - 1.0) * t.ln() - rho * t.powf(alpha)
                }
            }
            Self::NegPowerExp { gamma } => {
                let t = x.powf(-1.0 / gamma);
                t.ln() - gamma.ln() - x.ln() - t
            }
        }
    }
}

fn require_positive(what: &'static str, v: f64) -> Result<(), ModelError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter(format!("{what} must be positive and finite, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn powered_uniform(lambda: f64, rule: SnRule) -> WeightModel {
        WeightModel::powered(BaseDistribution::uniform(lambda).unwrap(), rule).unwrap()
    }

    #[test]
    fn cdf_examples() {
        // Uniform base, s = 1/2: F(x) = x², so F(0.25) = 0.0625.
        let m = powered_uniform(1.0, SnRule::constant(0.5).unwrap());
        assert!((m.cdf(10, 0.25) - 0.0625).abs() < 1e-15);

        // LogFrechet(1, 2): F(e^-2) = e^-4.
        let lf = WeightModel::log_frechet(1.0, 2.0).unwrap();
        let got = lf.cdf(10, (-2.0f64).exp());
        assert!((got - (-4.0f64).exp()).abs() < 1e-15, "got {got}");

        // Above the support every CDF is one.
        assert_eq!(m.cdf(10, 5.0), 1.0);
        assert_eq!(lf.cdf(10, 2.0), 1.0);
        let npe = WeightModel::neg_power_exp(2.0).unwrap();
        assert_eq!(npe.cdf(10, 1e308), 1.0);
        // And zero at the origin.
        assert_eq!(m.cdf(10, 0.0), 0.0);
        assert_eq!(lf.cdf(10, 0.0), 0.0);
        assert_eq!(npe.cdf(10, 0.0), 0.0);
    }

    #[test]
    fn quantile_examples() {
        // Identity law: uniform base with s = 1.
        let m = powered_uniform(1.0, SnRule::constant(1.0).unwrap());
        assert_eq!(m.quantile(10, 0.5).unwrap(), 0.5);

        // LogFrechet(1, 2): quantile(e^-4) = e^-2.
        let lf = WeightModel::log_frechet(1.0, 2.0).unwrap();
        let got = lf.quantile(10, (-4.0f64).exp()).unwrap();
        assert!((got - (-2.0f64).exp()).abs() < 1e-15);

        // Exponential base, s = 2: G^{-1}(1 - e^-1) = 1, then 1^2 = 1.
        let me = WeightModel::powered(
            BaseDistribution::exponential(1.0).unwrap(),
            SnRule::constant(2.0).unwrap(),
        )
        .unwrap();
        let got = me.quantile(10, 1.0 - (-1.0f64).exp()).unwrap();
        assert!((got - 1.0).abs() < 1e-14, "got {got}");

        assert!(m.quantile(10, 0.0).is_err());
        assert!(m.quantile(10, 1.0).is_err());
        assert!(m.quantile(10, -0.2).is_err());
    }

    #[test]
    fn quantile_cdf_round_trip() {
        let models = test_models();
        for m in &models {
            for n in [3u64, 10, 1000, 1_000_000] {
                for i in 1..40 {
                    let q = i as f64 / 40.0;
                    let x = m.quantile(n, q).unwrap();
                    let back = m.cdf(n, x);
                    assert!(
                        (back - q).abs() <= 1e-9 * q.max(1e-9),
                        "{m}: n={n} q={q} -> x={x} -> {back}"
                    );
                }
            }
        }
    }

    #[test]
    fn sample_is_monotone_in_unit() {
        let models = test_models();
        for m in &models {
            let mut prev = 0.0;
            for i in 1..200 {
                let u = i as f64 / 200.0;
                let w = m.sample(100, u).unwrap();
                assert!(w > prev, "{m}: sample not strictly increasing at u={u}");
                prev = w;
            }
        }
    }

    #[test]
    fn scale_un_satisfies_defining_equation() {
        for m in &test_models() {
            for n in [10u64, 1000, 1_000_000] {
                let u = m.scale_un(n);
                let nf = n as f64 * m.cdf(n, u);
                assert!((nf - 1.0).abs() <= 1e-9, "{m}: n={n} nF(u_n)={nf}");
            }
        }
    }

    #[test]
    fn scale_un_closed_forms() {
        // Uniform base: u_n = (λ n)^{-s_n}.
        let m = powered_uniform(1.0, SnRule::power_of_log(1.0, 0.75).unwrap());
        for n in [10u64, 977, 10_000] {
            let s = m.effective_sn(n);
            let want = (n as f64).powf(-s);
            assert!((m.scale_un(n) / want - 1.0).abs() < 1e-13);
        }
        let m2 = powered_uniform(2.5, SnRule::constant(0.4).unwrap());
        for n in [10u64, 977] {
            let want = (2.5 * n as f64).powf(-0.4);
            assert!((m2.scale_un(n) / want - 1.0).abs() < 1e-13);
        }

        // Exponential base, s=1, n=10: -log(1 - 1/10).
        let me = WeightModel::powered(
            BaseDistribution::exponential(1.0).unwrap(),
            SnRule::constant(1.0).unwrap(),
        )
        .unwrap();
        assert!((me.scale_un(10) - 0.10536051565782631).abs() < 1e-15);

        // LogFrechet(1, 3) at n = round(e^8): u ≈ e^-2 within 1e-3.
        let lf = WeightModel::log_frechet(1.0, 3.0).unwrap();
        let n = (8.0f64).exp().round() as u64;
        assert!((lf.scale_un(n) - (-2.0f64).exp()).abs() < 1e-3);
    }

    #[test]
    fn scale_un_matches_bisection() {
        for m in &test_models() {
            for n in [10u64, 1000, 1_000_000] {
                let closed = m.scale_un(n);
                let bisect = m.scale_un_bisect(n);
                assert!(
                    (closed / bisect - 1.0).abs() < 1e-9,
                    "{m}: n={n} closed={closed} bisect={bisect}"
                );
            }
        }
    }

    #[test]
    fn effective_sn_closed_forms() {
        let lf = WeightModel::log_frechet(1.0, 2.0).unwrap();
        // At log n = 4 the formula gives 4^{-1/2}/2 = 0.25; n = 55 is close.
        let n = (4.0f64).exp().round() as u64;
        let got = lf.effective_sn(n);
        let exact = (n as f64).ln().powf(-0.5) / 2.0;
        assert!((got - exact).abs() < 1e-15);
        assert!((got - 0.25).abs() < 2e-3);

        let npe = WeightModel::neg_power_exp(3.0).unwrap();
        let n = (3.0f64).exp().round() as u64;
        assert!((npe.effective_sn(n) - 3.0 / (n as f64).ln()).abs() < 1e-15);

        let m = powered_uniform(1.0, SnRule::constant(0.7).unwrap());
        assert_eq!(m.effective_sn(1234), 0.7);
    }

    #[test]
    fn log_frechet_sn_times_log_n_identity() {
        // effective_sn * log n = α^{-1} ρ^{-1/α} (log n)^{1/α}.
        for (rho, alpha) in [(1.0, 3.0), (2.0, 2.5), (0.5, 4.0)] {
            let lf = WeightModel::log_frechet(rho, alpha).unwrap();
            for n in [100u64, 10_000, 1_000_000] {
                let log_n = (n as f64).ln();
                let lhs = lf.effective_sn(n) * log_n;
                let rhs = log_n.powf(1.0 / alpha) / (alpha * rho.powf(1.0 / alpha));
                assert!((lhs / rhs - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn regime_classification() {
        let vs = powered_uniform(1.0, SnRule::gamma_over_log(2.0).unwrap());
        assert_eq!(vs.regime(), Regime::VerySmall { gamma: 2.0 });

        assert_eq!(WeightModel::log_frechet(1.0, 3.0).unwrap().regime(), Regime::Intermediate);
        assert_eq!(WeightModel::log_frechet(1.0, 1.5).unwrap().regime(), Regime::Other);
        assert_eq!(WeightModel::log_frechet(1.0, 2.0).unwrap().regime(), Regime::Other);

        let inter = powered_uniform(1.0, SnRule::power_of_log(1.0, 0.75).unwrap());
        assert_eq!(inter.regime(), Regime::Intermediate);
        let other = powered_uniform(1.0, SnRule::power_of_log(1.0, 0.4).unwrap());
        assert_eq!(other.regime(), Regime::Other);

        let cs = powered_uniform(1.0, SnRule::constant(0.7).unwrap());
        assert_eq!(cs.regime(), Regime::ConstantS { s: 0.7 });

        let mut t = BTreeMap::new();
        t.insert(10u64, 0.5);
        let table = powered_uniform(1.0, SnRule::table(t).unwrap());
        assert_eq!(table.regime(), Regime::Other);

        assert_eq!(
            WeightModel::neg_power_exp(1.5).unwrap().regime(),
            Regime::VerySmall { gamma: 1.5 }
        );
    }

    #[test]
    fn lambda_rescaling_identity() {
        // Powered model with base scale λ: driving the same unit variate
        // through λ = 1 multiplies each weight by λ^{s_n}.
        for base_kind in ["uniform", "exp"] {
            for lambda in [0.5, 2.0, 7.0] {
                let (b_l, b_1) = match base_kind {
                    "uniform" => (
                        BaseDistribution::uniform(lambda).unwrap(),
                        BaseDistribution::uniform(1.0).unwrap(),
                    ),
                    _ => (
                        BaseDistribution::exponential(lambda).unwrap(),
                        BaseDistribution::exponential(1.0).unwrap(),
                    ),
                };
                let rule = SnRule::power_of_log(1.0, 0.6).unwrap();
                let m_l = WeightModel::powered(b_l, rule.clone()).unwrap();
                let m_1 = WeightModel::powered(b_1, rule).unwrap();
                let n = 5000;
                let s = m_l.effective_sn(n);
                let factor = lambda.powf(s);
                for i in 1..50 {
                    let u = i as f64 / 50.0;
                    let w_l = m_l.sample(n, u).unwrap();
                    let w_1 = m_1.sample(n, u).unwrap();
                    assert!(
                        (w_1 / (factor * w_l) - 1.0).abs() < 1e-12,
                        "{base_kind} λ={lambda} u={u}"
                    );
                }
            }
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(BaseDistribution::uniform(0.0).is_err());
        assert!(BaseDistribution::exponential(-1.0).is_err());
        assert!(WeightModel::log_frechet(0.0, 2.0).is_err());
        assert!(WeightModel::log_frechet(1.0, f64::NAN).is_err());
        assert!(WeightModel::neg_power_exp(0.0).is_err());
        assert!(SnRule::constant(0.0).is_err());
        assert!(SnRule::power_of_log(1.0, 1.0).is_err());
        assert!(SnRule::power_of_log(1.0, 0.0).is_err());
        assert!(SnRule::gamma_over_log(0.0).is_err());
        assert!(SnRule::table(BTreeMap::new()).is_err());
    }

    #[test]
    fn cdf_is_monotone() {
        for m in &test_models() {
            let mut prev = -1.0;
            for i in 0..400 {
                let x = i as f64 * 0.005;
                let f = m.cdf(50, x);
                assert!(f >= prev, "{m}: cdf decreased at x={x}");
                assert!((0.0..=1.0).contains(&f));
                prev = f;
            }
        }
    }

    fn test_models() -> Vec<WeightModel> {
        vec![
            powered_uniform(1.0, SnRule::constant(0.5).unwrap()),
            powered_uniform(3.0, SnRule::power_of_log(1.0, 0.75).unwrap()),
            WeightModel::powered(
                BaseDistribution::exponential(1.0).unwrap(),
                SnRule::constant(1.0).unwrap(),
            )
            .unwrap(),
            WeightModel::powered(
                BaseDistribution::exponential(0.5).unwrap(),
                SnRule::gamma_over_log(2.0).unwrap(),
            )
            .unwrap(),
            WeightModel::log_frechet(1.0, 3.0).unwrap(),
            WeightModel::log_frechet(2.0, 2.0).unwrap(),
            WeightModel::neg_power_exp(1.5).unwrap(),
        ]
    }
}
