//! Experiment configuration: flat `key=value` text plus the model
//! specification grammar.
//!
//! ```text
//! kind=scaling
//! model=powered:uniform:lambda=1:rule=powlog(c=1,a=0.75)
//! n_grid=1000,10000,30000
//! reps=200
//! seed=42
//! workers=1
//! out=scaling.csv
//! summary=scaling.json
//! beta=0.25
//! ```
//!
//! Keys not meaningful for a kind are ignored by it. Command-line flags
//! override file values.

use std::collections::BTreeMap;
use std::path::PathBuf;

use fpp_core::models::{parse_model, WeightModel};

use crate::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    /// Weight scaling against the predicted bands.
    Scaling,
    /// Hopcount frequencies against the predicted value.
    Hopcount,
    /// Gumbel-transformed weights against the limit law.
    Gumbel,
    /// Path-pair census table.
    Census,
    /// Convolution estimates and bounds.
    Convolution,
    /// Moment diagnostics over the size grid.
    Moments,
}

impl ExperimentKind {
    pub fn parse(s: &str) -> Result<Self, HarnessError> {
        Ok(match s {
            "scaling" => Self::Scaling,
            "hopcount" => Self::Hopcount,
            "gumbel" => Self::Gumbel,
            "census" => Self::Census,
            "convolution" => Self::Convolution,
            "moments" => Self::Moments,
            other => return Err(HarnessError::Config(format!("unknown experiment kind `{other}`"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Scaling => "scaling",
            Self::Hopcount => "hopcount",
            Self::Gumbel => "gumbel",
            Self::Census => "census",
            Self::Convolution => "convolution",
            Self::Moments => "moments",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub model_spec: String,
    pub n_grid: Vec<u64>,
    pub reps: u64,
    pub master_seed: u64,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub summary_out: Option<PathBuf>,
    /// Hopcount band parameter for the diverging regimes.
    pub beta: f64,
    /// Hop counts for census/convolution/moments kinds.
    pub k_list: Vec<u64>,
    /// Evaluation points for the convolution kind.
    pub x_list: Vec<f64>,
    /// Monte Carlo replications for the convolution kind.
    pub mc_reps: u64,
    /// Budget multipliers for the moments kind: b = b_mult * upper band,
    /// d = d_mult * lower band.
    pub b_mult: f64,
    pub d_mult: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            kind: ExperimentKind::Scaling,
            model_spec: String::new(),
            n_grid: Vec::new(),
            reps: 1,
            master_seed: 0,
            workers: 1,
            out: None,
            summary_out: None,
            beta: fpp_core::predictor::DEFAULT_BETA,
            k_list: Vec::new(),
            x_list: Vec::new(),
            mc_reps: 100_000,
            b_mult: 1.0,
            d_mult: 0.7,
        }
    }
}

impl ExperimentConfig {
    /// Parse a flat key=value config file body.
    pub fn from_text(text: &str) -> Result<Self, HarnessError> {
        let mut kv = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                HarnessError::Config(format!("line {}: `{line}` is not key=value", lineno + 1))
            })?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let mut cfg = Self::default();
        cfg.apply(&kv)?;
        Ok(cfg)
    }

    /// Apply key=value overrides on top of the current values.
    pub fn apply(&mut self, kv: &BTreeMap<String, String>) -> Result<(), HarnessError> {
        for (k, v) in kv {
            match k.as_str() {
                "kind" => self.kind = ExperimentKind::parse(v)?,
                "model" => self.model_spec = v.clone(),
                "n" | "n_grid" => self.n_grid = parse_list(v, "n_grid")?,
                "reps" => self.reps = parse_num(v, "reps")?,
                "seed" => self.master_seed = parse_num(v, "seed")?,
                "workers" => self.workers = parse_num(v, "workers")? as usize,
                "out" => self.out = Some(PathBuf::from(v)),
                "summary" => self.summary_out = Some(PathBuf::from(v)),
                "beta" => self.beta = parse_float(v, "beta")?,
                "k" | "k_list" => self.k_list = parse_list(v, "k_list")?,
                "x" | "x_list" => self.x_list = parse_float_list(v, "x_list")?,
                "mc_reps" => self.mc_reps = parse_num(v, "mc_reps")?,
                "b_mult" => self.b_mult = parse_float(v, "b_mult")?,
                "d_mult" => self.d_mult = parse_float(v, "d_mult")?,
                other => {
                    return Err(HarnessError::Config(format!("unknown config key `{other}`")))
                }
            }
        }
        Ok(())
    }

    /// Validate and resolve the model. Rejects unsatisfiable
    /// kind/model combinations before any computation runs.
    pub fn validate(&self) -> Result<Option<WeightModel>, HarnessError> {
        if self.n_grid.is_empty() {
            return Err(HarnessError::Config("n_grid must not be empty".into()));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HarnessError::Config("n_grid must be strictly increasing".into()));
        }
        if self.reps < 1 {
            return Err(HarnessError::Config("reps must be at least 1".into()));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(HarnessError::Config(format!("beta must lie in (0,1), got {}", self.beta)));
        }
        if self.kind == ExperimentKind::Census {
            if self.k_list.is_empty() {
                return Err(HarnessError::Config("census needs k_list".into()));
            }
            return Ok(None);
        }
        if self.model_spec.is_empty() {
            return Err(HarnessError::Config("model is required".into()));
        }
        let model = parse_model(&self.model_spec)?;
        if self.kind == ExperimentKind::Gumbel {
            // Surface bad gamma (finite-limit requirement, ties) up front.
            fpp_core::predictor::gumbel_spec(&model, *self.n_grid.last().unwrap())
                .map_err(|e| HarnessError::Config(e.to_string()))?;
        }
        if self.kind == ExperimentKind::Convolution && self.x_list.is_empty() {
            return Err(HarnessError::Config("convolution needs x_list".into()));
        }
        if matches!(self.kind, ExperimentKind::Convolution | ExperimentKind::Moments)
            && self.k_list.is_empty()
        {
            return Err(HarnessError::Config(format!("{} needs k_list", self.kind.name())));
        }
        Ok(Some(model))
    }
}

fn parse_num(v: &str, what: &str) -> Result<u64, HarnessError> {
    v.parse().map_err(|_| HarnessError::Config(format!("bad {what}: `{v}`")))
}

fn parse_float(v: &str, what: &str) -> Result<f64, HarnessError> {
    v.parse().map_err(|_| HarnessError::Config(format!("bad {what}: `{v}`")))
}

fn parse_list(v: &str, what: &str) -> Result<Vec<u64>, HarnessError> {
    v.split(',').map(|s| parse_num(s.trim(), what)).collect()
}

fn parse_float_list(v: &str, what: &str) -> Result<Vec<f64>, HarnessError> {
    v.split(',').map(|s| parse_float(s.trim(), what)).collect()
}
