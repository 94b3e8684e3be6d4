//! Experiment harness for the K_n first-passage-percolation laboratory:
//! flat-text experiment configs, deterministic Monte Carlo drivers with
//! CSV/JSON emission, statistical comparison against the closed-form
//! predictions, and the one-shot verification suite.

pub mod config;
pub mod experiment;
pub mod rows;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("verification failed")]
    Verification,
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    /// Process exit code: 0 success, 2 config error, 3 verification
    /// failure, 4 resource-limit refusal.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Verification => 3,
            HarnessError::ResourceLimit(_) => 4,
            HarnessError::Io(_) => 1,
        }
    }
}

impl From<fpp_core::models::ModelError> for HarnessError {
    fn from(e: fpp_core::models::ModelError) -> Self {
        HarnessError::Config(e.to_string())
    }
}

impl From<fpp_core::simulator::SimError> for HarnessError {
    fn from(e: fpp_core::simulator::SimError) -> Self {
        use fpp_core::simulator::SimError;
        match e {
            SimError::WorkBoundExceeded { .. } | SimError::TooLarge { .. } => {
                HarnessError::ResourceLimit(e.to_string())
            }
            other => HarnessError::Config(other.to_string()),
        }
    }
}

impl From<fpp_core::census::CensusError> for HarnessError {
    fn from(e: fpp_core::census::CensusError) -> Self {
        use fpp_core::census::CensusError;
        match e {
            CensusError::SizeLimit { .. } => HarnessError::ResourceLimit(e.to_string()),
            other => HarnessError::Config(other.to_string()),
        }
    }
}

impl From<fpp_core::convolution::ConvError> for HarnessError {
    fn from(e: fpp_core::convolution::ConvError) -> Self {
        HarnessError::Config(e.to_string())
    }
}

impl From<fpp_core::predictor::PredictError> for HarnessError {
    fn from(e: fpp_core::predictor::PredictError) -> Self {
        HarnessError::Config(e.to_string())
    }
}
