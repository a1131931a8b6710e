//! Haptic time series, featurization, the linear margin state classifier and
//! discrimination scoring of sensing actions.

pub mod classifier;
pub mod features;
pub mod series;
pub mod validation;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classifier::{train, Classification, StateModel, TrainConfig};
pub use features::{featurize, resample, FeatureVector, Standardizer};
pub use series::{read_dataset, write_dataset, HapticStep, HapticTimeSeries};
pub use validation::{cross_validate, discrimination_score, DiscriminationScore};

#[derive(Debug, Error, PartialEq)]
pub enum HapticError {
    #[error("empty series `{0}`")]
    EmptySeries(String),
    #[error("series `{0}` needs at least 2 steps")]
    TooShort(String),
    #[error("series `{0}` has non-increasing time stamps")]
    NonIncreasingTime(String),
    #[error("empty dataset")]
    EmptyDataset,
    #[error("nothing to discriminate")]
    NothingToDiscriminate,
    #[error("series `{0}` has no label")]
    Unlabeled(String),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("sensing action mismatch: expected `{0}`, got `{1}`")]
    MixedSensingActions(String, String),
    #[error("class `{class}` has {have} samples, fewer than {folds} folds")]
    TooFewSamples {
        class: String,
        have: usize,
        folds: usize,
    },
    #[error("feature dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("dataset format: {0}")]
    Format(String),
    #[error("model file: {0}")]
    ModelFile(String),
}

impl From<csv::Error> for HapticError {
    fn from(e: csv::Error) -> Self {
        HapticError::Format(e.to_string())
    }
}

impl From<std::io::Error> for HapticError {
    fn from(e: std::io::Error) -> Self {
        HapticError::Format(e.to_string())
    }
}

pub const MODELS_FORMAT: &str = "skill-ecm/models";
pub const MODELS_FORMAT_VERSION: u32 = 1;

/// Trained classifiers plus their discrimination scores, one per sensing action.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSet {
    pub format: String,
    pub version: u32,
    pub models: Vec<StateModel>,
    pub scores: Vec<DiscriminationScore>,
}

impl ModelSet {
    pub fn new(models: Vec<StateModel>, scores: Vec<DiscriminationScore>) -> Self {
        ModelSet {
            format: MODELS_FORMAT.into(),
            version: MODELS_FORMAT_VERSION,
            models,
            scores,
        }
    }

    pub fn model(&self, sensing_action: &str) -> Option<&StateModel> {
        self.models.iter().find(|m| m.sensing_action == sensing_action)
    }

    pub fn score(&self, sensing_action: &str) -> Option<&DiscriminationScore> {
        self.scores.iter().find(|m| m.sensing_action == sensing_action)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model set serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, HapticError> {
        let set: ModelSet =
            serde_json::from_str(text).map_err(|e| HapticError::ModelFile(e.to_string()))?;
        if set.format != MODELS_FORMAT || set.version != MODELS_FORMAT_VERSION {
            return Err(HapticError::ModelFile(format!(
                "unsupported format {} v{}",
                set.format, set.version
            )));
        }
        Ok(set)
    }
}
