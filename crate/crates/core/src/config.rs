//! Run configuration shared by the command-line tools.
//!
//! A configuration file (TOML) provides defaults; command-line flags override
//! individual fields. The merged configuration is written next to the
//! results of every run.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::agent::{AgentConfig, ConfidenceConfig};
use crate::convergence::UselessPrep;
use crate::ecm::PsParams;
use crate::haptic::TrainConfig;

/// Default output directory, unless `--out` or [`OUT_DIR_ENV`] says otherwise.
pub const DEFAULT_OUT_DIR: &str = "skill-ecm-out";
pub const OUT_DIR_ENV: &str = "SKILL_ECM_OUT";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Read { path: String, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifierConfig {
    pub alpha: f64,
    /// Resampled series length `L`.
    pub resample_len: usize,
    pub folds: usize,
    pub epochs: usize,
    pub lambda: f64,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        let t = TrainConfig::default();
        ClassifierConfig {
            alpha: crate::haptic::validation::DEFAULT_ALPHA,
            resample_len: t.resample_len,
            folds: crate::haptic::validation::DEFAULT_FOLDS,
            epochs: t.epochs,
            lambda: t.lambda,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DataConfig {
    pub samples: usize,
    /// Label states by ground truth instead of cycling order.
    pub supervised: bool,
}

impl Default for DataConfig {
    fn default() -> Self {
        DataConfig {
            samples: 50,
            supervised: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlayConfig {
    pub max_rollouts: usize,
}

impl Default for PlayConfig {
    fn default() -> Self {
        PlayConfig { max_rollouts: 300 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConvergeConfig {
    pub agents: usize,
    pub rollouts: usize,
    pub preps: Vec<usize>,
    pub threshold: f64,
    pub accuracies: Vec<(String, f64)>,
    pub complex_success: f64,
    pub useless_preps: UselessPrep,
}

impl Default for ConvergeConfig {
    fn default() -> Self {
        let s = crate::convergence::AbstractScenario::default();
        ConvergeConfig {
            agents: 10_000,
            rollouts: 1500,
            preps: vec![s.num_preps],
            threshold: 0.9,
            accuracies: s.sensing_accuracies,
            complex_success: s.complex_success,
            useless_preps: s.useless_preps,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// `book`, `box` or a path to a `.scenario` file.
    pub scenario: String,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
    pub params: PsParams,
    pub classifier: ClassifierConfig,
    pub confidence: ConfidenceConfig,
    pub data: DataConfig,
    pub play: PlayConfig,
    pub converge: ConvergeConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: "book".into(),
            seed: 7,
            out_dir: None,
            params: PsParams::default(),
            classifier: ClassifierConfig::default(),
            confidence: ConfidenceConfig::default(),
            data: DataConfig::default(),
            play: PlayConfig::default(),
            converge: ConvergeConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Invalid(e.to_string().replace('\n', " ")))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run config serializes")
    }

    /// SHA-256 of the serialized configuration, as lowercase hex.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_toml().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// `out_dir` if set, else `$SKILL_ECM_OUT`, else [`DEFAULT_OUT_DIR`].
    pub fn resolved_out_dir(&self) -> PathBuf {
        self.out_dir
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR))
    }

    pub fn agent_config(&self) -> AgentConfig {
        AgentConfig {
            params: self.params,
            alpha: self.classifier.alpha,
            folds: self.classifier.folds,
            train: TrainConfig {
                resample_len: self.classifier.resample_len,
                epochs: self.classifier.epochs,
                lambda: self.classifier.lambda,
                seed: crate::seed::derive_seed(self.seed, "classifier"),
            },
            confidence: self.confidence,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: &str| Err(ConfigError::Invalid(m.into()));
        self.params
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if !(self.classifier.alpha >= 0.0) {
            return bad("alpha must be non-negative");
        }
        if self.classifier.folds < 2 {
            return bad("need at least two folds");
        }
        if self.confidence.window == 0 || !(0.0..=1.0).contains(&self.confidence.threshold) {
            return bad("confidence window must be positive and threshold in [0, 1]");
        }
        Ok(())
    }
}
