use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::classifier::{class_order, train_with_classes, TrainConfig};
use super::series::HapticTimeSeries;
use super::HapticError;
use crate::seed::rng_for;

/// Stretch factor used when none is configured.
pub const DEFAULT_ALPHA: f64 = 10.0;
pub const DEFAULT_FOLDS: usize = 5;

/// Stratified `k`-fold cross-validation; returns the mean held-out accuracy
/// over folds. Fold assignment is shuffled per class with a stream derived
/// from `config.seed`.
pub fn cross_validate(
    data: &[HapticTimeSeries],
    folds: usize,
    config: &TrainConfig,
) -> Result<f64, HapticError> {
    if folds < 2 {
        return Err(HapticError::InvalidConfig(format!(
            "cross-validation needs at least 2 folds, got {folds}"
        )));
    }
    let classes = class_order(data);
    if classes.len() < 2 {
        return Err(HapticError::NothingToDiscriminate);
    }
    let action = &data[0].sensing_action;
    let mut rng = rng_for(config.seed, &format!("cv/{action}"));
    let mut fold_of = vec![0usize; data.len()];
    for class in &classes {
        let mut members: Vec<usize> = data
            .iter()
            .enumerate()
            .filter(|(_, s)| s.label.as_ref() == Some(class))
            .map(|(i, _)| i)
            .collect();
        if members.len() < folds {
            return Err(HapticError::TooFewSamples {
                class: class.clone(),
                have: members.len(),
                folds,
            });
        }
        members.shuffle(&mut rng);
        for (pos, &i) in members.iter().enumerate() {
            fold_of[i] = pos % folds;
        }
    }
    let mut total = 0.0;
    for fold in 0..folds {
        let (test, train): (Vec<_>, Vec<_>) = data
            .iter()
            .zip(&fold_of)
            .partition(|(_, &f)| f == fold);
        let train: Vec<HapticTimeSeries> = train.into_iter().map(|(s, _)| s.clone()).collect();
        let model = train_with_classes(&train, &classes, config)?;
        let mut correct = 0usize;
        for (s, _) in &test {
            if model.classify(s)?.state.as_str() == s.label.as_deref().unwrap_or_default() {
                correct += 1;
            }
        }
        total += correct as f64 / test.len() as f64;
    }
    Ok(total / folds as f64)
}

/// `D = exp(alpha * s)`.
pub fn discrimination_score(accuracy: f64, alpha: f64) -> f64 {
    (alpha * accuracy).exp()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationScore {
    pub sensing_action: String,
    /// Mean cross-validation accuracy.
    pub s: f64,
    pub alpha: f64,
    #[serde(rename = "D")]
    pub d: f64,
}

impl DiscriminationScore {
    pub fn new(sensing_action: impl Into<String>, s: f64, alpha: f64) -> Self {
        DiscriminationScore {
            sensing_action: sensing_action.into(),
            s,
            alpha,
            d: discrimination_score(s, alpha),
        }
    }
}
