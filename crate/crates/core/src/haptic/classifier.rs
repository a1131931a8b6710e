//! Maximum-margin linear multi-class state classifier.
//!
//! Every class `j` has a one-hot target; the model scores a feature vector
//! with `s = W x + b` and predicts `argmax_j s_j`. Training minimizes the
//! regularized multi-class hinge loss
//!
//! ```text
//! lambda/2 |W|^2 + 1/n sum_i max(0, 1 + max_{k != y_i} s_k(x_i) - s_{y_i}(x_i))
//! ```
//!
//! with Pegasos-style subgradient steps `eta_t = 1 / (lambda t)`, seeded
//! shuffling per epoch and iterate averaging over the second half of the
//! epochs. The bias is folded into `W` through a constant input of 1.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::features::{featurize, FeatureVector, Standardizer};
use super::series::HapticTimeSeries;
use super::HapticError;
use crate::seed::rng_for;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Resample length `L`.
    pub resample_len: usize,
    pub epochs: usize,
    /// L2 regularization strength.
    pub lambda: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            resample_len: 100,
            epochs: 40,
            lambda: 1e-3,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateModel {
    pub sensing_action: String,
    pub classes: Vec<String>,
    pub resample_len: usize,
    pub standardizer: Standardizer,
    /// One row per class, `9 * resample_len` columns.
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
    /// SHA-256 over the training series ids, labels and samples.
    pub trained_on: String,
    pub training_accuracy: f64,
    /// Training accuracy did not clear chance by a useful margin.
    pub degenerate: bool,
}

/// Margin over chance below which a trained model is flagged degenerate.
pub const DEGENERATE_MARGIN: f64 = 0.1;

/// Prediction plus the raw per-class score tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub class_index: usize,
    pub state: String,
    pub scores: Vec<f64>,
}

fn fingerprint(data: &[HapticTimeSeries]) -> String {
    let mut h = Sha256::new();
    for s in data {
        h.update(s.series_id.as_bytes());
        h.update([0u8]);
        h.update(s.label.as_deref().unwrap_or("").as_bytes());
        h.update([0u8]);
        for step in &s.steps {
            h.update(step.t.to_le_bytes());
            for c in step.channels() {
                h.update(c.to_le_bytes());
            }
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Lowest index wins ties.
pub fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

fn dot(w: &[f64], x: &[f64]) -> f64 {
    w.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Class labels in order of first appearance.
pub fn class_order(data: &[HapticTimeSeries]) -> Vec<String> {
    let mut classes: Vec<String> = Vec::new();
    for s in data {
        if let Some(l) = &s.label {
            if !classes.contains(l) {
                classes.push(l.clone());
            }
        }
    }
    classes
}

pub fn train(data: &[HapticTimeSeries], config: &TrainConfig) -> Result<StateModel, HapticError> {
    let classes = class_order(data);
    train_with_classes(data, &classes, config)
}

/// Trains with a fixed class order; classes without samples are allowed
/// (cross-validation folds) but at least two must be present.
pub fn train_with_classes(
    data: &[HapticTimeSeries],
    classes: &[String],
    config: &TrainConfig,
) -> Result<StateModel, HapticError> {
    if config.epochs == 0 || !(config.lambda > 0.0) {
        return Err(HapticError::InvalidConfig(
            "epochs must be positive and lambda > 0".into(),
        ));
    }
    let action = data
        .first()
        .map(|s| s.sensing_action.clone())
        .ok_or(HapticError::EmptyDataset)?;
    let mut labels = Vec::with_capacity(data.len());
    let mut raw = Vec::with_capacity(data.len());
    for s in data {
        if s.sensing_action != action {
            return Err(HapticError::MixedSensingActions(
                action.clone(),
                s.sensing_action.clone(),
            ));
        }
        let label = s
            .label
            .as_ref()
            .ok_or_else(|| HapticError::Unlabeled(s.series_id.clone()))?;
        let idx = classes
            .iter()
            .position(|c| c == label)
            .ok_or_else(|| HapticError::UnknownClass(label.clone()))?;
        labels.push(idx);
        raw.push(featurize(s, config.resample_len)?);
    }
    let present = {
        let mut seen = vec![false; classes.len()];
        labels.iter().for_each(|&l| seen[l] = true);
        seen.iter().filter(|&&b| b).count()
    };
    if present < 2 {
        return Err(HapticError::NothingToDiscriminate);
    }

    let standardizer = Standardizer::fit(&raw);
    let xs: Vec<Vec<f64>> = raw
        .iter()
        .map(|f| {
            let mut v = standardizer.apply(f).0;
            v.push(1.0);
            v
        })
        .collect();
    let dim = xs[0].len();
    let k = classes.len();
    let n = xs.len();

    let mut w = vec![vec![0.0; dim]; k];
    let mut avg = vec![vec![0.0; dim]; k];
    let mut averaged = 0usize;
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = rng_for(config.seed, &format!("train/{action}"));
    let mut t = 0usize;
    let mut scores = vec![0.0; k];
    for epoch in 0..config.epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (config.lambda * t as f64);
            let x = &xs[i];
            let y = labels[i];
            for (s, row) in scores.iter_mut().zip(&w) {
                *s = dot(row, x);
            }
            let mut rival = usize::MAX;
            for j in 0..k {
                if j != y && (rival == usize::MAX || scores[j] > scores[rival]) {
                    rival = j;
                }
            }
            let shrink = 1.0 - eta * config.lambda;
            for row in w.iter_mut() {
                for v in row.iter_mut() {
                    *v *= shrink;
                }
            }
            if 1.0 + scores[rival] - scores[y] > 0.0 {
                for (d, xv) in x.iter().enumerate() {
                    w[y][d] += eta * xv;
                    w[rival][d] -= eta * xv;
                }
            }
            if epoch >= config.epochs / 2 {
                averaged += 1;
                for (a, row) in avg.iter_mut().zip(&w) {
                    for (av, v) in a.iter_mut().zip(row) {
                        *av += v;
                    }
                }
            }
        }
    }
    let norm = averaged.max(1) as f64;
    let mut weights = Vec::with_capacity(k);
    let mut bias = Vec::with_capacity(k);
    for mut row in avg {
        row.iter_mut().for_each(|v| *v /= norm);
        bias.push(row.pop().expect("bias column"));
        weights.push(row);
    }

    let mut model = StateModel {
        sensing_action: action,
        classes: classes.to_vec(),
        resample_len: config.resample_len,
        standardizer,
        weights,
        bias,
        trained_on: fingerprint(data),
        training_accuracy: 0.0,
        degenerate: false,
    };
    let correct = raw
        .iter()
        .zip(&labels)
        .filter(|(f, &l)| model.predict_features(f).class_index == l)
        .count();
    model.training_accuracy = correct as f64 / n as f64;
    model.degenerate = model.training_accuracy <= 1.0 / present as f64 + DEGENERATE_MARGIN;
    if model.degenerate {
        log::warn!(
            "model for `{}` is degenerate (training accuracy {:.3})",
            model.sensing_action,
            model.training_accuracy
        );
    }
    Ok(model)
}

impl StateModel {
    pub fn feature_dim(&self) -> usize {
        self.resample_len * super::features::CHANNELS
    }

    fn predict_features(&self, raw: &FeatureVector) -> Classification {
        let x = self.standardizer.apply(raw);
        let scores: Vec<f64> = self
            .weights
            .iter()
            .zip(&self.bias)
            .map(|(row, b)| dot(row, &x.0) + b)
            .collect();
        let class_index = argmax(&scores);
        Classification {
            class_index,
            state: self.classes[class_index].clone(),
            scores,
        }
    }

    pub fn classify(&self, ts: &HapticTimeSeries) -> Result<Classification, HapticError> {
        if ts.sensing_action != self.sensing_action {
            return Err(HapticError::MixedSensingActions(
                self.sensing_action.clone(),
                ts.sensing_action.clone(),
            ));
        }
        let raw = featurize(ts, self.resample_len)?;
        self.classify_features(&raw)
    }

    /// Classifies an already featurized (unstandardized) vector.
    pub fn classify_features(&self, raw: &FeatureVector) -> Result<Classification, HapticError> {
        if raw.len() != self.feature_dim() {
            return Err(HapticError::DimensionMismatch {
                expected: self.feature_dim(),
                got: raw.len(),
            });
        }
        Ok(self.predict_features(raw))
    }
}
