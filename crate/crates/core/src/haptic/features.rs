use serde::{Deserialize, Serialize};

use super::series::{HapticStep, HapticTimeSeries};
use super::HapticError;

pub const CHANNELS: usize = 9;

/// Concatenated `(F, T, P)` samples of a resampled series; length `9 * L`.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureVector(pub Vec<f64>);

impl FeatureVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Linear-interpolation resample onto `len` equally spaced times spanning the
/// series. Resampling to the native length returns the samples unchanged.
pub fn resample(ts: &HapticTimeSeries, len: usize) -> Result<Vec<HapticStep>, HapticError> {
    ts.validate()?;
    if len < 2 {
        return Err(HapticError::InvalidConfig(format!(
            "resample length must be >= 2, got {len}"
        )));
    }
    let steps = &ts.steps;
    if steps.len() == len {
        return Ok(steps.clone());
    }
    let t0 = steps[0].t;
    let t1 = steps[steps.len() - 1].t;
    let mut out = Vec::with_capacity(len);
    let mut seg = 0;
    for k in 0..len {
        let t = if k == len - 1 {
            t1
        } else {
            t0 + (t1 - t0) * k as f64 / (len - 1) as f64
        };
        while seg + 2 < steps.len() && steps[seg + 1].t <= t {
            seg += 1;
        }
        let (a, b) = (&steps[seg], &steps[seg + 1]);
        let w = ((t - a.t) / (b.t - a.t)).clamp(0.0, 1.0);
        let (ca, cb) = (a.channels(), b.channels());
        let mut c = [0.0; CHANNELS];
        for i in 0..CHANNELS {
            c[i] = ca[i] + w * (cb[i] - ca[i]);
        }
        out.push(HapticStep::from_channels(t, c));
    }
    Ok(out)
}

/// Resamples to `len` steps and concatenates the channels in step order.
/// The time channel is dropped.
pub fn featurize(ts: &HapticTimeSeries, len: usize) -> Result<FeatureVector, HapticError> {
    let steps = resample(ts, len)?;
    Ok(FeatureVector(
        steps.iter().flat_map(|s| s.channels()).collect(),
    ))
}

/// Per-channel standardization with statistics pooled over all steps of the
/// training set. Channels without variance map to zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: [f64; CHANNELS],
    pub std: [f64; CHANNELS],
}

impl Standardizer {
    pub fn fit(features: &[FeatureVector]) -> Self {
        let mut sum = [0.0; CHANNELS];
        let mut count = 0usize;
        for f in features {
            for chunk in f.0.chunks_exact(CHANNELS) {
                for (s, v) in sum.iter_mut().zip(chunk) {
                    *s += v;
                }
                count += 1;
            }
        }
        let n = count.max(1) as f64;
        let mean = sum.map(|s| s / n);
        let mut var = [0.0; CHANNELS];
        for f in features {
            for chunk in f.0.chunks_exact(CHANNELS) {
                for i in 0..CHANNELS {
                    let d = chunk[i] - mean[i];
                    var[i] += d * d;
                }
            }
        }
        let mut std = [0.0; CHANNELS];
        for i in 0..CHANNELS {
            let s = (var[i] / n).sqrt();
            std[i] = if s <= 1e-12 * (1.0 + mean[i].abs()) { 0.0 } else { s };
        }
        Standardizer { mean, std }
    }

    pub fn apply(&self, f: &FeatureVector) -> FeatureVector {
        FeatureVector(
            f.0.iter()
                .enumerate()
                .map(|(i, v)| {
                    let c = i % CHANNELS;
                    if self.std[c] == 0.0 {
                        0.0
                    } else {
                        (v - self.mean[c]) / self.std[c]
                    }
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(steps: Vec<HapticStep>) -> HapticTimeSeries {
        HapticTimeSeries {
            series_id: "x".into(),
            sensing_action: "slide".into(),
            label: None,
            steps,
        }
    }

    #[test]
    fn constant_series_standardizes_to_zero() {
        let steps = (0..10)
            .map(|k| HapticStep {
                t: k as f64 * 0.1,
                force: [1.0, 0.0, 0.0],
                torque: [0.0; 3],
                position: [0.3, 0.1, 0.7],
            })
            .collect();
        let f = featurize(&ts(steps), 10).unwrap();
        let z = Standardizer::fit(std::slice::from_ref(&f)).apply(&f);
        assert!(z.0.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn native_length_is_raw_concatenation() {
        let steps: Vec<HapticStep> = (0..5)
            .map(|k| HapticStep::from_channels(k as f64 * 0.37, [k as f64 * 1.5 - 0.2; 9]))
            .collect();
        let raw: Vec<f64> = steps.iter().flat_map(|s| s.channels()).collect();
        assert_eq!(featurize(&ts(steps), 5).unwrap().0, raw);
    }

    #[test]
    fn midpoint_is_average_of_endpoints() {
        let a = HapticStep::from_channels(0.0, [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let b = HapticStep::from_channels(2.0, [2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0]);
        let r = resample(&ts(vec![a, b]), 3).unwrap();
        assert_eq!(r[1].t, 1.0);
        assert_eq!(r[1].channels(), [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0]);
        assert_eq!(r[0], a);
        assert_eq!(r[2], b);
    }

    #[test]
    fn empty_series_is_an_error() {
        assert!(matches!(
            featurize(&ts(vec![]), 10),
            Err(HapticError::EmptySeries(_))
        ));
    }
}
