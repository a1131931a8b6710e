use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::HapticError;

/// Column layout of haptic dataset files.
pub const DATASET_HEADER: [&str; 13] = [
    "series_id",
    "sensing_action",
    "label",
    "t",
    "fx",
    "fy",
    "fz",
    "tx",
    "ty",
    "tz",
    "px",
    "py",
    "pz",
];

/// One sample: time (s), force (N), torque (N·m) and end-effector position (m).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HapticStep {
    pub t: f64,
    pub force: [f64; 3],
    pub torque: [f64; 3],
    pub position: [f64; 3],
}

impl HapticStep {
    /// The nine measurement channels in feature order (F, T, P).
    pub fn channels(&self) -> [f64; 9] {
        let [fx, fy, fz] = self.force;
        let [tx, ty, tz] = self.torque;
        let [px, py, pz] = self.position;
        [fx, fy, fz, tx, ty, tz, px, py, pz]
    }

    pub fn from_channels(t: f64, c: [f64; 9]) -> Self {
        HapticStep {
            t,
            force: [c[0], c[1], c[2]],
            torque: [c[3], c[4], c[5]],
            position: [c[6], c[7], c[8]],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HapticTimeSeries {
    pub series_id: String,
    pub sensing_action: String,
    /// Perceptual state label; only present in training data.
    pub label: Option<String>,
    pub steps: Vec<HapticStep>,
}

impl HapticTimeSeries {
    pub fn validate(&self) -> Result<(), HapticError> {
        if self.steps.is_empty() {
            return Err(HapticError::EmptySeries(self.series_id.clone()));
        }
        if self.steps.len() < 2 {
            return Err(HapticError::TooShort(self.series_id.clone()));
        }
        if self.steps.windows(2).any(|w| !(w[1].t > w[0].t)) {
            return Err(HapticError::NonIncreasingTime(self.series_id.clone()));
        }
        Ok(())
    }

    /// Euclidean norm of the force at the final sample.
    pub fn final_force_norm(&self) -> f64 {
        self.steps
            .last()
            .map(|s| s.force.iter().map(|f| f * f).sum::<f64>().sqrt())
            .unwrap_or(0.0)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct Row<'a> {
    series_id: &'a str,
    sensing_action: &'a str,
    label: &'a str,
    t: f64,
    fx: f64,
    fy: f64,
    fz: f64,
    tx: f64,
    ty: f64,
    tz: f64,
    px: f64,
    py: f64,
    pz: f64,
}

#[derive(Debug, Deserialize)]
struct OwnedRow {
    series_id: String,
    sensing_action: String,
    label: String,
    t: f64,
    fx: f64,
    fy: f64,
    fz: f64,
    tx: f64,
    ty: f64,
    tz: f64,
    px: f64,
    py: f64,
    pz: f64,
}

/// Writes series in order, one row per step. An absent label is an empty field.
pub fn write_dataset<W: Write>(out: W, series: &[HapticTimeSeries]) -> Result<(), HapticError> {
    let mut w = csv::Writer::from_writer(out);
    for s in series {
        let label = s.label.as_deref().unwrap_or("");
        for step in &s.steps {
            let [fx, fy, fz, tx, ty, tz, px, py, pz] = step.channels();
            w.serialize(Row {
                series_id: &s.series_id,
                sensing_action: &s.sensing_action,
                label,
                t: step.t,
                fx,
                fy,
                fz,
                tx,
                ty,
                tz,
                px,
                py,
                pz,
            })?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a dataset file; series keep the order of their first row.
pub fn read_dataset<R: Read>(input: R) -> Result<Vec<HapticTimeSeries>, HapticError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != DATASET_HEADER {
        return Err(HapticError::Format(format!(
            "unexpected header `{}`",
            header.join(",")
        )));
    }
    let mut out: Vec<HapticTimeSeries> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for row in r.deserialize::<OwnedRow>() {
        let row = row?;
        let step = HapticStep::from_channels(
            row.t,
            [row.fx, row.fy, row.fz, row.tx, row.ty, row.tz, row.px, row.py, row.pz],
        );
        let label = (!row.label.is_empty()).then_some(row.label);
        match index.get(&row.series_id) {
            Some(&i) => {
                let s: &mut HapticTimeSeries = &mut out[i];
                if s.sensing_action != row.sensing_action || s.label != label {
                    return Err(HapticError::Format(format!(
                        "series `{}` changes sensing action or label mid-series",
                        row.series_id
                    )));
                }
                s.steps.push(step);
            }
            None => {
                index.insert(row.series_id.clone(), out.len());
                out.push(HapticTimeSeries {
                    series_id: row.series_id,
                    sensing_action: row.sensing_action,
                    label,
                    steps: vec![step],
                });
            }
        }
    }
    for s in &out {
        s.validate()?;
    }
    Ok(out)
}
