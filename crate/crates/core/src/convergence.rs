//! Population study of learning speed with abstracted sensing and skills.
//!
//! Each simulated agent owns an ECM with the real layout (three sensing
//! actions, four orientation states each, `N_p` preparatory skills). The
//! haptic classifier is replaced by its accuracy: the estimated state is the
//! true one with that probability and otherwise uniform over the wrong ones.
//! A roll-out succeeds when the chosen preparatory skill brings the *true*
//! orientation to the grasp orientation and the grasp itself succeeds.

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ecm::{ClipId, ClipKind, Ecm, EcmError, PsParams, SensingInit};
use crate::haptic::discrimination_score;
use crate::seed::{agent_rng, SimRng};

/// Orientation index the complex skill needs.
pub const GOAL_STATE: usize = 1;
pub const SMOOTHING_WINDOW: usize = 11;

#[derive(Debug, Error)]
pub enum ConvergenceError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error(transparent)]
    Ecm(#[from] EcmError),
}

/// How preparatory skills beyond the useful rotations behave.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UselessPrep {
    /// Leave the object untouched: success only if it already is in the
    /// grasp orientation.
    #[default]
    Identity,
    /// Spoil the attempt regardless of the state.
    Spoiler,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbstractScenario {
    /// `(sensing action, probability of correct classification)`.
    pub sensing_accuracies: Vec<(String, f64)>,
    pub num_states: usize,
    /// Success probability of the complex skill from the right state.
    pub complex_success: f64,
    pub num_preps: usize,
    pub params: PsParams,
    /// Stretch factor for the initial sensing weights.
    pub alpha: f64,
    pub useless_preps: UselessPrep,
}

impl Default for AbstractScenario {
    fn default() -> Self {
        AbstractScenario {
            sensing_accuracies: vec![
                ("slide".into(), 0.93),
                ("poke".into(), 0.27),
                ("press".into(), 0.40),
            ],
            num_states: 4,
            complex_success: 0.98,
            num_preps: 6,
            params: PsParams::default(),
            alpha: 10.0,
            useless_preps: UselessPrep::Identity,
        }
    }
}

impl AbstractScenario {
    pub fn with_preps(&self, num_preps: usize) -> Self {
        AbstractScenario {
            num_preps,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), ConvergenceError> {
        let bad = |m: String| Err(ConvergenceError::InvalidScenario(m));
        if self.sensing_accuracies.is_empty() {
            return bad("no sensing actions".into());
        }
        if self
            .sensing_accuracies
            .iter()
            .any(|(_, p)| !(0.0..=1.0).contains(p))
            || !(0.0..=1.0).contains(&self.complex_success)
        {
            return bad("probabilities must lie in [0, 1]".into());
        }
        if self.num_states < 2 {
            return bad("need at least two states".into());
        }
        if self.num_preps < self.num_states {
            return bad(format!(
                "N_p = {} is below the {} useful preparatory skills",
                self.num_preps, self.num_states
            ));
        }
        if !(self.alpha >= 0.0) {
            return bad("alpha must be non-negative".into());
        }
        self.params.validate()?;
        Ok(())
    }

    /// Label of preparatory skill `k`: the first `num_states` shift the
    /// orientation by `k` quarter turns, the rest are useless.
    pub fn prep_label(&self, k: usize) -> String {
        if k >= self.num_states {
            format!("useless-{}", k - self.num_states + 1)
        } else if k == 0 {
            "nothing".into()
        } else {
            format!("rot{}", k * 360 / self.num_states)
        }
    }

    /// Whether preparatory skill `k` applied in true state `state` reaches
    /// the goal.
    pub fn prep_reaches_goal(&self, k: usize, state: usize) -> bool {
        if k < self.num_states {
            (state + k) % self.num_states == GOAL_STATE
        } else {
            match self.useless_preps {
                UselessPrep::Identity => state == GOAL_STATE,
                UselessPrep::Spoiler => false,
            }
        }
    }

    pub fn build_ecm(&self) -> Result<Ecm, ConvergenceError> {
        let states: Vec<String> = (0..self.num_states).map(|j| format!("E{}", j + 1)).collect();
        let sensing: Vec<SensingInit> = self
            .sensing_accuracies
            .iter()
            .map(|(id, acc)| {
                SensingInit::new(id, states.clone(), discrimination_score(*acc, self.alpha))
            })
            .collect();
        let preps: Vec<String> = (0..self.num_preps).map(|k| self.prep_label(k)).collect();
        Ok(Ecm::new("abstract-grasp", &sensing, &preps, &self.params, false)?)
    }
}

/// Precomputed clip-id lookups for the hot loop.
struct Layout {
    sensing: Vec<ClipId>,
    states: Vec<Vec<ClipId>>,
    prep_index: Vec<usize>,
}

impl Layout {
    fn new(ecm: &Ecm) -> Self {
        let sensing: Vec<ClipId> = ecm.sensing_actions().map(|c| c.id).collect();
        let states = sensing
            .iter()
            .map(|&s| ecm.children_of(s).iter().map(|e| e.child).collect())
            .collect();
        let mut prep_index = vec![usize::MAX; ecm.clips().len()];
        for (k, c) in ecm.clips_of_kind(ClipKind::PreparatorySkill).enumerate() {
            prep_index[c.id.index()] = k;
        }
        Layout {
            sensing,
            states,
            prep_index,
        }
    }
}

/// Simulates one agent for `n_rollouts` roll-outs and returns the success of
/// each.
pub fn run_abstract_agent<R: Rng + ?Sized>(
    scenario: &AbstractScenario,
    n_rollouts: usize,
    rng: &mut R,
) -> Result<Vec<bool>, ConvergenceError> {
    scenario.validate()?;
    let mut ecm = scenario.build_ecm()?;
    let layout = Layout::new(&ecm);
    let n_states = scenario.num_states;
    let mut out = Vec::with_capacity(n_rollouts);
    for _ in 0..n_rollouts {
        let truth = rng.random_range(0..n_states);
        let sensing = ecm.sample_sensing(rng);
        let s = layout
            .sensing
            .iter()
            .position(|&c| c == sensing)
            .expect("sensing clip");
        let accuracy = scenario.sensing_accuracies[s].1;
        let estimate = if rng.random::<f64>() < accuracy {
            truth
        } else {
            (truth + 1 + rng.random_range(0..n_states - 1)) % n_states
        };
        let state = layout.states[s][estimate];
        let prep = ecm.sample_prep(state, |_| true, rng)?;
        let k = layout.prep_index[prep.index()];
        let grasped = rng.random::<f64>() < scenario.complex_success;
        let success = scenario.prep_reaches_goal(k, truth) && grasped;
        let reward = if success {
            scenario.params.lambda_succ
        } else {
            scenario.params.lambda_fail
        };
        let path = crate::ecm::WalkPath::new(ecm.start(), sensing, state, prep);
        ecm.update_weights(&path, reward, &scenario.params);
        out.push(success);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceResult {
    pub num_preps: usize,
    pub n_agents: usize,
    pub n_rollouts: usize,
    pub threshold: f64,
    /// Mean success over agents, one entry per roll-out.
    pub success_curve: Vec<f64>,
    /// Centered moving average of `success_curve` (window 11, truncated at
    /// the ends).
    pub smoothed_curve: Vec<f64>,
    /// First roll-out (1-based) whose smoothed mean reaches the threshold.
    pub n_r: Option<usize>,
    /// Same on the raw curve.
    pub n_r_raw: Option<usize>,
}

impl ConvergenceResult {
    /// Mean of the raw curve over its last `n` roll-outs.
    pub fn tail_mean(&self, n: usize) -> f64 {
        let n = n.min(self.success_curve.len()).max(1);
        let tail = &self.success_curve[self.success_curve.len() - n..];
        tail.iter().sum::<f64>() / n as f64
    }
}

impl ConvergenceResult {
    /// Binomial standard error of every point of the mean curve.
    pub fn standard_errors(&self) -> Vec<f64> {
        let n = self.n_agents as f64;
        self.success_curve
            .iter()
            .map(|&p| (p * (1.0 - p) / n).sqrt())
            .collect()
    }
}

pub fn smooth(curve: &[f64], window: usize) -> Vec<f64> {
    let half = window / 2;
    (0..curve.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(curve.len());
            curve[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect()
}

/// First 1-based index with `curve >= threshold`.
pub fn first_crossing(curve: &[f64], threshold: f64) -> Option<usize> {
    curve.iter().position(|&v| v >= threshold).map(|i| i + 1)
}

/// Runs `n_agents` independent agents; agent `i` draws from
/// [`agent_rng`]`(seed, i)`. Runs on the current rayon pool.
pub fn run_population(
    scenario: &AbstractScenario,
    n_agents: usize,
    n_rollouts: usize,
    threshold: f64,
    seed: u64,
) -> Result<ConvergenceResult, ConvergenceError> {
    scenario.validate()?;
    if n_agents == 0 {
        return Err(ConvergenceError::InvalidScenario("need at least one agent".into()));
    }
    let counts = (0..n_agents)
        .into_par_iter()
        .map(|i| {
            let mut rng: SimRng = agent_rng(seed, i);
            run_abstract_agent(scenario, n_rollouts, &mut rng).map(|bits| {
                bits.into_iter().map(u32::from).collect::<Vec<u32>>()
            })
        })
        .try_reduce(
            || vec![0u32; n_rollouts],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    let success_curve: Vec<f64> = counts
        .iter()
        .map(|&c| c as f64 / n_agents as f64)
        .collect();
    let smoothed_curve = smooth(&success_curve, SMOOTHING_WINDOW);
    Ok(ConvergenceResult {
        num_preps: scenario.num_preps,
        n_agents,
        n_rollouts,
        threshold,
        n_r: first_crossing(&smoothed_curve, threshold),
        n_r_raw: first_crossing(&success_curve, threshold),
        success_curve,
        smoothed_curve,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub results: Vec<ConvergenceResult>,
    pub warnings: Vec<String>,
}

impl Sweep {
    pub fn table(&self) -> Vec<(usize, Option<usize>)> {
        self.results.iter().map(|r| (r.num_preps, r.n_r)).collect()
    }
}

/// Runs [`run_population`] for each distinct `N_p` in order of first
/// appearance; repeated values are dropped with a warning.
pub fn sweep_preps(
    template: &AbstractScenario,
    num_preps: &[usize],
    n_agents: usize,
    n_rollouts: usize,
    threshold: f64,
    seed: u64,
) -> Result<Sweep, ConvergenceError> {
    let mut seen = Vec::new();
    let mut warnings = Vec::new();
    for &n in num_preps {
        if seen.contains(&n) {
            let msg = format!("duplicate N_p = {n} ignored");
            log::warn!("{msg}");
            warnings.push(msg);
        } else {
            seen.push(n);
        }
    }
    let results = seen
        .iter()
        .map(|&n| run_population(&template.with_preps(n), n_agents, n_rollouts, threshold, seed))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sweep { results, warnings })
}

/// `rollout,mean_success`
pub fn write_curve_csv<W: Write>(out: W, result: &ConvergenceResult) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rollout", "mean_success"])?;
    for (i, v) in result.success_curve.iter().enumerate() {
        w.write_record([(i + 1).to_string(), v.to_string()])?;
    }
    w.flush()
}

/// Long form of every curve of a sweep: `N_p,rollout,mean_success,smoothed`.
pub fn write_curves_csv<W: Write>(out: W, sweep: &Sweep) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["N_p", "rollout", "mean_success", "smoothed"])?;
    for r in &sweep.results {
        for (i, (v, s)) in r.success_curve.iter().zip(&r.smoothed_curve).enumerate() {
            w.write_record([
                r.num_preps.to_string(),
                (i + 1).to_string(),
                v.to_string(),
                s.to_string(),
            ])?;
        }
    }
    w.flush()
}

/// `N_p,N_r`; `N_r` is empty when the threshold was never reached.
pub fn write_sweep_csv<W: Write>(out: W, sweep: &Sweep) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["N_p", "N_r"])?;
    for (np, nr) in sweep.table() {
        w.write_record([np.to_string(), nr.map(|v| v.to_string()).unwrap_or_default()])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::agent_rng;

    #[test]
    fn smoothing_truncates_at_edges() {
        let c = [0.0, 1.0, 2.0, 3.0, 4.0];
        assert_eq!(smooth(&c, 3), vec![0.5, 1.0, 2.0, 3.0, 3.5]);
        assert_eq!(first_crossing(&c, 2.5), Some(4));
        assert_eq!(first_crossing(&c, 9.0), None);
    }

    #[test]
    fn rejects_too_few_preps() {
        let s = AbstractScenario::default().with_preps(3);
        assert!(s.validate().is_err());
    }

    #[test]
    fn prep_semantics() {
        let s = AbstractScenario::default();
        assert_eq!(s.prep_label(0), "nothing");
        assert_eq!(s.prep_label(1), "rot90");
        assert_eq!(s.prep_label(5), "useless-2");
        // bottom (0) needs one quarter turn, top (3) needs three... or one back.
        assert!(s.prep_reaches_goal(1, 0));
        assert!(s.prep_reaches_goal(2, 3));
        assert!(s.prep_reaches_goal(0, GOAL_STATE));
        assert!(s.prep_reaches_goal(4, GOAL_STATE));
        assert!(!s.prep_reaches_goal(4, 0));
        let spoil = AbstractScenario {
            useless_preps: UselessPrep::Spoiler,
            ..s
        };
        assert!(!spoil.prep_reaches_goal(4, GOAL_STATE));
    }

    #[test]
    fn population_of_one_is_a_single_agent() {
        let s = AbstractScenario::default();
        let pop = run_population(&s, 1, 60, 0.9, 17).unwrap();
        let single = run_abstract_agent(&s, 60, &mut agent_rng(17, 0)).unwrap();
        let as_f64: Vec<f64> = single.iter().map(|&b| f64::from(u8::from(b))).collect();
        assert_eq!(pop.success_curve, as_f64);
    }

    #[test]
    fn duplicate_preps_are_dropped() {
        let s = AbstractScenario::default();
        let sweep = sweep_preps(&s, &[6, 6, 7], 3, 5, 0.9, 1).unwrap();
        assert_eq!(sweep.results.len(), 2);
        assert_eq!(sweep.warnings.len(), 1);
        assert!(sweep_preps(&s, &[], 3, 5, 0.9, 1).unwrap().results.is_empty());
    }
}
