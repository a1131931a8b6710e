//! Execution and playing pathways: haptic database creation, roll-outs with
//! the grasp gate, confidence tracking and skill hierarchies.

use std::collections::VecDeque;
use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ecm::{ClipKind, Ecm, EcmDocument, EcmError, PsParams, SensingInit, WalkPath};
use crate::haptic::{
    self, cross_validate, DiscriminationScore, HapticError, HapticTimeSeries, ModelSet,
    TrainConfig,
};
use crate::world::{
    self, apply_prep, attempt_complex, reward_of, ComplexSkillDef, Scenario, WorldState, WEIGH,
};

#[derive(Debug, Error)]
pub enum AgentError {
    #[error(transparent)]
    Ecm(#[from] EcmError),
    #[error(transparent)]
    Haptic(#[from] HapticError),
    #[error("unknown skill `{0}`")]
    UnknownSkill(String),
    #[error("unknown sensing action `{0}`")]
    UnknownSensingAction(String),
    #[error("no model for sensing action `{0}`")]
    MissingModel(String),
    #[error("unsupervised database creation needs a state-cycling preparatory skill")]
    MissingCyclingPrep,
    #[error("samples per state must be positive")]
    NoSamples,
    #[error("skill `{0}` is not confident yet")]
    NotConfident(String),
    #[error("registering `{skill}` into `{target}` would create a cycle")]
    Cycle { skill: String, target: String },
    #[error("registry: {0}")]
    Registry(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ConfidenceConfig {
    pub window: usize,
    pub threshold: f64,
}

impl Default for ConfidenceConfig {
    fn default() -> Self {
        ConfidenceConfig {
            window: 100,
            threshold: 0.9,
        }
    }
}

/// Success rate over the most recent `window` roll-outs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Confidence {
    window: usize,
    recent: VecDeque<bool>,
}

impl Confidence {
    pub fn new(window: usize) -> Self {
        Confidence {
            window: window.max(1),
            recent: VecDeque::new(),
        }
    }

    pub fn push(&mut self, success: bool) {
        if self.recent.len() == self.window {
            self.recent.pop_front();
        }
        self.recent.push_back(success);
    }

    /// Mean of the last `min(window, n)` outcomes; 0 before any roll-out.
    pub fn value(&self) -> f64 {
        if self.recent.is_empty() {
            return 0.0;
        }
        self.recent.iter().filter(|&&s| s).count() as f64 / self.recent.len() as f64
    }

    pub fn is_full(&self) -> bool {
        self.recent.len() == self.window
    }

    pub fn window(&self) -> usize {
        self.window
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkillStatus {
    Learning,
    Confident,
    RegisteredAsPrep,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SkillRecord {
    pub skill: ComplexSkillDef,
    pub ecm: Ecm,
    pub confidence: Confidence,
    pub status: SkillStatus,
    pub rollouts_played: usize,
    /// Skills whose ECMs list this one as a preparatory skill.
    pub registered_into: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RolloutRecord {
    pub rollout_index: usize,
    /// Absent when no ECM walk happened (weighing found the object already
    /// held, or the grasp gate left no admissible preparatory skill).
    pub path: Option<WalkPath>,
    pub sensing: String,
    pub sensed_series_id: String,
    pub estimated_state: String,
    pub prep: Option<String>,
    pub success: bool,
    pub reward: f64,
    /// Confidence after this roll-out (execution-only traces report the
    /// record's confidence unchanged).
    pub confidence: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgentConfig {
    pub params: PsParams,
    /// Stretch factor of the discrimination score.
    pub alpha: f64,
    pub folds: usize,
    pub train: TrainConfig,
    pub confidence: ConfidenceConfig,
}

impl Default for AgentConfig {
    fn default() -> Self {
        AgentConfig {
            params: PsParams::default(),
            alpha: haptic::validation::DEFAULT_ALPHA,
            folds: haptic::validation::DEFAULT_FOLDS,
            train: TrainConfig::default(),
            confidence: ConfidenceConfig::default(),
        }
    }
}

/// Labelled haptic samples for every perceptual state and sensing action.
///
/// Supervised: a supervisor prepares each ground-truth class and labels are
/// the class names. Unsupervised: starting from the scenario's initial world
/// the cycling preparatory skill is applied `period` times and samples taken
/// after each visit are labelled `E1`, `E2`, ... in visit order.
pub fn create_haptic_database<R: Rng + ?Sized>(
    scenario: &Scenario,
    sensing_actions: &[String],
    samples_per_state: usize,
    supervised: bool,
    rng: &mut R,
) -> Result<Vec<HapticTimeSeries>, AgentError> {
    if samples_per_state == 0 {
        return Err(AgentError::NoSamples);
    }
    let defs = sensing_actions
        .iter()
        .map(|id| {
            scenario
                .sensing_action(id)
                .ok_or_else(|| AgentError::UnknownSensingAction(id.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    let mut push = |def: &world::SensingActionDef, label: String, world: &WorldState, rng: &mut R| {
        for _ in 0..samples_per_state {
            let mut ts = world::sense(world, def, rng);
            ts.series_id = format!("{}-{:05}", def.id, out.len());
            ts.label = Some(label.clone());
            out.push(ts);
        }
    };
    if supervised {
        for def in &defs {
            let labels = def.observes.class_labels();
            for (class, label) in labels.into_iter().enumerate() {
                let mut w = scenario.initial_world();
                match def.observes {
                    world::Aspect::Orientation => {
                        w.orientation = world::Orientation::from_index(class)
                    }
                    world::Aspect::BoxOpen => w.box_open = class == 1,
                }
                push(def, label, &w, rng);
            }
        }
    } else {
        let cycling = scenario.cycling.as_ref().ok_or(AgentError::MissingCyclingPrep)?;
        let prep = scenario
            .prep(&cycling.prep)
            .ok_or(AgentError::MissingCyclingPrep)?;
        let mut w = scenario.initial_world();
        for visit in 0..cycling.period {
            for def in &defs {
                push(def, format!("E{}", visit + 1), &w, rng);
            }
            w = apply_prep(&w, prep);
        }
    }
    Ok(out)
}

/// Trains one classifier per sensing action and scores it by
/// cross-validation.
pub fn train_models(
    database: &[HapticTimeSeries],
    config: &AgentConfig,
) -> Result<ModelSet, AgentError> {
    let mut actions: Vec<&str> = Vec::new();
    for s in database {
        if !actions.contains(&s.sensing_action.as_str()) {
            actions.push(&s.sensing_action);
        }
    }
    let mut models = Vec::new();
    let mut scores = Vec::new();
    for action in actions {
        let subset: Vec<HapticTimeSeries> = database
            .iter()
            .filter(|s| s.sensing_action == action)
            .cloned()
            .collect();
        let accuracy = cross_validate(&subset, config.folds, &config.train)?;
        models.push(haptic::train(&subset, &config.train)?);
        scores.push(DiscriminationScore::new(action, accuracy, config.alpha));
    }
    Ok(ModelSet::new(models, scores))
}

/// One playing/executing robot: the scenario, its trained state classifiers
/// and every complex skill it knows.
#[derive(Clone, Debug)]
pub struct Agent {
    pub scenario: Scenario,
    pub models: ModelSet,
    pub config: AgentConfig,
    records: Vec<SkillRecord>,
}

/// Result of [`Agent::play`].
#[derive(Clone, Debug, PartialEq)]
pub struct PlayOutcome {
    pub rollouts: Vec<RolloutRecord>,
    pub status: SkillStatus,
    pub world: WorldState,
}

impl Agent {
    pub fn new(scenario: Scenario, models: ModelSet, config: AgentConfig) -> Self {
        Agent {
            scenario,
            models,
            config,
            records: Vec::new(),
        }
    }

    /// Creates the haptic database for every sensing action of the scenario
    /// from `rng_for(seed, "database")`, trains the classifiers and returns
    /// an agent that knows no skills yet.
    pub fn bootstrap(
        scenario: Scenario,
        config: AgentConfig,
        samples_per_state: usize,
        supervised: bool,
        seed: u64,
    ) -> Result<Self, AgentError> {
        let actions: Vec<String> = scenario.sensing.iter().map(|s| s.id.clone()).collect();
        let mut rng = crate::seed::rng_for(seed, "database");
        let db = create_haptic_database(&scenario, &actions, samples_per_state, supervised, &mut rng)?;
        let models = train_models(&db, &config)?;
        Ok(Agent::new(scenario, models, config))
    }

    pub fn records(&self) -> &[SkillRecord] {
        &self.records
    }

    pub fn record(&self, skill: &str) -> Result<&SkillRecord, AgentError> {
        self.records
            .iter()
            .find(|r| r.skill.id == skill)
            .ok_or_else(|| AgentError::UnknownSkill(skill.to_string()))
    }

    pub fn record_mut(&mut self, skill: &str) -> Result<&mut SkillRecord, AgentError> {
        self.records
            .iter_mut()
            .find(|r| r.skill.id == skill)
            .ok_or_else(|| AgentError::UnknownSkill(skill.to_string()))
    }

    /// Creates the ECM for a complex skill of the scenario: every sensing
    /// action with its trained classes and discrimination score, and the
    /// scenario's primitive preparatory skills.
    pub fn add_skill(&mut self, skill_id: &str) -> Result<&SkillRecord, AgentError> {
        if self.records.iter().any(|r| r.skill.id == skill_id) {
            return self.record(skill_id);
        }
        let skill = self
            .scenario
            .complex_skill(skill_id)
            .ok_or_else(|| AgentError::UnknownSkill(skill_id.to_string()))?
            .clone();
        let mut sensing = Vec::new();
        for def in &self.scenario.sensing {
            let model = self
                .models
                .model(&def.id)
                .ok_or_else(|| AgentError::MissingModel(def.id.clone()))?;
            let score = self
                .models
                .score(&def.id)
                .ok_or_else(|| AgentError::MissingModel(def.id.clone()))?;
            sensing.push(SensingInit::new(&def.id, model.classes.clone(), score.d));
        }
        let preps: Vec<String> = self.scenario.preps.iter().map(|p| p.id.clone()).collect();
        let mut ecm = Ecm::new(
            &skill.id,
            &sensing,
            &preps,
            &self.config.params,
            skill.requires_grasp,
        )?;
        let semantic: Vec<_> = ecm
            .clips_of_kind(ClipKind::PerceptualState)
            .filter(|c| {
                let parent = ecm.parent_of(c.id).map(|p| ecm.clips()[p.index()].label.clone());
                parent
                    .and_then(|p| self.scenario.sensing_action(&p).map(|d| d.observes.class_labels()))
                    .is_some_and(|labels| labels.contains(&c.label))
            })
            .map(|c| (c.id, c.label.clone()))
            .collect();
        for (id, tag) in semantic {
            ecm.set_semantic_tag(id, Some(tag))?;
        }
        self.records.push(SkillRecord {
            skill,
            ecm,
            confidence: Confidence::new(self.config.confidence.window),
            status: SkillStatus::Learning,
            rollouts_played: 0,
            registered_into: Vec::new(),
        });
        self.record(skill_id)
    }

    /// Whether a preparatory clip label names a grasp-producing skill.
    pub fn produces_grasp(&self, prep: &str) -> bool {
        if let Some(p) = self.scenario.prep(prep) {
            return p.produces_grasp();
        }
        self.records
            .iter()
            .find(|r| r.skill.id == prep)
            .is_some_and(|r| r.skill.produces_grasp())
    }

    /// Runs the execution pathway once without learning.
    pub fn execute_skill<R: Rng + ?Sized>(
        &self,
        skill: &str,
        world: &WorldState,
        rng: &mut R,
    ) -> Result<(RolloutRecord, WorldState), AgentError> {
        self.execute_inner(skill, world, rng, 0)
    }

    fn execute_inner<R: Rng + ?Sized>(
        &self,
        skill: &str,
        world: &WorldState,
        rng: &mut R,
        depth: usize,
    ) -> Result<(RolloutRecord, WorldState), AgentError> {
        let rec = self.record(skill)?;
        let params = &self.config.params;
        let ecm = &rec.ecm;
        let mut trace = RolloutRecord {
            rollout_index: rec.rollouts_played,
            path: None,
            sensing: String::new(),
            sensed_series_id: format!("{skill}-{}-{depth}", rec.rollouts_played),
            estimated_state: String::new(),
            prep: None,
            success: false,
            reward: 0.0,
            confidence: rec.confidence.value(),
        };

        let require_grasp_prep = if rec.skill.requires_grasp {
            let series = world::weigh(world, &self.scenario.weigh, rng);
            if world::weighs_as_grasped(&series, &self.scenario.weigh) {
                trace.sensing = WEIGH.into();
                trace.estimated_state = "grasped".into();
                let (success, next) = attempt_complex(world, &rec.skill, rng);
                trace.success = success;
                trace.reward = reward_of(success, params);
                return Ok((trace, next));
            }
            true
        } else {
            false
        };
        let admissible = |clip: &crate::ecm::Clip| self.produces_grasp(&clip.label) == require_grasp_prep;

        let sensing = ecm.sample_sensing(rng);
        let sensing_label = ecm.clip(sensing)?.label.clone();
        let def = self
            .scenario
            .sensing_action(&sensing_label)
            .ok_or_else(|| AgentError::UnknownSensingAction(sensing_label.clone()))?;
        let model = self
            .models
            .model(&sensing_label)
            .ok_or_else(|| AgentError::MissingModel(sensing_label.clone()))?;
        let mut series = world::sense(world, def, rng);
        series.series_id = trace.sensed_series_id.clone();
        let estimate = model.classify(&series)?;
        let state = ecm
            .find_state(sensing, &estimate.state)
            .ok_or_else(|| AgentError::Registry(format!("ECM lacks state `{}`", estimate.state)))?;
        trace.sensing = sensing_label;
        trace.estimated_state = estimate.state;

        let prep = match ecm.sample_prep(state, admissible, rng) {
            Ok(p) => p,
            Err(EcmError::NoAdmissibleChild(_)) => {
                trace.reward = reward_of(false, params);
                return Ok((trace, *world));
            }
            Err(e) => return Err(e.into()),
        };
        let prep_label = ecm.clip(prep)?.label.clone();
        trace.path = Some(WalkPath::new(ecm.start(), sensing, state, prep));

        let prepared = if let Some(def) = self.scenario.prep(&prep_label) {
            apply_prep(world, def)
        } else {
            // A learned complex skill used as a preparatory skill.
            self.execute_inner(&prep_label, world, rng, depth + 1)?.1
        };
        trace.prep = Some(prep_label);

        let (success, next) = attempt_complex(&prepared, &rec.skill, rng);
        trace.success = success;
        trace.reward = reward_of(success, params);
        Ok((trace, next))
    }

    /// Playing loop: execute, reward, update, re-randomize, until the
    /// sliding-window success rate over a full window reaches the threshold
    /// or `max_rollouts` are spent.
    pub fn play<R: Rng + ?Sized>(
        &mut self,
        skill: &str,
        max_rollouts: usize,
        world: &WorldState,
        rng: &mut R,
    ) -> Result<PlayOutcome, AgentError> {
        let threshold = self.config.confidence.threshold;
        let params = self.config.params;
        let mut w = *world;
        let mut rollouts = Vec::new();
        if self.record(skill)?.status != SkillStatus::Learning {
            let status = self.record(skill)?.status;
            return Ok(PlayOutcome { rollouts, status, world: w });
        }
        for _ in 0..max_rollouts {
            let (mut trace, next) = self.execute_skill(skill, &w, rng)?;
            let rec = self.record_mut(skill)?;
            if let Some(path) = &trace.path {
                rec.ecm.update_weights(path, trace.reward, &params);
            }
            rec.confidence.push(trace.success);
            rec.rollouts_played += 1;
            trace.confidence = rec.confidence.value();
            rollouts.push(trace);
            let confident = rec.confidence.is_full() && rec.confidence.value() >= threshold;
            w = self.scenario.reset_episode(&next, rng);
            if confident {
                self.record_mut(skill)?.status = SkillStatus::Confident;
                break;
            }
        }
        let status = self.record(skill)?.status;
        Ok(PlayOutcome {
            rollouts,
            status,
            world: w,
        })
    }

    /// True when `from` reaches `to` through preparatory-skill links.
    fn uses(&self, from: &str, to: &str) -> bool {
        let mut stack = vec![from.to_string()];
        let mut seen = Vec::new();
        while let Some(s) = stack.pop() {
            if s == to {
                return true;
            }
            if seen.contains(&s) {
                continue;
            }
            if let Ok(rec) = self.record(&s) {
                stack.extend(
                    rec.ecm
                        .preparatory_skills()
                        .filter(|c| self.scenario.prep(&c.label).is_none())
                        .map(|c| c.label.clone()),
                );
            }
            seen.push(s);
        }
        false
    }

    /// Adds a confident skill as a preparatory skill to each target ECM.
    /// Returns a warning for every target that already has it.
    pub fn register_as_prep(
        &mut self,
        skill: &str,
        targets: &[String],
    ) -> Result<Vec<String>, AgentError> {
        let status = self.record(skill)?.status;
        if status == SkillStatus::Learning {
            return Err(AgentError::NotConfident(skill.to_string()));
        }
        for t in targets {
            self.record(t)?;
            if t == skill || self.uses(skill, t) {
                return Err(AgentError::Cycle {
                    skill: skill.to_string(),
                    target: t.clone(),
                });
            }
        }
        let params = self.config.params;
        let mut warnings = Vec::new();
        for t in targets {
            let target = self.record_mut(t)?;
            match target.ecm.add_preparatory_clip(skill, &params) {
                Ok(_) => {}
                Err(EcmError::DuplicatePrep(_)) => {
                    let msg = format!("`{skill}` is already a preparatory skill of `{t}`");
                    log::warn!("{msg}");
                    warnings.push(msg);
                    continue;
                }
                Err(e) => return Err(e.into()),
            }
            let rec = self.record_mut(skill)?;
            rec.status = SkillStatus::RegisteredAsPrep;
            rec.registered_into.push(t.clone());
        }
        Ok(warnings)
    }

    /// Probability that `skill`'s ECM picks `prep` from the state clip
    /// `state` under `sensing`, renormalized over the grasp-gate candidates
    /// of a not-yet-grasped object when `gated` is set.
    pub fn prep_probability(
        &self,
        skill: &str,
        sensing: &str,
        state: &str,
        prep: &str,
        gated: bool,
    ) -> Result<f64, AgentError> {
        let rec = self.record(skill)?;
        let ecm = &rec.ecm;
        let s = ecm
            .find(ClipKind::SensingAction, sensing)
            .ok_or_else(|| AgentError::UnknownSensingAction(sensing.to_string()))?;
        let st = ecm
            .find_state(s, state)
            .ok_or_else(|| AgentError::Registry(format!("no state `{state}` under `{sensing}`")))?;
        let want_grasp = rec.skill.requires_grasp;
        let probs = if gated {
            ecm.restricted_probabilities(st, |c| self.produces_grasp(&c.label) == want_grasp)
        } else {
            ecm.probabilities(st)
        };
        Ok(probs
            .iter()
            .find(|(id, _)| ecm.clips()[id.index()].label == prep)
            .map_or(0.0, |(_, p)| *p))
    }

    pub fn sensing_probability(&self, skill: &str, sensing: &str) -> Result<f64, AgentError> {
        let ecm = &self.record(skill)?.ecm;
        let s = ecm
            .find(ClipKind::SensingAction, sensing)
            .ok_or_else(|| AgentError::UnknownSensingAction(sensing.to_string()))?;
        Ok(ecm.transition_probability(ecm.start(), s)?)
    }

    pub fn to_registry(&self) -> Registry {
        Registry {
            format: REGISTRY_FORMAT.into(),
            version: REGISTRY_VERSION,
            scenario: self.scenario.clone(),
            config: self.config.clone(),
            models: self.models.clone(),
            skills: self
                .records
                .iter()
                .map(|r| SkillEntry {
                    id: r.skill.id.clone(),
                    status: r.status,
                    rollouts_played: r.rollouts_played,
                    confidence: r.confidence.clone(),
                    registered_into: r.registered_into.clone(),
                    ecm: r.ecm.to_document(),
                })
                .collect(),
        }
    }

    pub fn from_registry(reg: Registry) -> Result<Self, AgentError> {
        if reg.format != REGISTRY_FORMAT || reg.version != REGISTRY_VERSION {
            return Err(AgentError::Registry(format!(
                "unsupported registry {} v{}",
                reg.format, reg.version
            )));
        }
        reg.scenario
            .validate()
            .map_err(|e| AgentError::Registry(e.to_string()))?;
        let mut agent = Agent::new(reg.scenario, reg.models, reg.config);
        for entry in reg.skills {
            let skill = agent
                .scenario
                .complex_skill(&entry.id)
                .ok_or_else(|| AgentError::UnknownSkill(entry.id.clone()))?
                .clone();
            agent.records.push(SkillRecord {
                skill,
                ecm: Ecm::from_document(entry.ecm)?,
                confidence: entry.confidence,
                status: entry.status,
                rollouts_played: entry.rollouts_played,
                registered_into: entry.registered_into,
            });
        }
        Ok(agent)
    }
}

pub const REGISTRY_FORMAT: &str = "skill-ecm/registry";
pub const REGISTRY_VERSION: u32 = 1;

/// Everything needed to resume playing or execute skills.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Registry {
    pub format: String,
    pub version: u32,
    pub scenario: Scenario,
    pub config: AgentConfig,
    pub models: ModelSet,
    pub skills: Vec<SkillEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkillEntry {
    pub id: String,
    pub status: SkillStatus,
    pub rollouts_played: usize,
    pub confidence: Confidence,
    pub registered_into: Vec<String>,
    pub ecm: EcmDocument,
}

impl Registry {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("registry serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, AgentError> {
        serde_json::from_str(text).map_err(|e| AgentError::Registry(e.to_string()))
    }
}

pub const ROLLOUT_LOG_HEADER: &str = "rollout,sensing,state,prep,success,reward,confidence";

/// Roll-out log: `rollout,sensing,state,prep,success,reward,confidence`.
pub fn write_rollout_log<W: Write>(out: W, rollouts: &[RolloutRecord]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ROLLOUT_LOG_HEADER.split(','))?;
    for r in rollouts {
        w.write_record([
            r.rollout_index.to_string(),
            r.sensing.clone(),
            r.estimated_state.clone(),
            r.prep.clone().unwrap_or_default(),
            u8::from(r.success).to_string(),
            r.reward.to_string(),
            r.confidence.to_string(),
        ])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn confidence_is_mean_of_recent_window() {
        let mut c = Confidence::new(3);
        assert_eq!(c.value(), 0.0);
        c.push(true);
        assert_eq!(c.value(), 1.0);
        c.push(false);
        assert_eq!(c.value(), 0.5);
        c.push(false);
        c.push(true);
        // window now [false, false, true]
        assert!((c.value() - 1.0 / 3.0).abs() < 1e-15);
        assert!(c.is_full());
    }

    #[test]
    fn zero_samples_is_an_error() {
        let book = Scenario::book();
        let mut rng = crate::seed::rng_for(1, "db");
        assert!(matches!(
            create_haptic_database(&book, &["slide".into()], 0, true, &mut rng),
            Err(AgentError::NoSamples)
        ));
    }

    #[test]
    fn unsupervised_without_cycling_prep_fails() {
        let mut book = Scenario::book();
        book.cycling = None;
        let mut rng = crate::seed::rng_for(1, "db");
        assert!(matches!(
            create_haptic_database(&book, &["slide".into()], 2, false, &mut rng),
            Err(AgentError::MissingCyclingPrep)
        ));
    }

    #[test]
    fn database_sizes() {
        let book = Scenario::book();
        let actions: Vec<String> = book.sensing.iter().map(|s| s.id.clone()).collect();
        let mut rng = crate::seed::rng_for(1, "db");
        let db = create_haptic_database(&book, &actions, 50, false, &mut rng).unwrap();
        assert_eq!(db.len(), 600);
        assert_eq!(db.iter().filter(|s| s.label.as_deref() == Some("E2")).count(), 150);

        let bx = Scenario::boxed();
        let db = create_haptic_database(&bx, &["poke".into()], 50, true, &mut rng).unwrap();
        assert_eq!(db.len(), 100);
        assert_eq!(db.iter().filter(|s| s.label.as_deref() == Some("open")).count(), 50);
    }
}
