//! Scenario definitions, loaded from TOML `.scenario` files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::state::{Orientation, StatePattern, WorldState};
use super::WorldError;

pub const SCENARIO_VERSION: u32 = 1;

pub const BOOK_SCENARIO: &str = include_str!("../../scenarios/book.scenario");
pub const BOX_SCENARIO: &str = include_str!("../../scenarios/box.scenario");

/// Which part of the hidden state a sensing action reveals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aspect {
    Orientation,
    BoxOpen,
}

impl Aspect {
    pub fn class_labels(self) -> Vec<String> {
        match self {
            Aspect::Orientation => Orientation::ALL.iter().map(|o| o.name().to_string()).collect(),
            Aspect::BoxOpen => vec!["closed".into(), "open".into()],
        }
    }

    pub fn class_of(self, w: &WorldState) -> usize {
        match self {
            Aspect::Orientation => w.orientation.index(),
            Aspect::BoxOpen => usize::from(w.box_open),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Fx,
    Fy,
    Fz,
    Tx,
    Ty,
    Tz,
    Px,
    Py,
    Pz,
}

impl Channel {
    pub fn index(self) -> usize {
        self as usize
    }
}

/// Synthetic signal model of one sensing action.
///
/// Every series is the sum of a contact step on `fz`, a position ramp on
/// `px` and a class-dependent sinusoid on `channel` whose phase is
/// `2 pi j / K` for class `j` of `K`. Each series draws independent
/// Gaussian perturbations (std `jitter`) of the sinusoid's two quadrature
/// coefficients, plus white measurement noise (std `noise`) on all channels.
/// Separability of the classes is governed by `amplitude / jitter`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensingActionDef {
    pub id: String,
    pub observes: Aspect,
    pub channel: Channel,
    pub amplitude: f64,
    pub jitter: f64,
    pub frequency_hz: f64,
    pub contact_force: f64,
    pub ramp: f64,
    pub noise: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_duration")]
    pub duration: f64,
}

fn default_steps() -> usize {
    100
}

fn default_duration() -> f64 {
    1.0
}

/// The weighing action: `|F|` reflects the held object's weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeighDef {
    pub mass: f64,
    /// Mean force norm (N) above which the object counts as grasped.
    pub threshold: f64,
    pub noise: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
}

pub const WEIGH: &str = "weigh";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrepEffect {
    Rotate { quarter_turns: i32 },
    /// Book: flips orientation upside down. Box: lifts or replaces the cover.
    Flip { acts_on: FlipTarget },
    Nothing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlipTarget {
    Orientation,
    BoxCover,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreparatorySkillDef {
    pub id: String,
    pub effect: PrepEffect,
}

impl PreparatorySkillDef {
    pub fn produces_grasp(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSkillDef {
    pub id: String,
    pub success_prob: f64,
    pub requires_grasp: bool,
    #[serde(default)]
    pub precondition: StatePattern,
    #[serde(default)]
    pub effect: StatePattern,
}

impl ComplexSkillDef {
    /// A skill used as a preparatory skill produces a grasp when its effect
    /// leaves the object held.
    pub fn produces_grasp(&self) -> bool {
        self.effect.grasped == Some(true)
    }
}

/// State-cycling preparatory skill used for unsupervised database creation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclingDef {
    pub prep: String,
    pub period: usize,
}

/// Start-of-roll-out randomization. The orientation is always re-drawn and
/// the object released; listed extra fields are redrawn as well.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResetDef {
    #[serde(default)]
    pub randomize_box_open: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub version: u32,
    pub sensing: Vec<SensingActionDef>,
    pub weigh: WeighDef,
    #[serde(rename = "prep")]
    pub preps: Vec<PreparatorySkillDef>,
    #[serde(rename = "complex")]
    pub complex_skills: Vec<ComplexSkillDef>,
    #[serde(default)]
    pub cycling: Option<CyclingDef>,
    #[serde(default)]
    pub reset: ResetDef,
    /// World at the start of database creation.
    #[serde(default)]
    pub initial: StatePattern,
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self, WorldError> {
        let s: Scenario = toml::from_str(text).map_err(|e| WorldError::Scenario(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    /// `book` and `box` name the shipped scenarios; anything else is a path.
    pub fn load(name_or_path: &str) -> Result<Self, WorldError> {
        match name_or_path {
            "book" => Self::from_toml(BOOK_SCENARIO),
            "box" => Self::from_toml(BOX_SCENARIO),
            path => {
                let text = std::fs::read_to_string(Path::new(path))
                    .map_err(|e| WorldError::Scenario(format!("{path}: {e}")))?;
                Self::from_toml(&text)
            }
        }
    }

    pub fn book() -> Self {
        Self::from_toml(BOOK_SCENARIO).expect("shipped book scenario is valid")
    }

    pub fn boxed() -> Self {
        Self::from_toml(BOX_SCENARIO).expect("shipped box scenario is valid")
    }

    pub fn validate(&self) -> Result<(), WorldError> {
        let err = |m: String| Err(WorldError::Scenario(m));
        if self.version != SCENARIO_VERSION {
            return err(format!("unsupported scenario version {}", self.version));
        }
        if self.sensing.is_empty() {
            return err("scenario defines no sensing actions".into());
        }
        let mut ids: Vec<&str> = Vec::new();
        for id in self
            .sensing
            .iter()
            .map(|s| s.id.as_str())
            .chain(self.preps.iter().map(|p| p.id.as_str()))
            .chain(self.complex_skills.iter().map(|c| c.id.as_str()))
        {
            if id == WEIGH || ids.contains(&id) {
                return err(format!("duplicate or reserved id `{id}`"));
            }
            ids.push(id);
        }
        for s in &self.sensing {
            if s.steps < 2 || !(s.duration > 0.0) || s.jitter < 0.0 || s.noise < 0.0 {
                return err(format!("sensing action `{}` has invalid signal parameters", s.id));
            }
        }
        for c in &self.complex_skills {
            if !(0.0..=1.0).contains(&c.success_prob) {
                return err(format!("skill `{}` success_prob outside [0, 1]", c.id));
            }
        }
        if let Some(c) = &self.cycling {
            if self.prep(&c.prep).is_none() || c.period == 0 {
                return err(format!("cycling prep `{}` is not a defined prep", c.prep));
            }
        }
        Ok(())
    }

    pub fn sensing_action(&self, id: &str) -> Option<&SensingActionDef> {
        self.sensing.iter().find(|s| s.id == id)
    }

    pub fn prep(&self, id: &str) -> Option<&PreparatorySkillDef> {
        self.preps.iter().find(|p| p.id == id)
    }

    pub fn complex_skill(&self, id: &str) -> Option<&ComplexSkillDef> {
        self.complex_skills.iter().find(|c| c.id == id)
    }

    pub fn initial_world(&self) -> WorldState {
        self.initial.apply(&WorldState::default())
    }
}
