//! Episodic compositional memory (ECM).
//!
//! Every complex skill owns one ECM: a fixed four-layer clip network
//!
//! ```text
//! layer 1   #  (start)
//! layer 2   sensing actions            weight D_i (discrimination score)
//! layer 3   perceptual states          chosen by the classifier, never sampled
//! layer 4   preparatory skills         weight h_init, full bipartite from layer 3
//! ```
//!
//! A walk samples `p(c_j | c_i) = h(c_i, c_j) / sum_k h(c_i, c_k)` for the
//! 1→2 and 3→4 transitions; the 2→3 transition is forced to the state the
//! classifier reports. After each roll-out every edge is updated with
//!
//! ```text
//! h <- max(1, h - gamma * (h - 1) + rho * reward)
//! ```
//!
//! where `rho` is 1 for edges on the walked path (the forced edge included).

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Every transition weight stays at or above this value.
pub const WEIGHT_FLOOR: f64 = 1.0;

/// Identifier of the ECM document format.
pub const ECM_FORMAT: &str = "skill-ecm/ecm";
pub const ECM_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq)]
pub enum EcmError {
    #[error("no such transition {from} -> {to}")]
    NoSuchTransition { from: ClipId, to: ClipId },
    #[error("unknown clip {0}")]
    UnknownClip(ClipId),
    #[error("state estimate required: walk reached sensing action `{0}` without a perceptual state")]
    StateEstimateRequired(String),
    #[error("state override {0} is not a perceptual-state clip")]
    InvalidStateOverride(ClipId),
    #[error("clip {0} has no admissible children")]
    NoAdmissibleChild(ClipId),
    #[error("ECM needs at least one sensing action")]
    NoSensingActions,
    #[error("ECM needs at least one preparatory skill")]
    NoPreparatorySkills,
    #[error("sensing action `{0}` has no perceptual states")]
    NoStates(String),
    #[error("duplicate clip label `{0}` in layer {1}")]
    DuplicateLabel(String, u8),
    #[error("preparatory skill `{0}` already present")]
    DuplicatePrep(String),
    #[error("weight below floor: {0}")]
    WeightBelowFloor(f64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("ECM document: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClipId(pub u32);

impl ClipId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ClipId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClipKind {
    Start,
    SensingAction,
    PerceptualState,
    PreparatorySkill,
}

impl ClipKind {
    pub fn layer(self) -> u8 {
        match self {
            ClipKind::Start => 1,
            ClipKind::SensingAction => 2,
            ClipKind::PerceptualState => 3,
            ClipKind::PreparatorySkill => 4,
        }
    }

    pub fn from_layer(layer: u8) -> Option<Self> {
        match layer {
            1 => Some(ClipKind::Start),
            2 => Some(ClipKind::SensingAction),
            3 => Some(ClipKind::PerceptualState),
            4 => Some(ClipKind::PreparatorySkill),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Clip {
    pub id: ClipId,
    pub kind: ClipKind,
    pub label: String,
    /// Ground-truth meaning of a perceptual state, when one is known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semantic_tag: Option<String>,
}

impl Clip {
    pub fn layer(&self) -> u8 {
        self.kind.layer()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub child: ClipId,
    pub weight: f64,
}

/// Projective-simulation learning parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PsParams {
    pub lambda_succ: f64,
    pub lambda_fail: f64,
    pub h_init: f64,
    pub gamma: f64,
}

impl Default for PsParams {
    fn default() -> Self {
        PsParams {
            lambda_succ: 1000.0,
            lambda_fail: -30.0,
            h_init: 200.0,
            gamma: 0.0,
        }
    }
}

impl PsParams {
    pub fn validate(&self) -> Result<(), EcmError> {
        if !(self.h_init >= WEIGHT_FLOOR) {
            return Err(EcmError::InvalidParams(format!(
                "h_init must be >= 1, got {}",
                self.h_init
            )));
        }
        if !(self.gamma >= 0.0 && self.gamma < 1.0) {
            return Err(EcmError::InvalidParams(format!(
                "gamma must lie in [0, 1), got {}",
                self.gamma
            )));
        }
        if !self.lambda_succ.is_finite() || !self.lambda_fail.is_finite() {
            return Err(EcmError::InvalidParams("rewards must be finite".into()));
        }
        Ok(())
    }
}

/// Ordered clips of one walk: `[start, sensing, state, preparatory]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkPath {
    pub clip_ids: [ClipId; 4],
    /// Zero-based indices of transitions that were not sampled.
    /// The sensing→state transition (index 1) is always forced.
    pub forced_transitions: BTreeSet<usize>,
}

impl WalkPath {
    pub fn new(start: ClipId, sensing: ClipId, state: ClipId, prep: ClipId) -> Self {
        WalkPath {
            clip_ids: [start, sensing, state, prep],
            forced_transitions: BTreeSet::from([1]),
        }
    }

    pub fn sensing(&self) -> ClipId {
        self.clip_ids[1]
    }

    pub fn state(&self) -> ClipId {
        self.clip_ids[2]
    }

    pub fn prep(&self) -> ClipId {
        self.clip_ids[3]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (ClipId, ClipId)> + '_ {
        self.clip_ids.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Layer-2 input to [`Ecm::new`]: one sensing action with its states and
/// discrimination score.
#[derive(Clone, Debug, PartialEq)]
pub struct SensingInit {
    pub action: String,
    pub states: Vec<String>,
    pub discrimination: f64,
}

impl SensingInit {
    pub fn new(action: impl Into<String>, states: Vec<String>, discrimination: f64) -> Self {
        SensingInit {
            action: action.into(),
            states,
            discrimination,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ecm {
    owner_skill: String,
    requires_grasp: bool,
    clips: Vec<Clip>,
    // Dense per-parent adjacency in insertion order; index == parent ClipId.
    children: Vec<Vec<Edge>>,
    // Owning sensing action of each perceptual-state clip.
    parent: Vec<Option<ClipId>>,
}

impl Ecm {
    /// Builds a fresh ECM. Start→sensing weights are the discrimination
    /// scores, state→prep weights are all `params.h_init`.
    pub fn new(
        owner_skill: impl Into<String>,
        sensing: &[SensingInit],
        preps: &[String],
        params: &PsParams,
        requires_grasp: bool,
    ) -> Result<Self, EcmError> {
        params.validate()?;
        if sensing.is_empty() {
            return Err(EcmError::NoSensingActions);
        }
        if preps.is_empty() {
            return Err(EcmError::NoPreparatorySkills);
        }
        let mut ecm = Ecm {
            owner_skill: owner_skill.into(),
            requires_grasp,
            clips: Vec::new(),
            children: Vec::new(),
            parent: Vec::new(),
        };
        let start = ecm.push_clip(ClipKind::Start, "#".into());

        let mut prep_ids = Vec::with_capacity(preps.len());
        let mut state_ids = Vec::new();
        for s in sensing {
            if s.states.is_empty() {
                return Err(EcmError::NoStates(s.action.clone()));
            }
            if !(s.discrimination >= WEIGHT_FLOOR) || !s.discrimination.is_finite() {
                return Err(EcmError::WeightBelowFloor(s.discrimination));
            }
            ecm.check_unique(ClipKind::SensingAction, &s.action)?;
            let sid = ecm.push_clip(ClipKind::SensingAction, s.action.clone());
            ecm.connect(start, sid, s.discrimination);
            for state in &s.states {
                if ecm
                    .children_of(sid)
                    .iter()
                    .any(|e| ecm.clips[e.child.index()].label == *state)
                {
                    return Err(EcmError::DuplicateLabel(state.clone(), 3));
                }
                let cid = ecm.push_clip(ClipKind::PerceptualState, state.clone());
                // Each perceptual state belongs to exactly one sensing action.
                ecm.connect(sid, cid, WEIGHT_FLOOR);
                state_ids.push(cid);
            }
        }
        for p in preps {
            ecm.check_unique(ClipKind::PreparatorySkill, p)?;
            prep_ids.push(ecm.push_clip(ClipKind::PreparatorySkill, p.clone()));
        }
        for &s in &state_ids {
            for &p in &prep_ids {
                ecm.connect(s, p, params.h_init);
            }
        }
        Ok(ecm)
    }

    fn push_clip(&mut self, kind: ClipKind, label: String) -> ClipId {
        let id = ClipId(self.clips.len() as u32);
        self.clips.push(Clip {
            id,
            kind,
            label,
            semantic_tag: None,
        });
        self.children.push(Vec::new());
        self.parent.push(None);
        id
    }

    fn connect(&mut self, from: ClipId, to: ClipId, weight: f64) {
        self.children[from.index()].push(Edge { child: to, weight });
        if self.clips[to.index()].kind == ClipKind::PerceptualState {
            self.parent[to.index()] = Some(from);
        }
    }

    fn check_unique(&self, kind: ClipKind, label: &str) -> Result<(), EcmError> {
        if self.clips.iter().any(|c| c.kind == kind && c.label == label) {
            if kind == ClipKind::PreparatorySkill {
                return Err(EcmError::DuplicatePrep(label.to_string()));
            }
            return Err(EcmError::DuplicateLabel(label.to_string(), kind.layer()));
        }
        Ok(())
    }

    pub fn owner_skill(&self) -> &str {
        &self.owner_skill
    }

    pub fn requires_grasp(&self) -> bool {
        self.requires_grasp
    }

    pub fn start(&self) -> ClipId {
        ClipId(0)
    }

    pub fn clips(&self) -> &[Clip] {
        &self.clips
    }

    pub fn clip(&self, id: ClipId) -> Result<&Clip, EcmError> {
        self.clips.get(id.index()).ok_or(EcmError::UnknownClip(id))
    }

    pub fn set_semantic_tag(&mut self, id: ClipId, tag: Option<String>) -> Result<(), EcmError> {
        let clip = self
            .clips
            .get_mut(id.index())
            .ok_or(EcmError::UnknownClip(id))?;
        clip.semantic_tag = tag;
        Ok(())
    }

    pub fn children_of(&self, id: ClipId) -> &[Edge] {
        self.children.get(id.index()).map_or(&[], Vec::as_slice)
    }

    pub fn parent_of(&self, id: ClipId) -> Option<ClipId> {
        self.parent.get(id.index()).copied().flatten()
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (ClipId, ClipId, f64)> + '_ {
        self.children.iter().enumerate().flat_map(|(p, es)| {
            es.iter()
                .map(move |e| (ClipId(p as u32), e.child, e.weight))
        })
    }

    pub fn weight(&self, from: ClipId, to: ClipId) -> Option<f64> {
        self.children_of(from)
            .iter()
            .find(|e| e.child == to)
            .map(|e| e.weight)
    }

    pub fn clips_of_kind(&self, kind: ClipKind) -> impl Iterator<Item = &Clip> + '_ {
        self.clips.iter().filter(move |c| c.kind == kind)
    }

    pub fn sensing_actions(&self) -> impl Iterator<Item = &Clip> + '_ {
        self.clips_of_kind(ClipKind::SensingAction)
    }

    pub fn preparatory_skills(&self) -> impl Iterator<Item = &Clip> + '_ {
        self.clips_of_kind(ClipKind::PreparatorySkill)
    }

    pub fn find(&self, kind: ClipKind, label: &str) -> Option<ClipId> {
        self.clips
            .iter()
            .find(|c| c.kind == kind && c.label == label)
            .map(|c| c.id)
    }

    /// Perceptual state `label` owned by sensing action `sensing`.
    pub fn find_state(&self, sensing: ClipId, label: &str) -> Option<ClipId> {
        self.children_of(sensing)
            .iter()
            .map(|e| e.child)
            .find(|&c| self.clips[c.index()].label == label)
    }

    /// `h(from, to) / sum_k h(from, k)`.
    pub fn transition_probability(&self, from: ClipId, to: ClipId) -> Result<f64, EcmError> {
        let edges = self.children_of(from);
        let h = edges
            .iter()
            .find(|e| e.child == to)
            .ok_or(EcmError::NoSuchTransition { from, to })?
            .weight;
        let total: f64 = edges.iter().map(|e| e.weight).sum();
        Ok(h / total)
    }

    /// Transition probabilities from `from` restricted to children accepted by
    /// `admissible`, renormalized over that subset.
    pub fn restricted_probabilities<F>(&self, from: ClipId, admissible: F) -> Vec<(ClipId, f64)>
    where
        F: Fn(&Clip) -> bool,
    {
        let kept: Vec<&Edge> = self
            .children_of(from)
            .iter()
            .filter(|e| admissible(&self.clips[e.child.index()]))
            .collect();
        let total: f64 = kept.iter().map(|e| e.weight).sum();
        kept.iter().map(|e| (e.child, e.weight / total)).collect()
    }

    pub fn probabilities(&self, from: ClipId) -> Vec<(ClipId, f64)> {
        self.restricted_probabilities(from, |_| true)
    }

    /// Inverse-CDF draw over the admissible children of `from`, in insertion
    /// order. Consumes exactly one uniform variate.
    pub fn sample_child<R, F>(&self, from: ClipId, admissible: F, rng: &mut R) -> Option<ClipId>
    where
        R: Rng + ?Sized,
        F: Fn(&Clip) -> bool,
    {
        let edges = self.children_of(from);
        let mut total = 0.0;
        let mut last = None;
        for e in edges {
            if admissible(&self.clips[e.child.index()]) {
                total += e.weight;
                last = Some(e.child);
            }
        }
        let u: f64 = rng.random::<f64>() * total;
        let last = last?;
        let mut acc = 0.0;
        for e in edges {
            if admissible(&self.clips[e.child.index()]) {
                acc += e.weight;
                if u < acc {
                    return Some(e.child);
                }
            }
        }
        Some(last)
    }

    pub fn sample_sensing<R: Rng + ?Sized>(&self, rng: &mut R) -> ClipId {
        self.sample_child(self.start(), |_| true, rng)
            .expect("ECM invariant: start clip has sensing children")
    }

    /// Samples a preparatory skill from `state`, considering only
    /// preparatory clips accepted by `admissible`.
    pub fn sample_prep<R, F>(
        &self,
        state: ClipId,
        admissible: F,
        rng: &mut R,
    ) -> Result<ClipId, EcmError>
    where
        R: Rng + ?Sized,
        F: Fn(&Clip) -> bool,
    {
        let clip = self.clip(state)?;
        if clip.kind != ClipKind::PerceptualState {
            return Err(EcmError::InvalidStateOverride(state));
        }
        self.sample_child(state, admissible, rng)
            .ok_or(EcmError::NoAdmissibleChild(state))
    }

    /// Full walk where the perceptual state is supplied by `estimate`, which
    /// receives the sampled sensing action (the caller senses and classifies
    /// in between).
    pub fn walk_with<R, E, F>(
        &self,
        rng: &mut R,
        estimate: E,
        admissible: F,
    ) -> Result<WalkPath, EcmError>
    where
        R: Rng + ?Sized,
        E: FnOnce(&Clip) -> Option<ClipId>,
        F: Fn(&Clip) -> bool,
    {
        let sensing = self.sample_sensing(rng);
        let sensing_clip = &self.clips[sensing.index()];
        let state = estimate(sensing_clip)
            .ok_or_else(|| EcmError::StateEstimateRequired(sensing_clip.label.clone()))?;
        if self.parent_of(state) != Some(sensing)
            || self.clip(state)?.kind != ClipKind::PerceptualState
        {
            return Err(EcmError::InvalidStateOverride(state));
        }
        let prep = self.sample_prep(state, admissible, rng)?;
        Ok(WalkPath::new(self.start(), sensing, state, prep))
    }

    /// Random walk through the ECM. `state_override` is the classifier's
    /// estimate; it is used when the sampled sensing action owns it, and the
    /// walk fails with [`EcmError::StateEstimateRequired`] otherwise.
    pub fn random_walk<R: Rng + ?Sized>(
        &self,
        state_override: Option<ClipId>,
        rng: &mut R,
    ) -> Result<WalkPath, EcmError> {
        if let Some(s) = state_override {
            if self.clip(s)?.kind != ClipKind::PerceptualState {
                return Err(EcmError::InvalidStateOverride(s));
            }
        }
        self.walk_with(
            rng,
            |sensing| state_override.filter(|&s| self.parent_of(s) == Some(sensing.id)),
            |_| true,
        )
    }

    /// Applies one roll-out's reward to every edge.
    pub fn update_weights(&mut self, path: &WalkPath, reward: f64, params: &PsParams) {
        let gamma = params.gamma;
        if gamma == 0.0 {
            // Off-path edges are fixed points when there is no damping.
            for (from, to) in path.transitions() {
                if let Some(e) = self.children[from.index()]
                    .iter_mut()
                    .find(|e| e.child == to)
                {
                    e.weight = (e.weight + reward).max(WEIGHT_FLOOR);
                }
            }
            return;
        }
        for (p, edges) in self.children.iter_mut().enumerate() {
            let from = ClipId(p as u32);
            for e in edges.iter_mut() {
                let on_path = path.transitions().any(|t| t == (from, e.child));
                let rho = if on_path { 1.0 } else { 0.0 };
                e.weight = (e.weight - gamma * (e.weight - 1.0) + rho * reward).max(WEIGHT_FLOOR);
            }
        }
    }

    /// Adds a new preparatory clip reachable from every perceptual state
    /// with weight `h_init`.
    pub fn add_preparatory_clip(
        &mut self,
        skill_id: &str,
        params: &PsParams,
    ) -> Result<ClipId, EcmError> {
        params.validate()?;
        self.check_unique(ClipKind::PreparatorySkill, skill_id)?;
        let id = self.push_clip(ClipKind::PreparatorySkill, skill_id.to_string());
        let states: Vec<ClipId> = self
            .clips_of_kind(ClipKind::PerceptualState)
            .map(|c| c.id)
            .collect();
        for s in states {
            self.children[s.index()].push(Edge {
                child: id,
                weight: params.h_init,
            });
        }
        Ok(id)
    }

    pub fn to_document(&self) -> EcmDocument {
        EcmDocument {
            format: ECM_FORMAT.to_string(),
            version: ECM_FORMAT_VERSION,
            owner_skill: self.owner_skill.clone(),
            requires_grasp: self.requires_grasp,
            clips: self
                .clips
                .iter()
                .map(|c| ClipRecord {
                    id: c.id.0,
                    layer: c.layer(),
                    kind: c.kind,
                    label: c.label.clone(),
                    semantic_tag: c.semantic_tag.clone(),
                })
                .collect(),
            edges: self
                .edges()
                .map(|(from, to, weight)| EdgeRecord {
                    from: from.0,
                    to: to.0,
                    weight,
                })
                .collect(),
        }
    }

    pub fn from_document(doc: EcmDocument) -> Result<Self, EcmError> {
        let perr = |m: String| EcmError::Parse(m);
        if doc.format != ECM_FORMAT {
            return Err(perr(format!("unexpected format `{}`", doc.format)));
        }
        if doc.version != ECM_FORMAT_VERSION {
            return Err(perr(format!("unsupported version {}", doc.version)));
        }
        let mut ecm = Ecm {
            owner_skill: doc.owner_skill,
            requires_grasp: doc.requires_grasp,
            clips: Vec::with_capacity(doc.clips.len()),
            children: Vec::new(),
            parent: Vec::new(),
        };
        for (i, c) in doc.clips.into_iter().enumerate() {
            if c.id as usize != i {
                return Err(perr(format!("clip ids must be dense and ordered; found {} at position {i}", c.id)));
            }
            let kind = ClipKind::from_layer(c.layer)
                .ok_or_else(|| perr(format!("unknown layer {} for clip {}", c.layer, c.id)))?;
            if kind != c.kind {
                return Err(perr(format!("clip {} has kind {:?} but layer {}", c.id, c.kind, c.layer)));
            }
            ecm.clips.push(Clip {
                id: ClipId(c.id),
                kind,
                label: c.label,
                semantic_tag: c.semantic_tag,
            });
            ecm.children.push(Vec::new());
            ecm.parent.push(None);
        }
        let starts = ecm.clips.iter().filter(|c| c.kind == ClipKind::Start).count();
        if starts != 1 || ecm.clips.first().map(|c| c.kind) != Some(ClipKind::Start) {
            return Err(perr(format!("expected exactly one start clip at id 0, found {starts}")));
        }
        for e in doc.edges {
            let n = ecm.clips.len() as u32;
            if e.from >= n || e.to >= n {
                return Err(perr(format!("dangling edge {} -> {}", e.from, e.to)));
            }
            if !e.weight.is_finite() || e.weight < WEIGHT_FLOOR {
                return Err(perr(format!(
                    "weight below floor on edge {} -> {}: {}",
                    e.from, e.to, e.weight
                )));
            }
            let (from, to) = (ClipId(e.from), ClipId(e.to));
            if ecm.clips[to.index()].layer() != ecm.clips[from.index()].layer() + 1 {
                return Err(perr(format!("edge {from} -> {to} does not connect consecutive layers")));
            }
            if ecm.weight(from, to).is_some() {
                return Err(perr(format!("duplicate edge {from} -> {to}")));
            }
            if ecm.clips[to.index()].kind == ClipKind::PerceptualState {
                if ecm.parent[to.index()].is_some() {
                    return Err(perr(format!("state clip {to} has more than one parent")));
                }
                ecm.parent[to.index()] = Some(from);
            }
            ecm.children[from.index()].push(Edge {
                child: to,
                weight: e.weight,
            });
        }
        for c in &ecm.clips {
            let has_children = !ecm.children[c.id.index()].is_empty();
            match c.kind {
                ClipKind::Start | ClipKind::SensingAction | ClipKind::PerceptualState
                    if !has_children =>
                {
                    return Err(perr(format!("clip {} (`{}`) has no children", c.id, c.label)));
                }
                ClipKind::PerceptualState if ecm.parent[c.id.index()].is_none() => {
                    return Err(perr(format!("state clip {} has no parent", c.id)));
                }
                _ => {}
            }
        }
        Ok(ecm)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("ECM document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, EcmError> {
        let doc: EcmDocument =
            serde_json::from_str(text).map_err(|e| EcmError::Parse(e.to_string()))?;
        Ecm::from_document(doc)
    }
}

/// On-disk form of an [`Ecm`]. Weights are written with shortest round-trip
/// decimal representation, so parsing recovers them bit-exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EcmDocument {
    pub format: String,
    pub version: u32,
    pub owner_skill: String,
    pub requires_grasp: bool,
    pub clips: Vec<ClipRecord>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClipRecord {
    pub id: u32,
    pub layer: u8,
    pub kind: ClipKind,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semantic_tag: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub from: u32,
    pub to: u32,
    pub weight: f64,
}
