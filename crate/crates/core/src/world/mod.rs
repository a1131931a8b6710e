//! Simulated tabletop environments: hidden state, synthetic haptic sensing,
//! preparatory skills and stochastic complex skills.

pub mod scenario;
pub mod state;

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::ecm::PsParams;
use crate::haptic::{HapticStep, HapticTimeSeries};

pub use scenario::{
    Aspect, Channel, ComplexSkillDef, FlipTarget, PrepEffect, PreparatorySkillDef, Scenario,
    SensingActionDef, WeighDef, WEIGH,
};
pub use state::{Orientation, StatePattern, WorldState};

pub const GRAVITY: f64 = 9.81;

#[derive(Debug, Error, PartialEq)]
pub enum WorldError {
    #[error("scenario: {0}")]
    Scenario(String),
    #[error("invalid world state: {0}")]
    InvalidState(String),
}

fn gauss<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Synthetic series of `def` for perceptual class `class` of `num_classes`.
pub fn synthesize<R: Rng + ?Sized>(
    def: &SensingActionDef,
    class: usize,
    num_classes: usize,
    rng: &mut R,
) -> HapticTimeSeries {
    let phase = 2.0 * PI * class as f64 / num_classes as f64;
    let cos_coef = def.amplitude * phase.cos() + def.jitter * gauss(rng);
    let sin_coef = def.amplitude * phase.sin() + def.jitter * gauss(rng);
    let omega = 2.0 * PI * def.frequency_hz;
    let contact_at = 0.1 * def.duration;
    let steps = (0..def.steps)
        .map(|k| {
            let t = def.duration * k as f64 / (def.steps - 1) as f64;
            let mut c = [0.0; 9];
            if t >= contact_at {
                c[Channel::Fz.index()] += def.contact_force;
            }
            c[Channel::Px.index()] += def.ramp * t;
            c[Channel::Py.index()] += 0.2;
            c[Channel::Pz.index()] += 0.05;
            c[def.channel.index()] += cos_coef * (omega * t).sin() + sin_coef * (omega * t).cos();
            // Lever-arm coupling of lateral forces into torque.
            c[Channel::Tx.index()] += 0.05 * c[Channel::Fy.index()];
            c[Channel::Ty.index()] += 0.05 * c[Channel::Fx.index()];
            for v in c.iter_mut() {
                *v += def.noise * gauss(rng);
            }
            HapticStep::from_channels(t, c)
        })
        .collect();
    HapticTimeSeries {
        series_id: String::new(),
        sensing_action: def.id.clone(),
        label: None,
        steps,
    }
}

/// Executes a sensing action. The world is only read.
pub fn sense<R: Rng + ?Sized>(
    world: &WorldState,
    action: &SensingActionDef,
    rng: &mut R,
) -> HapticTimeSeries {
    let labels = action.observes.class_labels();
    synthesize(action, action.observes.class_of(world), labels.len(), rng)
}

/// Weighing: the vertical force carries the object's weight iff it is held.
pub fn weigh<R: Rng + ?Sized>(world: &WorldState, def: &WeighDef, rng: &mut R) -> HapticTimeSeries {
    let load = if world.grasped { def.mass * GRAVITY } else { 0.0 };
    let steps = (0..def.steps)
        .map(|k| {
            let t = k as f64 / (def.steps - 1) as f64;
            let mut c = [0.0; 9];
            c[Channel::Fz.index()] = load;
            c[Channel::Pz.index()] = 0.3;
            for v in c.iter_mut() {
                *v += def.noise * gauss(rng);
            }
            HapticStep::from_channels(t, c)
        })
        .collect();
    HapticTimeSeries {
        series_id: String::new(),
        sensing_action: WEIGH.into(),
        label: None,
        steps,
    }
}

/// Hard-coded weighing decision: mean force norm above the threshold means
/// the object is held.
pub fn weighs_as_grasped(series: &HapticTimeSeries, def: &WeighDef) -> bool {
    let n = series.steps.len().max(1) as f64;
    let mean = series
        .steps
        .iter()
        .map(|s| s.force.iter().map(|f| f * f).sum::<f64>().sqrt())
        .sum::<f64>()
        / n;
    mean > def.threshold
}

pub fn apply_prep(world: &WorldState, skill: &PreparatorySkillDef) -> WorldState {
    let mut w = *world;
    match skill.effect {
        PrepEffect::Rotate { quarter_turns } => w.orientation = w.orientation.rotated(quarter_turns),
        PrepEffect::Flip {
            acts_on: FlipTarget::Orientation,
        } => w.orientation = w.orientation.flipped(),
        PrepEffect::Flip {
            acts_on: FlipTarget::BoxCover,
        } => w.box_open = !w.box_open,
        PrepEffect::Nothing => {}
    }
    w
}

/// Attempts a complex skill. Always consumes one uniform variate.
pub fn attempt_complex<R: Rng + ?Sized>(
    world: &WorldState,
    skill: &ComplexSkillDef,
    rng: &mut R,
) -> (bool, WorldState) {
    let u: f64 = rng.random();
    let success = skill.precondition.matches(world) && u < skill.success_prob;
    let next = if success { skill.effect.apply(world) } else { *world };
    (success, next)
}

pub fn reward_of(success: bool, params: &PsParams) -> f64 {
    if success {
        params.lambda_succ
    } else {
        params.lambda_fail
    }
}

/// Uniform random orientation, object released.
pub fn randomize_start<R: Rng + ?Sized>(world: &WorldState, rng: &mut R) -> WorldState {
    WorldState {
        orientation: Orientation::from_index(rng.random_range(0..4)),
        grasped: false,
        ..*world
    }
}

impl Scenario {
    /// Prepares the world for the next roll-out: [`randomize_start`], the
    /// object taken back out, and any scenario-specific redraws.
    pub fn reset_episode<R: Rng + ?Sized>(&self, world: &WorldState, rng: &mut R) -> WorldState {
        let mut w = randomize_start(world, rng);
        w.object_in_box = false;
        if self.reset.randomize_box_open {
            w.box_open = rng.random_bool(0.5);
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(42)
    }

    #[test]
    fn sensing_leaves_world_unchanged() {
        let book = Scenario::book();
        let w = WorldState {
            orientation: Orientation::Open,
            ..WorldState::default()
        };
        let before = w;
        let mut r = rng();
        for s in &book.sensing {
            let ts = sense(&w, s, &mut r);
            assert_eq!(ts.steps.len(), s.steps);
            let _ = sense(&w, s, &mut r);
        }
        assert_eq!(w, before);
    }

    #[test]
    fn noise_free_slide_is_the_prototype() {
        let mut def = Scenario::book().sensing_action("slide").unwrap().clone();
        def.jitter = 0.0;
        def.noise = 0.0;
        let w = WorldState {
            orientation: Orientation::Binding,
            ..WorldState::default()
        };
        let a = sense(&w, &def, &mut ChaCha8Rng::seed_from_u64(1));
        let b = sense(&w, &def, &mut ChaCha8Rng::seed_from_u64(2));
        assert_eq!(a, b);
        // Class 1 of 4 has phase pi/2: the sinusoid is amplitude * cos(omega t)
        // up to the rounding of cos(pi/2).
        let omega = 2.0 * PI * def.frequency_hz;
        let ch = def.channel.index();
        for s in &a.steps {
            let expected = def.amplitude * (omega * s.t).cos();
            assert!((s.channels()[ch] - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn weighing_detects_grasp() {
        let book = Scenario::book();
        let mut r = rng();
        for grasped in [false, true] {
            let w = WorldState {
                grasped,
                ..WorldState::default()
            };
            for _ in 0..100 {
                let ts = weigh(&w, &book.weigh, &mut r);
                assert_eq!(weighs_as_grasped(&ts, &book.weigh), grasped);
            }
        }
    }

    #[test]
    fn prep_effects() {
        let book = Scenario::book();
        let w = WorldState::default();
        let rot90 = book.prep("rot90").unwrap();
        let rot270 = book.prep("rot270").unwrap();
        let nothing = book.prep("nothing").unwrap();
        let flip = book.prep("flip").unwrap();
        for o in Orientation::ALL {
            let w = WorldState { orientation: o, ..w };
            assert_eq!(apply_prep(&apply_prep(&w, rot270), rot90), w);
            assert_eq!(apply_prep(&w, nothing), w);
            assert_eq!(apply_prep(&apply_prep(&w, flip), flip), w);
            let mut four = w;
            for _ in 0..4 {
                four = apply_prep(&four, rot90);
            }
            assert_eq!(four, w);
        }
        let bx = Scenario::boxed();
        let closed = WorldState::default();
        assert!(apply_prep(&closed, bx.prep("flip").unwrap()).box_open);
    }

    #[test]
    fn grasp_success_rate_matches_probability() {
        let book = Scenario::book();
        let grasp = book.complex_skill("tabletop-grasp").unwrap();
        let good = WorldState {
            orientation: Orientation::Binding,
            ..WorldState::default()
        };
        let bad = WorldState {
            orientation: Orientation::Top,
            ..WorldState::default()
        };
        let mut r = rng();
        let n = 10_000;
        let wins = (0..n)
            .filter(|_| attempt_complex(&good, grasp, &mut r).0)
            .count();
        assert!((wins as f64 / n as f64 - 0.98).abs() < 0.01);
        assert!((0..1000).all(|_| !attempt_complex(&bad, grasp, &mut r).0));
        let (ok, after) = attempt_complex(&good, &ComplexSkillDef { success_prob: 1.0, ..grasp.clone() }, &mut r);
        assert!(ok && after.grasped);
    }

    #[test]
    fn place_in_box_succeeds_when_open() {
        let bx = Scenario::boxed();
        let place = ComplexSkillDef {
            success_prob: 1.0,
            ..bx.complex_skill("place-in-box").unwrap().clone()
        };
        let w = WorldState {
            grasped: true,
            box_open: true,
            ..WorldState::default()
        };
        let (ok, after) = attempt_complex(&w, &place, &mut rng());
        assert!(ok);
        assert!(after.object_in_box);
    }

    #[test]
    fn rewards() {
        let p = PsParams::default();
        assert_eq!(reward_of(true, &p), 1000.0);
        assert_eq!(reward_of(false, &p), -30.0);
        let custom = PsParams {
            lambda_succ: 5.0,
            lambda_fail: -1.0,
            ..p
        };
        assert_eq!(reward_of(true, &custom), 5.0);
        assert_eq!(reward_of(false, &custom), -1.0);
    }

    #[test]
    fn randomized_start_is_uniform() {
        let mut r = rng();
        let mut counts = [0usize; 4];
        let start = WorldState {
            grasped: true,
            box_open: true,
            ..WorldState::default()
        };
        for _ in 0..4000 {
            let w = randomize_start(&start, &mut r);
            assert!(!w.grasped);
            assert!(w.box_open);
            counts[w.orientation.index()] += 1;
        }
        for c in counts {
            assert!((c as f64 / 4000.0 - 0.25).abs() < 0.02);
        }
    }
}
