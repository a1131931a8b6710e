//! Skill composition: learn the tabletop grasp, register it as a
//! preparatory skill of drop-into-box, then learn drop-into-box, whose
//! grasp gate now offers the learned grasp.
//!
//! cargo run --release --example skill_hierarchy -- [seed]

use skill_ecm::agent::{Agent, AgentConfig};
use skill_ecm::ecm::ClipKind;
use skill_ecm::seed::rng_for;
use skill_ecm::world::Scenario;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let mut agent = Agent::bootstrap(Scenario::book(), AgentConfig::default(), 50, false, seed)?;
    let world = agent.scenario.initial_world();
    let mut rng = rng_for(seed, "play");

    agent.add_skill("tabletop-grasp")?;
    let grasp = agent.play("tabletop-grasp", 300, &world, &mut rng)?;
    println!("tabletop-grasp: {:?} after {} roll-outs", grasp.status, grasp.rollouts.len());

    agent.add_skill("drop-into-box")?;
    agent.register_as_prep("tabletop-grasp", &["drop-into-box".to_string()])?;
    // A second registration is a no-op with a warning; self-registration fails.
    println!("{:?}", agent.register_as_prep("tabletop-grasp", &["drop-into-box".to_string()])?);
    println!("{}", agent.register_as_prep("tabletop-grasp", &["tabletop-grasp".to_string()]).unwrap_err());

    let drop = agent.play("drop-into-box", 200, &grasp.world, &mut rng)?;
    println!("drop-into-box: {:?} after {} roll-outs", drop.status, drop.rollouts.len());
    let gated_choices = drop
        .rollouts
        .iter()
        .filter(|r| r.prep.as_deref() == Some("tabletop-grasp"))
        .count();
    println!("roll-outs that called the learned grasp: {gated_choices}/{}", drop.rollouts.len());

    let ecm = &agent.record("drop-into-box")?.ecm;
    let slide = ecm.find(ClipKind::SensingAction, "slide").expect("slide");
    for state in ecm.children_of(slide) {
        let label = &ecm.clips()[state.child.index()].label;
        let p = agent.prep_probability("drop-into-box", "slide", label, "tabletop-grasp", false)?;
        println!("P(tabletop-grasp | slide/{label}) = {p:.3} over all preparatory skills");
    }
    Ok(())
}
