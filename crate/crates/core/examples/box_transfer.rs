//! The same machinery on a different task: putting an object into a food
//! box whose cover may be closed. Only the scenario changes.
//!
//! cargo run --release --example box_transfer -- [seed]

use skill_ecm::agent::{Agent, AgentConfig};
use skill_ecm::seed::rng_for;
use skill_ecm::world::{self, Scenario, WorldState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: u64 = std::env::args().nth(1).map_or(Ok(5), |s| s.parse())?;
    let mut agent = Agent::bootstrap(Scenario::boxed(), AgentConfig::default(), 50, false, seed)?;
    for s in &agent.models.scores {
        println!("{:<6} accuracy {:.3}  D {:.1}", s.sensing_action, s.s, s.d);
    }

    agent.add_skill("place-in-box")?;
    let mut rng = rng_for(seed, "play");
    let start = agent.scenario.reset_episode(&agent.scenario.initial_world(), &mut rng);
    let outcome = agent.play("place-in-box", 300, &start, &mut rng)?;
    println!("place-in-box: {:?} after {} roll-outs", outcome.status, outcome.rollouts.len());

    for s in &agent.scenario.sensing {
        println!("P({}) = {:.3}", s.id, agent.sensing_probability("place-in-box", &s.id)?);
    }
    // Which learned state label does a closed box get? Ask the classifier.
    let poke = agent.scenario.sensing_action("poke").expect("poke");
    let model = agent.models.model("poke").expect("poke model");
    let closed = WorldState::default();
    let label = model.classify(&world::sense(&closed, poke, &mut rng))?.state;
    for prep in ["flip", "nothing"] {
        let p = agent.prep_probability("place-in-box", "poke", &label, prep, false)?;
        println!("P({prep} | poke/{label} = closed) = {p:.3}");
    }
    Ok(())
}
