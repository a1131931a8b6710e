//! Learns the tabletop grasp of the book from scratch, once per seed, and
//! reports how many roll-outs each run needed to become confident.
//!
//! cargo run --release --example book_play -- [runs] [max_rollouts]

use skill_ecm::agent::{Agent, AgentConfig, SkillStatus};
use skill_ecm::seed::rng_for;
use skill_ecm::world::Scenario;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let runs: u64 = args.first().map_or(Ok(10), |s| s.parse())?;
    let max_rollouts: usize = args.get(1).map_or(Ok(300), |s| s.parse())?;

    let mut needed = Vec::new();
    let mut failed = 0;
    for seed in 0..runs {
        let mut agent = Agent::bootstrap(Scenario::book(), AgentConfig::default(), 50, false, seed)?;
        agent.add_skill("tabletop-grasp")?;
        let world = agent.scenario.initial_world();
        let outcome = agent.play("tabletop-grasp", max_rollouts, &world, &mut rng_for(seed, "play"))?;
        let last = outcome.rollouts.last().map_or(0.0, |r| r.confidence);
        println!(
            "seed {seed:>3}: {:>4} roll-outs, {:?}, confidence {last:.2}",
            outcome.rollouts.len(),
            outcome.status
        );
        if outcome.status == SkillStatus::Confident {
            needed.push(outcome.rollouts.len());
        } else {
            failed += 1;
        }
    }
    needed.sort_unstable();
    if let Some(median) = needed.get(needed.len() / 2) {
        println!("confident in {}/{runs} runs, median {median} roll-outs", needed.len());
    }
    if failed > 0 {
        println!("{failed} runs stayed learning after {max_rollouts} roll-outs");
    }
    Ok(())
}
