//! Generates a haptic database for a scenario and reports the cross-validated
//! accuracy and discrimination score of every sensing action.
//!
//! cargo run --release --example haptic_calibration -- [book|box|path] [seed] [samples] [lambda]

use skill_ecm::agent::{create_haptic_database, train_models, AgentConfig};
use skill_ecm::seed::rng_for;
use skill_ecm::world::Scenario;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let scenario = Scenario::load(args.first().map_or("book", String::as_str))?;
    let seed: u64 = args.get(1).map_or(Ok(7), |s| s.parse())?;
    let samples: usize = args.get(2).map_or(Ok(50), |s| s.parse())?;

    let actions: Vec<String> = scenario.sensing.iter().map(|s| s.id.clone()).collect();
    let mut rng = rng_for(seed, "database");
    let db = create_haptic_database(&scenario, &actions, samples, true, &mut rng)?;
    let mut config = AgentConfig::default();
    if let Some(l) = args.get(3) {
        config.train.lambda = l.parse()?;
    }
    let models = train_models(&db, &config)?;

    println!("scenario {} ({} series, seed {seed})", scenario.name, db.len());
    println!("{:<8} {:>8} {:>14} {:>10}", "action", "cv acc", "D (alpha=10)", "train acc");
    for (score, model) in models.scores.iter().zip(&models.models) {
        println!(
            "{:<8} {:>8.3} {:>14.2} {:>10.3}",
            score.sensing_action, score.s, score.d, model.training_accuracy
        );
    }
    Ok(())
}
