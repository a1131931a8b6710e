//! Builds an ECM by hand, rewards one preparatory skill per state for a few
//! hundred walks and prints how the transition probabilities move.
//!
//! cargo run --example ecm_walk

use skill_ecm::ecm::{ClipKind, Ecm, PsParams, SensingInit};
use skill_ecm::haptic::discrimination_score;
use skill_ecm::seed::rng_for;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = PsParams::default();
    let states: Vec<String> = ["bottom", "binding", "open", "top"].map(String::from).to_vec();
    let sensing = [
        SensingInit::new("slide", states.clone(), discrimination_score(0.93, 10.0)),
        SensingInit::new("poke", states.clone(), discrimination_score(0.27, 10.0)),
    ];
    let preps: Vec<String> = ["rot90", "rot180", "rot270", "nothing"].map(String::from).to_vec();
    let mut ecm = Ecm::new("tabletop-grasp", &sensing, &preps, &params, false)?;

    let slide = ecm.find(ClipKind::SensingAction, "slide").expect("slide clip");
    println!("P(slide) = {:.4}", ecm.transition_probability(ecm.start(), slide)?);

    // The right prep for each state brings the book to `binding`.
    let correct = |state: &str| match state {
        "bottom" => "rot90",
        "binding" => "nothing",
        "open" => "rot270",
        _ => "rot180",
    };
    let mut rng = rng_for(1, "ecm-walk");
    let mut wins = 0;
    for _ in 0..400 {
        let truth = states[rand::Rng::random_range(&mut rng, 0..states.len())].clone();
        // A perfect classifier: the estimated state is the true one.
        let path = ecm.walk_with(&mut rng, |s| ecm.find_state(s.id, &truth), |_| true)?;
        let success = ecm.clip(path.prep())?.label == correct(&truth);
        wins += usize::from(success);
        let reward = if success { params.lambda_succ } else { params.lambda_fail };
        ecm.update_weights(&path, reward, &params);
    }
    println!("successes: {wins}/400");

    for state in &states {
        let clip = ecm.find_state(slide, state).expect("state clip");
        let row: Vec<String> = ecm
            .probabilities(clip)
            .iter()
            .map(|(id, p)| format!("{}={p:.3}", ecm.clips()[id.index()].label))
            .collect();
        println!("slide/{state:<8} {}", row.join("  "));
    }

    let json = ecm.to_json();
    assert_eq!(Ecm::from_json(&json)?, ecm);
    println!("serialized ECM: {} bytes, {} edges", json.len(), ecm.edge_count());
    Ok(())
}
