//! Averaged learning curves of many simulated agents for several numbers of
//! preparatory skills, and the roll-outs needed to reach 90 % success.
//!
//! cargo run --release --example convergence -- [agents] [rollouts] [N_p,...]

use skill_ecm::convergence::{sweep_preps, AbstractScenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let agents: usize = args.first().map_or(Ok(2000), |s| s.parse())?;
    let rollouts: usize = args.get(1).map_or(Ok(400), |s| s.parse())?;
    let preps: Vec<usize> = match args.get(2) {
        Some(list) => list.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![6, 20],
    };

    let started = std::time::Instant::now();
    let sweep = sweep_preps(&AbstractScenario::default(), &preps, agents, rollouts, 0.9, 1)?;
    println!("{agents} agents, {rollouts} roll-outs, {:.1?}", started.elapsed());
    println!("{:>4} {:>6} {:>9} {:>9} {:>9}", "N_p", "N_r", "first", "at 80", "last 100");
    for r in &sweep.results {
        let nr = r.n_r.map_or("-".to_string(), |v| v.to_string());
        let at80 = r.smoothed_curve.get(79).copied().unwrap_or(f64::NAN);
        println!(
            "{:>4} {:>6} {:>9.3} {:>9.3} {:>9.3}",
            r.num_preps,
            nr,
            r.success_curve[0],
            at80,
            r.tail_mean(100)
        );
    }
    Ok(())
}
