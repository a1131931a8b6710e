mod common;

use skill_ecm::convergence::{
    run_abstract_agent, run_population, sweep_preps, write_curve_csv, write_sweep_csv,
    AbstractScenario, UselessPrep,
};
use skill_ecm::ecm::PsParams;
use skill_ecm::seed::agent_rng;

fn perfect() -> AbstractScenario {
    AbstractScenario {
        sensing_accuracies: vec![("a".into(), 1.0), ("b".into(), 1.0), ("c".into(), 1.0)],
        complex_success: 1.0,
        num_preps: 4,
        ..AbstractScenario::default()
    }
}

#[test]
fn noise_free_agents_converge_to_certainty() {
    // Wrong preps keep weight until enough failures push them to the floor,
    // so the mean approaches 1 like 1/n rather than jumping there.
    let r = run_population(&perfect(), 200, 3000, 0.9, 3).unwrap();
    assert!(r.n_r.is_some());
    assert!(r.success_curve.contains(&1.0));
    let tail = r.tail_mean(1000);
    assert!(tail >= 0.995, "tail mean {tail}");
}

#[test]
fn without_rewards_the_curve_stays_at_chance() {
    let s = AbstractScenario {
        params: PsParams {
            lambda_succ: 0.0,
            lambda_fail: 0.0,
            ..PsParams::default()
        },
        ..AbstractScenario::default()
    };
    let chance = common::first_rollout_success(&[0.93, 0.27, 0.40], 10.0, 4, 6, 0.98, true);
    let r = run_population(&s, 4000, 60, 0.9, 11).unwrap();
    let mean = r.success_curve.iter().sum::<f64>() / 60.0;
    assert!((mean - chance).abs() < 0.005, "mean {mean} vs chance {chance}");
    for (t, v) in r.success_curve.iter().enumerate() {
        // five binomial standard errors
        assert!((v - chance).abs() < 5.0 * (chance * (1.0 - chance) / 4000.0).sqrt(), "t={t}: {v}");
    }
}

#[test]
fn failure_penalty_alone_still_learns() {
    // With lambda_succ = 0 the failure penalty still pushes wrong preps to
    // the floor, so the curve rises above chance.
    let s = AbstractScenario {
        params: PsParams {
            lambda_succ: 0.0,
            ..PsParams::default()
        },
        ..AbstractScenario::default()
    };
    let chance = common::first_rollout_success(&[0.93, 0.27, 0.40], 10.0, 4, 6, 0.98, true);
    let r = run_population(&s, 2000, 400, 0.9, 11).unwrap();
    assert!(r.tail_mean(50) > chance + 0.1);
}

#[test]
fn first_rollout_matches_enumeration_for_several_layouts() {
    for (np, useless) in [(4, UselessPrep::Identity), (6, UselessPrep::Identity), (9, UselessPrep::Spoiler)] {
        let s = AbstractScenario {
            num_preps: np,
            useless_preps: useless,
            ..AbstractScenario::default()
        };
        let oracle = common::first_rollout_success(
            &[0.93, 0.27, 0.40],
            10.0,
            4,
            np,
            0.98,
            useless == UselessPrep::Identity,
        );
        let r = run_population(&s, 20_000, 1, 0.9, 5).unwrap();
        assert!((r.success_curve[0] - oracle).abs() < 0.01, "N_p={np}: {} vs {oracle}", r.success_curve[0]);
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let s = AbstractScenario::default();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| run_population(&s, 300, 120, 0.9, 9).unwrap());
    let b = four.install(|| run_population(&s, 300, 120, 0.9, 9).unwrap());
    assert_eq!(a, b);
    let c = run_population(&s, 300, 120, 0.9, 10).unwrap();
    assert_ne!(a.success_curve, c.success_curve);
}

#[test]
fn agents_are_independent_of_population_size() {
    let s = AbstractScenario::default();
    let third = run_abstract_agent(&s, 50, &mut agent_rng(4, 2)).unwrap();
    let pop = run_population(&s, 3, 50, 0.9, 4).unwrap();
    let first_two: Vec<f64> = (0..50)
        .map(|t| {
            let a = run_abstract_agent(&s, 50, &mut agent_rng(4, 0)).unwrap()[t];
            let b = run_abstract_agent(&s, 50, &mut agent_rng(4, 1)).unwrap()[t];
            (u8::from(a) + u8::from(b) + u8::from(third[t])) as f64 / 3.0
        })
        .collect();
    assert_eq!(pop.success_curve, first_two);
}

#[test]
fn curve_values_are_probabilities() {
    let r = run_population(&AbstractScenario::default(), 200, 300, 0.9, 1).unwrap();
    assert_eq!(r.success_curve.len(), 300);
    assert_eq!(r.smoothed_curve.len(), 300);
    assert!(r.success_curve.iter().all(|v| (0.0..=1.0).contains(v)));
}

#[test]
fn standard_error_bound() {
    let r = run_population(&AbstractScenario::default(), 10_000, 200, 0.9, 2).unwrap();
    let worst = r.standard_errors().into_iter().fold(0.0, f64::max);
    assert!(worst <= 0.007, "worst standard error {worst}");
    // The binomial bound at p = 0.5 for 5000 agents is 0.00707.
    assert!((0.25f64 / 5000.0).sqrt() < 0.0071);
}

#[test]
fn useless_preps_do_not_raise_the_asymptote() {
    for useless in [UselessPrep::Identity, UselessPrep::Spoiler] {
        let s = AbstractScenario {
            useless_preps: useless,
            ..AbstractScenario::default()
        };
        let few = run_population(&s, 2000, 1500, 0.9, 8).unwrap();
        let many = run_population(&s.with_preps(12), 2000, 1500, 0.9, 8).unwrap();
        assert!(
            many.tail_mean(200) <= few.tail_mean(200) + 0.01,
            "{useless:?}: {} vs {}",
            many.tail_mean(200),
            few.tail_mean(200)
        );
    }
}

#[test]
fn csv_outputs() {
    let sweep = sweep_preps(&AbstractScenario::default(), &[4, 5], 20, 3, 0.9, 1).unwrap();
    let mut out = Vec::new();
    write_sweep_csv(&mut out, &sweep).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "N_p,N_r");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("4,"));

    let mut out = Vec::new();
    write_curve_csv(&mut out, &sweep.results[0]).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().next(), Some("rollout,mean_success"));
    assert_eq!(text.lines().count(), 4);

    let empty = sweep_preps(&AbstractScenario::default(), &[], 20, 3, 0.9, 1).unwrap();
    let mut out = Vec::new();
    write_sweep_csv(&mut out, &empty).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), "N_p,N_r\n");
}
