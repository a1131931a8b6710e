//! Oracles shared by the integration tests. They are written from the model
//! description, independently of the library code they check.

#![allow(dead_code)]

/// Exact first-roll-out success probability of an abstract agent, by
/// enumerating every (sensing action, true state, estimated state, prep)
/// outcome of the untrained ECM.
///
/// Preps `0..states` turn the object by that many quarter turns; the goal
/// orientation is index 1. Extra preps leave the object untouched when
/// `identity_extras`, and spoil the attempt otherwise.
pub fn first_rollout_success(
    accuracies: &[f64],
    alpha: f64,
    states: usize,
    preps: usize,
    p_grasp: f64,
    identity_extras: bool,
) -> f64 {
    let goal = 1;
    let weights: Vec<f64> = accuracies.iter().map(|a| (alpha * a).exp()).collect();
    let total: f64 = weights.iter().sum();
    let mut success = 0.0;
    for (i, w) in weights.iter().enumerate() {
        let p_sense = w / total;
        for truth in 0..states {
            let p_truth = 1.0 / states as f64;
            for estimate in 0..states {
                let p_est = if estimate == truth {
                    accuracies[i]
                } else {
                    (1.0 - accuracies[i]) / (states - 1) as f64
                };
                for k in 0..preps {
                    let p_prep = 1.0 / preps as f64;
                    let reaches = if k < states {
                        (truth + k) % states == goal
                    } else {
                        identity_extras && truth == goal
                    };
                    if reaches {
                        success += p_sense * p_truth * p_est * p_prep * p_grasp;
                    }
                }
            }
        }
    }
    success
}

/// Nearest-class-mean classifier on raw equal-length series; a floor any
/// trained linear model should roughly match on separable data.
pub fn nearest_centroid_accuracy(train: &[(Vec<f64>, usize)], test: &[(Vec<f64>, usize)], classes: usize) -> f64 {
    let dim = train[0].0.len();
    let mut sums = vec![vec![0.0; dim]; classes];
    let mut counts = vec![0usize; classes];
    for (x, y) in train {
        counts[*y] += 1;
        for (s, v) in sums[*y].iter_mut().zip(x) {
            *s += v;
        }
    }
    for (s, &c) in sums.iter_mut().zip(&counts) {
        s.iter_mut().for_each(|v| *v /= c.max(1) as f64);
    }
    let correct = test
        .iter()
        .filter(|(x, y)| {
            let best = (0..classes)
                .min_by(|&a, &b| {
                    let d = |c: usize| sums[c].iter().zip(x).map(|(m, v)| (m - v).powi(2)).sum::<f64>();
                    d(a).partial_cmp(&d(b)).unwrap()
                })
                .unwrap();
            best == *y
        })
        .count();
    correct as f64 / test.len() as f64
}
