mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skill_ecm::haptic::{
    cross_validate, read_dataset, resample, train, write_dataset, HapticStep, HapticTimeSeries,
    TrainConfig,
};
use skill_ecm::world::{synthesize, Scenario};

fn labelled(action: &str, class: usize, k: usize, n: usize, seed: u64) -> Vec<HapticTimeSeries> {
    let book = Scenario::book();
    let def = book.sensing_action(action).unwrap();
    let names = ["bottom", "binding", "open", "top"];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let mut ts = synthesize(def, class, k, &mut rng);
            ts.series_id = format!("{action}-{class}-{i}");
            ts.label = Some(names[class].to_string());
            ts
        })
        .collect()
}

fn dataset(action: &str, n: usize, seed: u64) -> Vec<HapticTimeSeries> {
    (0..4).flat_map(|c| labelled(action, c, 4, n, seed + c as u64)).collect()
}

fn scaled(ts: &HapticTimeSeries, factor: f64) -> HapticTimeSeries {
    HapticTimeSeries {
        steps: ts
            .steps
            .iter()
            .map(|s| {
                let c = s.channels().map(|v| v * factor);
                HapticStep::from_channels(s.t, c)
            })
            .collect(),
        ..ts.clone()
    }
}

#[test]
fn classification_is_pure() {
    let data = dataset("slide", 20, 1);
    let model = train(&data, &TrainConfig::default()).unwrap();
    let before = model.clone();
    let probe = &labelled("slide", 2, 4, 1, 99)[0];
    let a = model.classify(probe).unwrap();
    let b = model.classify(probe).unwrap();
    assert_eq!(a, b);
    assert_eq!(model, before);
}

#[test]
fn power_of_two_scaling_changes_nothing() {
    // Per-channel standardization makes the learned model blind to channel
    // scale; with a factor of 4 the arithmetic is exact.
    let data = dataset("press", 15, 2);
    let big: Vec<_> = data.iter().map(|s| scaled(s, 4.0)).collect();
    let config = TrainConfig::default();
    let a = train(&data, &config).unwrap();
    let b = train(&big, &config).unwrap();
    assert_eq!(a.weights, b.weights);
    assert_eq!(a.bias, b.bias);
    for probe in labelled("press", 1, 4, 10, 77) {
        assert_eq!(
            a.classify(&probe).unwrap().class_index,
            b.classify(&scaled(&probe, 4.0)).unwrap().class_index
        );
    }
}

#[test]
fn linear_model_is_not_worse_than_nearest_centroid() {
    let train_set = dataset("slide", 40, 10);
    let test_set = dataset("slide", 40, 500);
    let model = train(&train_set, &TrainConfig::default()).unwrap();
    let class_of = |ts: &HapticTimeSeries| model.classes.iter().position(|c| Some(c) == ts.label.as_ref()).unwrap();
    let ours = test_set
        .iter()
        .filter(|ts| model.classify(ts).unwrap().class_index == class_of(ts))
        .count() as f64
        / test_set.len() as f64;

    let flat = |ts: &HapticTimeSeries| -> Vec<f64> { ts.steps.iter().flat_map(|s| s.channels()).collect() };
    let tr: Vec<_> = train_set.iter().map(|t| (flat(t), class_of(t))).collect();
    let te: Vec<_> = test_set.iter().map(|t| (flat(t), class_of(t))).collect();
    let centroid = common::nearest_centroid_accuracy(&tr, &te, 4);
    assert!(ours >= centroid - 0.05, "linear {ours} vs centroid {centroid}");
}

#[test]
fn cross_validation_tracks_separability() {
    let config = TrainConfig::default();
    let strong = cross_validate(&dataset("slide", 30, 3), 5, &config).unwrap();
    let weak = cross_validate(&dataset("poke", 30, 3), 5, &config).unwrap();
    assert!(strong > 0.8, "slide {strong}");
    assert!(weak < 0.45, "poke {weak}");
}

#[test]
fn too_few_samples_for_the_folds() {
    let data = dataset("slide", 3, 4);
    assert!(cross_validate(&data, 5, &TrainConfig::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dataset_csv_round_trips(n in 1usize..4, steps in 2usize..12, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let series: Vec<HapticTimeSeries> = (0..n)
            .map(|i| {
                let step_vals: Vec<HapticStep> = (0..steps)
                    .map(|k| {
                        let c: [f64; 9] = std::array::from_fn(|_| rand::Rng::random_range(&mut rng, -50.0..50.0));
                        HapticStep::from_channels(k as f64 * 0.01, c)
                    })
                    .collect();
                HapticTimeSeries {
                    series_id: format!("s{i}"),
                    sensing_action: "slide".into(),
                    label: if i % 2 == 0 { Some("E1".into()) } else { None },
                    steps: step_vals,
                }
            })
            .collect();
        let mut bytes = Vec::new();
        write_dataset(&mut bytes, &series).unwrap();
        let back = read_dataset(bytes.as_slice()).unwrap();
        prop_assert_eq!(back, series);
    }

    #[test]
    fn resampling_keeps_endpoints(len in 2usize..300, seed in 0u64..100) {
        let ts = &labelled("slide", (seed % 4) as usize, 4, 1, seed)[0];
        let r = resample(ts, len).unwrap();
        prop_assert_eq!(r.len(), len);
        let (first, last) = (&ts.steps[0], ts.steps.last().unwrap());
        prop_assert_eq!(r[0].channels(), first.channels());
        for (a, b) in r[len - 1].channels().iter().zip(last.channels()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
