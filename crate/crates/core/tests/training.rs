//! Training loop contracts: loss definition, determinism and convergence.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsqml_core::circuits::{build, Architecture};
use tsqml_core::teacher_student::{generate_dataset, make_grid};
use tsqml_core::training::{binarize, loss, predictions, train, Samples};
use tsqml_core::{LabelKind, Optimizer, TrainConfig};

#[test]
fn loss_is_mean_squared_error_of_forward_outputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c = build(Architecture::reuploading(2));
    let w: Vec<f64> = (0..c.n_params()).map(|_| rng.gen_range(0.0..TAU)).collect();
    let pts: Vec<[f64; 2]> = (0..5)
        .map(|_| [rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)])
        .collect();
    let ys: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let by_hand: f64 = pts
        .iter()
        .zip(&ys)
        .map(|(p, y)| (c.forward(*p, &w).unwrap() - y).powi(2))
        .sum::<f64>()
        / 5.0;
    let got = loss(&c, &w, Samples::new(&pts, &ys).unwrap()).unwrap();
    assert!((got - by_hand).abs() < 1e-14);

    let origin = [[0.0, 0.0]];
    let one = [1.0];
    assert_eq!(
        loss(
            &build(Architecture::dissipative_qp()),
            &[0.0; 12],
            Samples::new(&origin, &one).unwrap()
        )
        .unwrap(),
        0.0
    );
}

#[test]
fn teacher_has_zero_loss_on_its_own_data() {
    let grid = make_grid(21, -PI, PI).unwrap();
    let arch = Architecture::reuploading(2);
    let data = generate_dataset(arch, &grid, 4).unwrap();
    let l = loss(&build(arch), &data.teacher_params, data.samples(LabelKind::Continuous)).unwrap();
    assert!(l < 1e-12);
}

#[test]
fn self_learning_converges() {
    let grid = make_grid(21, -PI, PI).unwrap();
    let arch = Architecture::dissipative_qp();
    let data = generate_dataset(arch, &grid, 2).unwrap();
    let cfg = TrainConfig {
        epochs: 200,
        seed: 17,
        ..TrainConfig::default()
    };
    let run = train(
        &build(arch),
        arch,
        data.samples(LabelKind::Continuous),
        &cfg,
        LabelKind::Continuous,
    )
    .unwrap();
    assert!(run.final_loss < 0.01, "final loss {}", run.final_loss);
    assert_eq!(run.loss_curve.len(), 200);
}

#[test]
fn same_seed_gives_identical_runs() {
    let grid = make_grid(9, -PI, PI).unwrap();
    let teacher = generate_dataset(Architecture::reuploading(2), &grid, 8).unwrap();
    let arch = Architecture::dissipative_qp();
    let cfg = TrainConfig {
        epochs: 20,
        seed: 99,
        ..TrainConfig::default()
    };
    let a = train(
        &build(arch),
        arch,
        teacher.samples(LabelKind::Binary),
        &cfg,
        LabelKind::Binary,
    )
    .unwrap();
    let b = train(
        &build(arch),
        arch,
        teacher.samples(LabelKind::Binary),
        &cfg,
        LabelKind::Binary,
    )
    .unwrap();
    assert_eq!(a, b);
    let other = train(
        &build(arch),
        arch,
        teacher.samples(LabelKind::Binary),
        &TrainConfig { seed: 100, ..cfg },
        LabelKind::Binary,
    )
    .unwrap();
    assert_ne!(a.initial_params, other.initial_params);
}

#[test]
fn one_epoch_gives_one_loss_entry() {
    let grid = make_grid(5, -PI, PI).unwrap();
    let data = generate_dataset(Architecture::dissipative_qp(), &grid, 0).unwrap();
    let arch = Architecture::reuploading(2);
    let cfg = TrainConfig {
        epochs: 1,
        ..TrainConfig::default()
    };
    let run = train(
        &build(arch),
        arch,
        data.samples(LabelKind::Continuous),
        &cfg,
        LabelKind::Continuous,
    )
    .unwrap();
    assert_eq!(run.loss_curve.len(), 1);
    assert!(run.accuracy_curve.is_none());
}

#[test]
fn small_step_gradient_descent_does_not_increase_loss() {
    let grid = make_grid(7, -PI, PI).unwrap();
    for seed in 0..8u64 {
        let data = generate_dataset(Architecture::reuploading(2), &grid, seed).unwrap();
        let arch = Architecture::dissipative_qp();
        let cfg = TrainConfig {
            learning_rate: 0.01,
            epochs: 11,
            optimizer: Optimizer::VanillaGD,
            seed: seed + 50,
            ..TrainConfig::default()
        };
        let run = train(
            &build(arch),
            arch,
            data.samples(LabelKind::Continuous),
            &cfg,
            LabelKind::Continuous,
        )
        .unwrap();
        assert!(
            run.loss_curve[10] <= run.loss_curve[0],
            "seed {seed}: {:?}",
            run.loss_curve
        );
        assert!(run.loss_curve.iter().all(|l| *l >= 0.0));
    }
}

#[test]
fn binary_accuracy_curve_matches_final_predictions() {
    let grid = make_grid(9, -PI, PI).unwrap();
    let data = generate_dataset(Architecture::reuploading(2), &grid, 3).unwrap();
    let arch = Architecture::dissipative_qp();
    let cfg = TrainConfig {
        epochs: 15,
        ..TrainConfig::default()
    };
    let c = build(arch);
    let run = train(&c, arch, data.samples(LabelKind::Binary), &cfg, LabelKind::Binary).unwrap();
    let preds = predictions(&c, &run.final_params, &data.points).unwrap();
    let correct = preds
        .iter()
        .zip(&data.y_binary)
        .filter(|(p, y)| binarize(**p) == **y)
        .count();
    assert_eq!(run.final_accuracy, Some(correct as f64 / preds.len() as f64));
    assert_eq!(run.accuracy_curve.as_ref().map(Vec::len), Some(15));
}

#[test]
fn binarize_truth_table() {
    assert_eq!(binarize(0.7), 1.0);
    assert_eq!(binarize(-0.2), -1.0);
    assert_eq!(binarize(0.0), 1.0);
    assert_eq!(binarize(-0.0), 1.0);
}

#[test]
fn runs_round_trip_through_json() {
    let grid = make_grid(5, -PI, PI).unwrap();
    let data = generate_dataset(Architecture::reuploading(3), &grid, 0).unwrap();
    let arch: Architecture = "qnn_two_qp@roth".parse().unwrap();
    let cfg = TrainConfig {
        epochs: 2,
        ..TrainConfig::default()
    };
    let run = train(
        &build(arch),
        arch,
        data.samples(LabelKind::Binary),
        &cfg,
        LabelKind::Binary,
    )
    .unwrap();
    let text = serde_json::to_string(&run).unwrap();
    assert!(text.contains("\"architecture\":\"qnn_two_qp@roth\""));
    let back: tsqml_core::TrainRun = serde_json::from_str(&text).unwrap();
    assert_eq!(back, run);
    assert_eq!(
        serde_json::from_str::<tsqml_core::LabeledGrid>(&serde_json::to_string(&data).unwrap()).unwrap(),
        data
    );
}
