//! Architecture catalog: structure, golden listing and forward-pass identities.

use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use tsqml_core::circuits::{build, catalog_listing, Architecture, ArchitectureKind, Encoding};
use tsqml_core::qsim::{dense_unitary_oracle, GateKind};

fn all_architectures() -> Vec<Architecture> {
    ArchitectureKind::ALL
        .iter()
        .flat_map(|&k| [Architecture::new(k), Architecture::with_encoding(k, Encoding::RotH)])
        .collect()
}

#[test]
fn dissipative_qp_golden_listing() {
    let expect = "\
qubits 3
measure q2
params 12
encodings 1
RX(x1) q0
RX(x2) q1
ROT(w0, w1, w2) q0
ROT(w3, w4, w5) q1
CZ [q0] -> q1
ROT(w6, w7, w8) q0
ROT(w9, w10, w11) q1
MCX [q0,q1] -> q2
";
    assert_eq!(build(Architecture::dissipative_qp()).listing(), expect);
}

#[test]
fn reuploading_two_layers() {
    let c = build(Architecture::reuploading(2));
    assert_eq!(c.n_qubits(), 3);
    assert_eq!(c.n_params(), 24);
    assert_eq!(c.encoding_count(), 2);
    assert_eq!(c.measured_qubit(), 2);
    let kinds: Vec<GateKind> = c.ops().iter().map(|o| o.kind).collect();
    use GateKind::*;
    let layer = [Rx, Rx, Rot, Rot, Cz, Rot, Rot];
    let mut expect: Vec<GateKind> = layer.iter().chain(&layer).copied().collect();
    expect.push(Mcx);
    assert_eq!(kinds, expect);
}

#[test]
fn catalog_sizes() {
    let table = [
        ("dissipative_qp", 3, 12, 1),
        ("reuploading:3", 3, 36, 3),
        ("deep_teacher4", 3, 48, 4),
        ("eight_gate_qp", 3, 24, 1),
        ("deep_dissipative_qp", 5, 24, 1),
        ("qnn_two_qp", 7, 36, 2),
        ("random_deep_qp", 5, 42, 1),
    ];
    for (name, qubits, params, encodings) in table {
        let c = build(name.parse().unwrap());
        assert_eq!(
            (c.n_qubits(), c.n_params(), c.encoding_count()),
            (qubits, params, encodings),
            "{name}"
        );
    }
    let eight = build("eight_gate_qp".parse().unwrap());
    let count = |k| eight.ops().iter().filter(|o| o.kind == k).count();
    assert_eq!((count(GateKind::Rot), count(GateKind::Cnot)), (8, 4));
}

#[test]
fn encoding_count_matches_data_bound_ops() {
    for arch in all_architectures() {
        let c = build(arch);
        let data_ops = c.ops().iter().filter(|o| o.is_data_bound()).count();
        assert_eq!(data_ops, 2 * c.encoding_count(), "{arch}");
        assert!(c
            .ops()
            .iter()
            .filter(|o| o.is_data_bound())
            .all(|o| !o.targets.contains(&c.measured_qubit())));
    }
}

#[test]
fn forward_examples() {
    let c = build(Architecture::dissipative_qp());
    let w = [0.0; 12];
    assert!((c.forward([0.0, 0.0], &w).unwrap() - 1.0).abs() < 1e-12);
    assert!((c.forward([PI, PI], &w).unwrap() + 1.0).abs() < 1e-12);
    // Activation probability sin^4(pi/4) = 1/4, so <Z> = 1/2.
    let x = [FRAC_PI_2, FRAC_PI_2];
    let dense = dense_unitary_oracle(&c, x, &w).unwrap().apply_to_zero().unwrap();
    let p_active = dense.probability_vector(&[2]).unwrap()[1];
    assert!((p_active - 0.25).abs() < 1e-12);
    assert!((c.forward(x, &w).unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn bound_zero_params_drive_controls() {
    let c = build(Architecture::dissipative_qp());
    let gates = c.bind([PI, PI], &[0.0; 12]).unwrap();
    assert_eq!(gates.len(), c.ops().len());
    let s = c.simulate([PI, PI], &[0.0; 12]).unwrap();
    assert!((s.probability_vector(&[0, 1]).unwrap()[3] - 1.0).abs() < 1e-12);
}

#[test]
fn catalog_listing_names_every_architecture() {
    let text = catalog_listing(Encoding::RxAngle);
    for k in ArchitectureKind::ALL {
        assert!(text.contains(&format!("# {}\n", Architecture::new(k).name())));
    }
}

fn params_for(n: usize, seed: &[f64]) -> Vec<f64> {
    (0..n).map(|i| seed[i % seed.len()] * (1.0 + i as f64 * 0.13)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn reuploading_one_layer_equals_dissipative_qp(
        x1 in -PI..PI, x2 in -PI..PI, w in proptest::collection::vec(0.0..2.0 * PI, 12)
    ) {
        let a = build(Architecture::dissipative_qp()).forward([x1, x2], &w).unwrap();
        let b = build(Architecture::reuploading(1)).forward([x1, x2], &w).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn outputs_bounded_and_4pi_periodic(
        arch_idx in 0usize..14, x1 in -PI..PI, x2 in -PI..PI, seed in proptest::collection::vec(-3.0..3.0f64, 5)
    ) {
        let arch = all_architectures()[arch_idx];
        let c = build(arch);
        let w = params_for(c.n_params(), &seed);
        let y = c.forward([x1, x2], &w).unwrap();
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&y));
        let shifted = c.forward([x1 + 4.0 * PI, x2], &w).unwrap();
        prop_assert!((y - shifted).abs() < 1e-9);
    }
}
