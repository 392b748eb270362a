//! Engine vs dense-matrix oracle, norm preservation and readout identities.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsqml_core::analysis::encoding_probability_vectors;
use tsqml_core::circuits::{build, encoding_gates, Architecture, Encoding};
use tsqml_core::qsim::{dense_unitary, dense_unitary_oracle, GateOp};

mod common;
use common::{random_circuit, run};

#[test]
fn engine_matches_dense_oracle_on_random_circuits() {
    let mut worst: f64 = 0.0;
    for seed in 0..150 {
        let (n, gates) = random_circuit(seed);
        let fast = run(n, &gates);
        let dense = dense_unitary(n, &gates).unwrap().apply_to_zero().unwrap();
        for (a, b) in fast.amplitudes().iter().zip(dense.amplitudes()) {
            worst = worst.max((a - b).norm());
        }
    }
    assert!(worst < 1e-9, "max deviation {worst}");
}

#[test]
fn norm_is_preserved() {
    for seed in 1000..1200 {
        let (n, gates) = random_circuit(seed);
        assert!((run(n, &gates).norm_sqr() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn probability_vector_over_all_qubits_is_squared_magnitudes() {
    for seed in 2000..2050 {
        let (n, gates) = random_circuit(seed);
        let s = run(n, &gates);
        let all: Vec<usize> = (0..n).collect();
        let p = s.probability_vector(&all).unwrap();
        for (pi, a) in p.iter().zip(s.amplitudes()) {
            assert!((pi - a.norm_sqr()).abs() < 1e-15);
        }
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn x_before_readout_negates_expectation() {
    for seed in 3000..3100 {
        let (n, gates) = random_circuit(seed);
        let s = run(n, &gates);
        for q in 0..n {
            let mut flipped = s.clone();
            flipped.apply(&GateOp::x(q)).unwrap();
            let (a, b) = (s.expectation_z(q).unwrap(), flipped.expectation_z(q).unwrap());
            assert!((a + b).abs() < 1e-12);
        }
    }
}

#[test]
fn catalog_circuits_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for arch in [
        Architecture::dissipative_qp(),
        Architecture::reuploading(2),
        Architecture::deep_teacher4(),
        "eight_gate_qp".parse().unwrap(),
        "deep_dissipative_qp".parse().unwrap(),
        "qnn_two_qp".parse().unwrap(),
        "random_deep_qp@roth".parse().unwrap(),
    ] {
        let c = build(arch);
        for _ in 0..3 {
            let x = [rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)];
            let w: Vec<f64> = (0..c.n_params()).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
            let fast = c.simulate(x, &w).unwrap();
            let dense = dense_unitary_oracle(&c, x, &w).unwrap().apply_to_zero().unwrap();
            for (a, b) in fast.amplitudes().iter().zip(dense.amplitudes()) {
                assert!((a - b).norm() < 1e-9, "{arch}");
            }
        }
    }
}

#[test]
fn roth_probabilities_match_hand_built_kronecker_product() {
    // Rot(x1, x2, 0) H |0> per qubit, built from explicit 2x2 products.
    let x = [0.8, -1.9];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = [Complex64::new(h, 0.0), Complex64::new(h, 0.0)];
    let rz = |a: f64, v: [Complex64; 2]| {
        [
            v[0] * Complex64::from_polar(1.0, -a / 2.0),
            v[1] * Complex64::from_polar(1.0, a / 2.0),
        ]
    };
    let ry = |a: f64, v: [Complex64; 2]| {
        let (s, c) = (a / 2.0).sin_cos();
        [v[0] * c - v[1] * s, v[0] * s + v[1] * c]
    };
    let single = ry(x[1], rz(x[0], plus));
    let mut expect = [0.0; 4];
    for i in 0..2 {
        for j in 0..2 {
            expect[2 * i + j] = (single[i] * single[j]).norm_sqr();
        }
    }
    let got = encoding_probability_vectors(Encoding::RotH, &[x]).unwrap();
    for (a, b) in got[0].iter().zip(expect) {
        assert!((a - b).abs() < 1e-12);
    }
    let at_origin = encoding_probability_vectors(Encoding::RotH, &[[0.0, 0.0]]).unwrap();
    let dense = dense_unitary(2, &encoding_gates(Encoding::RotH, [0.0, 0.0]))
        .unwrap()
        .apply_to_zero()
        .unwrap();
    let p = dense.probability_vector(&[0, 1]).unwrap();
    for (a, b) in at_origin[0].iter().zip(&p) {
        assert!((a - b).abs() < 1e-12 && (a - 0.25).abs() < 1e-12);
    }
}

#[test]
fn rx_half_pi_probability_vector() {
    let s = run(2, &[GateOp::rx(0, FRAC_PI_2)]);
    let p = s.probability_vector(&[0, 1]).unwrap();
    for (a, b) in p.iter().zip([0.5, 0.0, 0.5, 0.0]) {
        assert!((a - b).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_circuits_stay_normalized(seed in any::<u64>()) {
        let (n, gates) = random_circuit(seed);
        prop_assert!((run(n, &gates).norm_sqr() - 1.0).abs() < 1e-10);
    }
}
