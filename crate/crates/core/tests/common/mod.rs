//! Helpers shared by several test targets.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsqml_core::circuits::CircuitSpec;
use tsqml_core::qsim::{GateOp, QuantumState};
use tsqml_core::training::{loss, Samples};

pub const H: f64 = 1e-5;

pub fn random_gate(rng: &mut ChaCha8Rng, n: usize) -> GateOp {
    let q = rng.gen_range(0..n);
    let angle = |rng: &mut ChaCha8Rng| rng.gen_range(-2.0 * PI..2.0 * PI);
    let other = |rng: &mut ChaCha8Rng, avoid: &[usize]| loop {
        let c = rng.gen_range(0..n);
        if !avoid.contains(&c) {
            break c;
        }
    };
    let choice = if n == 1 {
        rng.gen_range(0..6)
    } else {
        rng.gen_range(0..9)
    };
    match choice {
        0 => GateOp::rx(q, angle(rng)),
        1 => GateOp::ry(q, angle(rng)),
        2 => GateOp::rz(q, angle(rng)),
        3 => GateOp::rot(q, angle(rng), angle(rng), angle(rng)),
        4 => GateOp::h(q),
        5 => GateOp::x(q),
        6 => GateOp::cz(other(rng, &[q]), q),
        7 => GateOp::cnot(other(rng, &[q]), q),
        _ => {
            let k = rng.gen_range(1..n);
            let mut controls = Vec::new();
            while controls.len() < k {
                let mut avoid = controls.clone();
                avoid.push(q);
                controls.push(other(rng, &avoid));
            }
            GateOp::mcx(&controls, q)
        }
    }
}

/// A circuit of 1 to 7 qubits and up to 50 gates drawn from every gate kind.
pub fn random_circuit(seed: u64) -> (usize, Vec<GateOp>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=7);
    let len = rng.gen_range(0..=50);
    (n, (0..len).map(|_| random_gate(&mut rng, n)).collect())
}

pub fn run(n: usize, gates: &[GateOp]) -> QuantumState {
    let mut s = QuantumState::new(n).unwrap();
    for g in gates {
        s.apply(g).unwrap();
    }
    s
}

/// Central differences of the loss in every parameter.
pub fn finite_difference(c: &CircuitSpec, w: &[f64], data: Samples<'_>) -> Vec<f64> {
    (0..w.len())
        .map(|j| {
            let mut up = w.to_vec();
            let mut down = w.to_vec();
            up[j] += H;
            down[j] -= H;
            (loss(c, &up, data).unwrap() - loss(c, &down, data).unwrap()) / (2.0 * H)
        })
        .collect()
}
