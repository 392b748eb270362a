//! Shared fixtures for the benchmarks in `benches/`.

use std::f64::consts::PI;

use tsqml_core::circuits::build;
use tsqml_core::teacher_student::{generate_dataset, make_grid};
use tsqml_core::{Architecture, CircuitSpec, TrainConfig};

pub struct Fixture {
    pub circuit: CircuitSpec,
    pub params: Vec<f64>,
    pub points: Vec<[f64; 2]>,
    pub targets: Vec<f64>,
}

/// A circuit with seeded parameters and teacher labels on a `resolution^2` grid.
pub fn fixture(arch: Architecture, resolution: usize) -> Fixture {
    let grid = make_grid(resolution, -PI, PI).expect("resolution >= 2");
    let data = generate_dataset(Architecture::reuploading(2), &grid, 1).expect("valid teacher");
    let circuit = build(arch);
    let params = TrainConfig::default().initial_params(circuit.n_params());
    Fixture {
        circuit,
        params,
        points: data.points,
        targets: data.y_continuous,
    }
}
