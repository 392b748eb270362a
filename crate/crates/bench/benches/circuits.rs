use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tsqml_bench::fixture;
use tsqml_core::circuits::build;
use tsqml_core::qsim::GateOp;
use tsqml_core::training::{gradient, train, Samples};
use tsqml_core::{Architecture, LabelKind, QuantumState, TrainConfig};

fn architectures() -> Vec<Architecture> {
    [
        "dissipative_qp",
        "reuploading:2",
        "deep_teacher4",
        "deep_dissipative_qp",
        "qnn_two_qp",
    ]
    .iter()
    .map(|s| s.parse().unwrap())
    .collect()
}

fn forward(c: &mut Criterion) {
    let mut group = c.benchmark_group("forward");
    for arch in architectures() {
        let f = fixture(arch, 2);
        group.bench_function(BenchmarkId::from_parameter(arch.name()), |b| {
            b.iter(|| f.circuit.forward(black_box([0.3, -1.1]), black_box(&f.params)).unwrap())
        });
    }
    group.finish();
}

fn gradient_21x21(c: &mut Criterion) {
    let mut group = c.benchmark_group("gradient_441_points");
    group.sample_size(10);
    for arch in architectures() {
        let f = fixture(arch, 21);
        let data = Samples::new(&f.points, &f.targets).unwrap();
        group.bench_function(BenchmarkId::from_parameter(arch.name()), |b| {
            b.iter(|| gradient(&f.circuit, black_box(&f.params), data).unwrap())
        });
    }
    group.finish();
}

fn training_epochs(c: &mut Criterion) {
    let arch = Architecture::dissipative_qp();
    let f = fixture(arch, 21);
    let circuit = build(arch);
    let data = Samples::new(&f.points, &f.targets).unwrap();
    let cfg = TrainConfig {
        epochs: 10,
        ..TrainConfig::default()
    };
    let mut group = c.benchmark_group("train");
    group.sample_size(10);
    group.bench_function("dissipative_qp_10_epochs", |b| {
        b.iter(|| train(&circuit, arch, data, &cfg, LabelKind::Continuous).unwrap())
    });
    group.finish();
}

fn mcx_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("mcx");
    for n in [8usize, 14, 18] {
        let mut state = QuantumState::new(n).unwrap();
        for q in 0..n {
            state.apply(&GateOp::h(q)).unwrap();
        }
        let controls: Vec<usize> = (0..n - 1).collect();
        let gate = GateOp::mcx(&controls, n - 1);
        group.bench_function(BenchmarkId::from_parameter(n), |b| {
            b.iter(|| state.apply(black_box(&gate)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, forward, gradient_21x21, training_epochs, mcx_kernel);
criterion_main!(benches);
