//! Teacher-student protocol: random teachers label a grid, students learn it.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{build, Architecture};
use crate::error::{Error, Result};
use crate::metrics::{self, grid_coord, PredictionMap};
use crate::training::{self, binarize, LabelKind, Samples, TrainConfig, TrainRun};
use crate::{seeding, Point};

/// `resolution^2` evenly spaced points on `[lo, hi]^2`, endpoints included,
/// `x1` varying fastest.
pub fn make_grid(resolution: usize, lo: f64, hi: f64) -> Result<Vec<Point>> {
    if resolution < 2 {
        return Err(Error::config(format!(
            "grid resolution must be at least 2, got {resolution}"
        )));
    }
    let coords: Vec<f64> = (0..resolution).map(|i| grid_coord(lo, hi, resolution, i)).collect();
    Ok(coords
        .iter()
        .flat_map(|&x2| coords.iter().map(move |&x1| [x1, x2]))
        .collect())
}

/// Inputs labelled by a teacher circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledGrid {
    pub points: Vec<Point>,
    pub y_continuous: Vec<f64>,
    /// `sign(y_continuous)` with ties to `+1`.
    pub y_binary: Vec<f64>,
    pub teacher: Architecture,
    pub teacher_params: Vec<f64>,
    pub teacher_seed: u64,
}

impl LabeledGrid {
    pub fn targets(&self, kind: LabelKind) -> &[f64] {
        match kind {
            LabelKind::Continuous => &self.y_continuous,
            LabelKind::Binary => &self.y_binary,
        }
    }

    pub fn samples(&self, kind: LabelKind) -> Samples<'_> {
        Samples {
            points: &self.points,
            targets: self.targets(kind),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Teacher parameters for `seed`: uniform angles in `[0, 2pi)`.
pub fn teacher_params(teacher: Architecture, seed: u64) -> Vec<f64> {
    seeding::uniform_angles(build(teacher).n_params(), TAU, seed)
}

/// Labels `grid` with a randomly initialised teacher.
pub fn generate_dataset(teacher: Architecture, grid: &[Point], seed: u64) -> Result<LabeledGrid> {
    let params = teacher_params(teacher, seed);
    generate_dataset_with_params(teacher, grid, params, seed)
}

/// Labels `grid` with a teacher at explicit parameters.
pub fn generate_dataset_with_params(
    teacher: Architecture,
    grid: &[Point],
    params: Vec<f64>,
    seed: u64,
) -> Result<LabeledGrid> {
    let circuit = build(teacher);
    let y_continuous = training::predictions(&circuit, &params, grid)?;
    let y_binary = y_continuous.iter().map(|&y| binarize(y)).collect();
    Ok(LabeledGrid {
        points: grid.to_vec(),
        y_continuous,
        y_binary,
        teacher,
        teacher_params: params,
        teacher_seed: seed,
    })
}

/// Grid and repetition settings for [`run_experiment`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSettings {
    pub n_seeds: usize,
    /// Training grid is `grid_resolution^2` points.
    pub grid_resolution: usize,
    /// Maps used for relative entropy are `map_resolution^2` points.
    pub map_resolution: usize,
    pub lo: f64,
    pub hi: f64,
    /// Also train every student on the binary labels to measure accuracy.
    pub binary_runs: bool,
}

impl Default for ExperimentSettings {
    fn default() -> Self {
        ExperimentSettings {
            n_seeds: 10,
            grid_resolution: 21,
            map_resolution: 51,
            lo: -PI,
            hi: PI,
            binary_runs: true,
        }
    }
}

/// Everything recorded for one student across all teacher seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudentResult {
    pub architecture: Architecture,
    /// Continuous-label runs, one per seed.
    pub runs: Vec<TrainRun>,
    /// Binary-label runs, one per seed (empty when disabled).
    pub binary_runs: Vec<TrainRun>,
    /// Final prediction map of each continuous run.
    pub maps: Vec<PredictionMap>,
    pub relative_entropy: Vec<f64>,
    /// Final training accuracy of each binary run.
    pub accuracy: Vec<f64>,
    /// Pointwise mean of the per-seed loss curves.
    pub mean_loss_curve: Vec<f64>,
    pub mean_accuracy_curve: Option<Vec<f64>>,
    pub mean_final_loss: f64,
    pub mean_relative_entropy: f64,
    pub mean_accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub teacher: Architecture,
    pub n_seeds: usize,
    pub settings: ExperimentSettings,
    pub config: TrainConfig,
    pub teacher_seeds: Vec<u64>,
    pub teacher_params: Vec<Vec<f64>>,
    pub teacher_maps: Vec<PredictionMap>,
    pub students: Vec<StudentResult>,
}

impl ExperimentResult {
    pub fn student(&self, arch: Architecture) -> Option<&StudentResult> {
        self.students.iter().find(|s| s.architecture == arch)
    }
}

struct StudentSeed {
    run: TrainRun,
    binary_run: Option<TrainRun>,
    map: PredictionMap,
    relative_entropy: f64,
}

struct SeedOutcome {
    seed: u64,
    params: Vec<f64>,
    teacher_map: PredictionMap,
    students: Vec<StudentSeed>,
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    sum / n as f64
}

fn mean_curve<'a>(curves: impl Iterator<Item = &'a [f64]> + Clone) -> Vec<f64> {
    let len = curves.clone().map(<[f64]>::len).min().unwrap_or(0);
    (0..len).map(|e| mean(curves.clone().map(|c| c[e]))).collect()
}

/// Seed of student `index` trained against the teacher drawn with `teacher_seed`.
pub fn student_seed(teacher_seed: u64, index: usize) -> u64 {
    seeding::derive_seed(teacher_seed, 1 + index as u64)
}

/// Runs the protocol for seeds `cfg.seed, cfg.seed + 1, ...`: each seed draws a
/// fresh teacher and dataset, and every student is trained from its own seeded
/// initialization. Seeds run in parallel; results do not depend on scheduling.
pub fn run_experiment(
    teacher: Architecture,
    students: &[Architecture],
    cfg: &TrainConfig,
    settings: &ExperimentSettings,
) -> Result<ExperimentResult> {
    if settings.n_seeds == 0 {
        return Err(Error::config("n_seeds must be at least 1"));
    }
    cfg.validate()?;
    let grid = make_grid(settings.grid_resolution, settings.lo, settings.hi)?;
    let teacher_circuit = build(teacher);
    let student_circuits: Vec<_> = students.iter().map(|&s| build(s)).collect();

    let outcomes: Vec<SeedOutcome> = (0..settings.n_seeds)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.seed.wrapping_add(i as u64);
            let data = generate_dataset(teacher, &grid, seed)?;
            let teacher_map = metrics::prediction_map(
                &teacher_circuit,
                &data.teacher_params,
                settings.map_resolution,
                settings.lo,
                settings.hi,
            )?;
            let students = students
                .iter()
                .zip(&student_circuits)
                .enumerate()
                .map(|(k, (&arch, circuit))| {
                    let scfg = TrainConfig {
                        seed: student_seed(seed, k),
                        ..*cfg
                    };
                    let run = training::train(
                        circuit,
                        arch,
                        data.samples(LabelKind::Continuous),
                        &scfg,
                        LabelKind::Continuous,
                    )?;
                    let binary_run = if settings.binary_runs {
                        Some(training::train(
                            circuit,
                            arch,
                            data.samples(LabelKind::Binary),
                            &scfg,
                            LabelKind::Binary,
                        )?)
                    } else {
                        None
                    };
                    let map = metrics::prediction_map(
                        circuit,
                        &run.final_params,
                        settings.map_resolution,
                        settings.lo,
                        settings.hi,
                    )?;
                    let relative_entropy = metrics::relative_entropy(&teacher_map, &map)?;
                    Ok(StudentSeed {
                        run,
                        binary_run,
                        map,
                        relative_entropy,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SeedOutcome {
                seed,
                params: data.teacher_params,
                teacher_map,
                students,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let students = students
        .iter()
        .enumerate()
        .map(|(k, &architecture)| {
            let per_seed: Vec<&StudentSeed> = outcomes.iter().map(|o| &o.students[k]).collect();
            let runs: Vec<TrainRun> = per_seed.iter().map(|s| s.run.clone()).collect();
            let binary_runs: Vec<TrainRun> = per_seed.iter().filter_map(|s| s.binary_run.clone()).collect();
            let accuracy: Vec<f64> = binary_runs.iter().filter_map(|r| r.final_accuracy).collect();
            let relative_entropy: Vec<f64> = per_seed.iter().map(|s| s.relative_entropy).collect();
            StudentResult {
                architecture,
                mean_loss_curve: mean_curve(runs.iter().map(|r| r.loss_curve.as_slice())),
                mean_accuracy_curve: (!binary_runs.is_empty())
                    .then(|| mean_curve(binary_runs.iter().filter_map(|r| r.accuracy_curve.as_deref()))),
                mean_final_loss: mean(runs.iter().map(|r| r.final_loss)),
                mean_relative_entropy: mean(relative_entropy.iter().copied()),
                mean_accuracy: (!accuracy.is_empty()).then(|| mean(accuracy.iter().copied())),
                maps: per_seed.iter().map(|s| s.map.clone()).collect(),
                runs,
                binary_runs,
                relative_entropy,
                accuracy,
            }
        })
        .collect();

    Ok(ExperimentResult {
        teacher,
        n_seeds: settings.n_seeds,
        settings: *settings,
        config: *cfg,
        teacher_seeds: outcomes.iter().map(|o| o.seed).collect(),
        teacher_params: outcomes.iter().map(|o| o.params.clone()).collect(),
        teacher_maps: outcomes.into_iter().map(|o| o.teacher_map).collect(),
        students,
    })
}
