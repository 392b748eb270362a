//! Squared-error loss, parameter-shift gradients and full-batch training.

use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{Architecture, CircuitSpec};
use crate::error::{Error, Result};
use crate::qsim::GateKind;
use crate::{metrics, seeding, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelKind {
    Continuous,
    Binary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimizer {
    VanillaGD,
    /// First/second moment accumulation with bias correction.
    AdaptiveMoment,
}

impl Optimizer {
    pub fn name(self) -> &'static str {
        match self {
            Optimizer::VanillaGD => "gd",
            Optimizer::AdaptiveMoment => "adam",
        }
    }
}

impl std::str::FromStr for Optimizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gd" | "vanilla_gd" => Ok(Optimizer::VanillaGD),
            "adam" | "adaptive_moment" => Ok(Optimizer::AdaptiveMoment),
            other => Err(Error::config(format!(
                "unknown optimizer `{other}` (expected gd or adam)"
            ))),
        }
    }
}

const ADAM_BETA1: f64 = 0.9;
const ADAM_BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub optimizer: Optimizer,
    pub seed: u64,
    /// Initial angles are drawn uniformly from `[0, init_scale)`.
    pub init_scale: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.05,
            epochs: 150,
            optimizer: Optimizer::AdaptiveMoment,
            seed: 0,
            init_scale: TAU,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::config(format!(
                "learning rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if self.epochs == 0 {
            return Err(Error::config("epochs must be at least 1"));
        }
        if !(self.init_scale >= 0.0 && self.init_scale.is_finite()) {
            return Err(Error::config(format!(
                "init scale must be non-negative, got {}",
                self.init_scale
            )));
        }
        Ok(())
    }

    /// Seeded initial parameter vector.
    pub fn initial_params(&self, n_params: usize) -> Vec<f64> {
        seeding::uniform_angles(n_params, self.init_scale, self.seed)
    }
}

/// Outcome of one training run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainRun {
    pub architecture: Architecture,
    pub label_kind: LabelKind,
    pub config: TrainConfig,
    /// Loss before each update; `loss_curve[0]` is the loss at initialization.
    pub loss_curve: Vec<f64>,
    /// Training accuracy before each update, binary-label runs only.
    pub accuracy_curve: Option<Vec<f64>>,
    pub initial_params: Vec<f64>,
    pub final_params: Vec<f64>,
    /// Loss at `final_params`.
    pub final_loss: f64,
    pub final_accuracy: Option<f64>,
}

/// Points with their regression targets.
#[derive(Debug, Clone, Copy)]
pub struct Samples<'a> {
    pub points: &'a [Point],
    pub targets: &'a [f64],
}

impl<'a> Samples<'a> {
    pub fn new(points: &'a [Point], targets: &'a [f64]) -> Result<Self> {
        if points.len() != targets.len() {
            return Err(Error::structural(format!(
                "{} points but {} targets",
                points.len(),
                targets.len()
            )));
        }
        if points.is_empty() {
            return Err(Error::config("dataset is empty"));
        }
        Ok(Samples { points, targets })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `sign(y)` with `sign(0) = +1`.
pub fn binarize(y: f64) -> f64 {
    if y >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Predictions of `circuit` at every point, in input order.
pub fn predictions(circuit: &CircuitSpec, w: &[f64], points: &[Point]) -> Result<Vec<f64>> {
    for &x in points {
        circuit.check_inputs(x, w)?;
    }
    Ok(points.par_iter().map(|&x| circuit.forward_unchecked(x, w)).collect())
}

/// Mean squared error between targets and predictions.
pub fn loss(circuit: &CircuitSpec, w: &[f64], data: Samples<'_>) -> Result<f64> {
    let preds = predictions(circuit, w, data.points)?;
    Ok(mean_squared_error(&preds, data.targets))
}

fn mean_squared_error(preds: &[f64], targets: &[f64]) -> f64 {
    let total: f64 = preds.iter().zip(targets).map(|(p, y)| (y - p) * (y - p)).sum();
    total / preds.len() as f64
}

/// Prediction and its parameter-shift gradient at one input.
///
/// Every trainable angle enters as `exp(-i a P / 2)` for a Pauli `P`, so
/// `d<Z>/da = (<Z>(a + pi/2) - <Z>(a - pi/2)) / 2`. States before each op are
/// cached so a shifted evaluation restarts at the shifted gate.
pub fn value_and_shift_gradient(circuit: &CircuitSpec, x: Point, w: &[f64]) -> Result<(f64, Vec<f64>)> {
    circuit.check_inputs(x, w)?;
    check_shiftable(circuit)?;
    Ok(value_and_shift_gradient_unchecked(circuit, x, w))
}

fn check_shiftable(circuit: &CircuitSpec) -> Result<()> {
    for site in circuit.param_sites() {
        let kind = circuit.ops()[site.op].kind;
        if !matches!(kind, GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::Rot) {
            return Err(Error::UnsupportedArchitecture(format!(
                "trainable angle on {kind} has no parameter-shift rule"
            )));
        }
    }
    Ok(())
}

fn value_and_shift_gradient_unchecked(circuit: &CircuitSpec, x: Point, w: &[f64]) -> (f64, Vec<f64>) {
    let n_ops = circuit.ops().len();
    let measured = circuit.measured_qubit();
    let mut prefix = Vec::with_capacity(n_ops + 1);
    let mut state = crate::qsim::QuantumState::new(circuit.n_qubits()).expect("validated register");
    prefix.push(state.clone());
    for i in 0..n_ops {
        circuit.apply_op(&mut state, i, x, w, None);
        prefix.push(state.clone());
    }
    let value = state.expectation_z_unchecked(measured);

    let shifted = |op: usize, angle: usize, delta: f64| {
        let mut s = prefix[op].clone();
        circuit.apply_op(&mut s, op, x, w, Some((angle, delta)));
        for i in op + 1..n_ops {
            circuit.apply_op(&mut s, i, x, w, None);
        }
        s.expectation_z_unchecked(measured)
    };
    let grad = circuit
        .param_sites()
        .iter()
        .map(|site| (shifted(site.op, site.angle, FRAC_PI_2) - shifted(site.op, site.angle, -FRAC_PI_2)) / 2.0)
        .collect();
    (value, grad)
}

/// Loss, its gradient and the predictions at `w`.
///
/// Per-point work runs in parallel; the reduction is sequential in input order
/// so results do not depend on the thread count.
fn evaluate(circuit: &CircuitSpec, w: &[f64], data: Samples<'_>) -> (f64, Vec<f64>, Vec<f64>) {
    let per_point: Vec<(f64, Vec<f64>)> = data
        .points
        .par_iter()
        .map(|&x| value_and_shift_gradient_unchecked(circuit, x, w))
        .collect();
    let n = data.len() as f64;
    let mut grad = vec![0.0; w.len()];
    let mut total = 0.0;
    let mut preds = Vec::with_capacity(per_point.len());
    for ((f, df), &y) in per_point.iter().zip(data.targets) {
        let residual = f - y;
        total += residual * residual;
        for (g, d) in grad.iter_mut().zip(df) {
            *g += 2.0 * residual * d / n;
        }
        preds.push(*f);
    }
    (total / n, grad, preds)
}

/// Analytic gradient of the mean squared error.
pub fn gradient(circuit: &CircuitSpec, w: &[f64], data: Samples<'_>) -> Result<Vec<f64>> {
    for &x in data.points {
        circuit.check_inputs(x, w)?;
    }
    check_shiftable(circuit)?;
    Ok(evaluate(circuit, w, data).1)
}

enum OptimizerState {
    Vanilla,
    Adam { m: Vec<f64>, v: Vec<f64>, t: i32 },
}

impl OptimizerState {
    fn new(kind: Optimizer, n: usize) -> Self {
        match kind {
            Optimizer::VanillaGD => OptimizerState::Vanilla,
            Optimizer::AdaptiveMoment => OptimizerState::Adam {
                m: vec![0.0; n],
                v: vec![0.0; n],
                t: 0,
            },
        }
    }

    fn step(&mut self, w: &mut [f64], grad: &[f64], lr: f64) {
        match self {
            OptimizerState::Vanilla => {
                for (wi, g) in w.iter_mut().zip(grad) {
                    *wi -= lr * g;
                }
            }
            OptimizerState::Adam { m, v, t } => {
                *t += 1;
                let c1 = 1.0 - ADAM_BETA1.powi(*t);
                let c2 = 1.0 - ADAM_BETA2.powi(*t);
                for i in 0..w.len() {
                    m[i] = ADAM_BETA1 * m[i] + (1.0 - ADAM_BETA1) * grad[i];
                    v[i] = ADAM_BETA2 * v[i] + (1.0 - ADAM_BETA2) * grad[i] * grad[i];
                    w[i] -= lr * (m[i] / c1) / ((v[i] / c2).sqrt() + ADAM_EPS);
                }
            }
        }
    }
}

/// Full-batch training from the seeded initialization in `cfg`.
///
/// For [`LabelKind::Binary`] the targets must be `±1`; the squared error is
/// still what gets minimized and accuracy is tracked alongside.
pub fn train(
    circuit: &CircuitSpec,
    architecture: Architecture,
    data: Samples<'_>,
    cfg: &TrainConfig,
    label_kind: LabelKind,
) -> Result<TrainRun> {
    let init = cfg.initial_params(circuit.n_params());
    train_from(circuit, architecture, data, cfg, label_kind, init)
}

/// Like [`train`] but starting from explicit parameters.
pub fn train_from(
    circuit: &CircuitSpec,
    architecture: Architecture,
    data: Samples<'_>,
    cfg: &TrainConfig,
    label_kind: LabelKind,
    init: Vec<f64>,
) -> Result<TrainRun> {
    cfg.validate()?;
    for &x in data.points {
        circuit.check_inputs(x, &init)?;
    }
    check_shiftable(circuit)?;

    let track_accuracy = label_kind == LabelKind::Binary;
    let mut w = init.clone();
    let mut opt = OptimizerState::new(cfg.optimizer, w.len());
    let mut loss_curve = Vec::with_capacity(cfg.epochs);
    let mut accuracy_curve = Vec::with_capacity(if track_accuracy { cfg.epochs } else { 0 });

    for epoch in 0..cfg.epochs {
        let (loss, grad, preds) = evaluate(circuit, &w, data);
        if !loss.is_finite() {
            return Err(Error::TrainingDiverged { epoch, loss });
        }
        loss_curve.push(loss);
        if track_accuracy {
            accuracy_curve.push(metrics::accuracy(&preds, data.targets)?);
        }
        opt.step(&mut w, &grad, cfg.learning_rate);
    }

    let preds = predictions(circuit, &w, data.points)?;
    let final_loss = mean_squared_error(&preds, data.targets);
    if !final_loss.is_finite() {
        return Err(Error::TrainingDiverged {
            epoch: cfg.epochs,
            loss: final_loss,
        });
    }
    let final_accuracy = if track_accuracy {
        Some(metrics::accuracy(&preds, data.targets)?)
    } else {
        None
    };

    Ok(TrainRun {
        architecture,
        label_kind,
        config: *cfg,
        loss_curve,
        accuracy_curve: track_accuracy.then_some(accuracy_curve),
        initial_params: init,
        final_params: w,
        final_loss,
        final_accuracy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::build;

    #[test]
    fn binarize_ties_to_plus_one() {
        assert_eq!(binarize(0.7), 1.0);
        assert_eq!(binarize(-0.2), -1.0);
        assert_eq!(binarize(0.0), 1.0);
        assert_eq!(binarize(-0.0), 1.0);
    }

    #[test]
    fn loss_of_exact_fit_is_zero() {
        let c = build(Architecture::dissipative_qp());
        let pts = [[0.0, 0.0]];
        let data = Samples::new(&pts, &[1.0]).unwrap();
        assert!(loss(&c, &[0.0; 12], data).unwrap().abs() < 1e-15);
    }

    #[test]
    fn empty_dataset_is_rejected() {
        assert!(matches!(Samples::new(&[], &[]), Err(Error::Config(_))));
        assert!(matches!(Samples::new(&[[0.0, 0.0]], &[]), Err(Error::Structural(_))));
    }

    #[test]
    fn config_validation() {
        let mut cfg = TrainConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.learning_rate = 0.0;
        assert!(cfg.validate().is_err());
        cfg = TrainConfig {
            epochs: 0,
            ..TrainConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn one_epoch_gives_one_loss_entry() {
        let c = build(Architecture::dissipative_qp());
        let pts = [[0.1, 0.2], [1.0, -2.0]];
        let data = Samples::new(&pts, &[1.0, -1.0]).unwrap();
        let cfg = TrainConfig {
            epochs: 1,
            ..TrainConfig::default()
        };
        let run = train(&c, Architecture::dissipative_qp(), data, &cfg, LabelKind::Binary).unwrap();
        assert_eq!(run.loss_curve.len(), 1);
        assert_eq!(run.accuracy_curve.as_ref().unwrap().len(), 1);
        assert_eq!(run.final_params.len(), 12);
    }
}
