use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::dataset::CircularDataset;
use crate::circuits::{build, Architecture};
use crate::error::Result;
use crate::teacher_student::{run_experiment, ExperimentResult, ExperimentSettings};
use crate::training::{self, LabelKind, Samples, TrainConfig, TrainRun};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabellingCase {
    /// Inner disk `-1`, outside `+1`.
    InnerNegative,
    /// Inner disk `+1`, outside `-1`.
    Flipped,
    /// Flipped labels with an `X` on the ancilla before readout.
    FlippedWithX,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabellingCaseReport {
    pub case: LabellingCase,
    pub run: TrainRun,
    pub final_loss: f64,
    pub accuracy: f64,
    /// Mean ancilla distribution `[alpha^2, beta^2]` over the points labelled
    /// `-1` in this case, at the trained parameters.
    pub p_minus: [f64; 2],
    /// Same average over the points inside the circle, whatever their label.
    pub p_inner: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabellingReport {
    pub cases: Vec<LabellingCaseReport>,
}

impl LabellingReport {
    pub fn case(&self, case: LabellingCase) -> &LabellingCaseReport {
        self.cases.iter().find(|c| c.case == case).expect("all cases are run")
    }
}

fn mean_ancilla(preds: &[f64], mask: impl Iterator<Item = bool>) -> [f64; 2] {
    let (sum, n) = preds
        .iter()
        .zip(mask)
        .filter(|(_, keep)| *keep)
        .fold((0.0, 0usize), |(s, n), (z, _)| (s + z, n + 1));
    if n == 0 {
        return [f64::NAN, f64::NAN];
    }
    let z = sum / n as f64;
    // <Z> = alpha^2 - beta^2 with alpha^2 + beta^2 = 1.
    [(1.0 + z) / 2.0, (1.0 - z) / 2.0]
}

/// Trains the dissipative QP on circular data under three labellings. All
/// three cases start from the same seeded initialization.
pub fn labelling_experiment(cfg: &TrainConfig, data: &CircularDataset) -> Result<LabellingReport> {
    let arch = Architecture::dissipative_qp();
    let plain = build(arch);
    let with_x = plain.with_flipped_readout();
    let flipped = data.flipped_labels();

    let cases = [
        (LabellingCase::InnerNegative, &plain, &data.labels),
        (LabellingCase::Flipped, &plain, &flipped),
        (LabellingCase::FlippedWithX, &with_x, &flipped),
    ]
    .into_iter()
    .map(|(case, circuit, labels)| {
        let samples = Samples::new(&data.points, labels)?;
        let run = training::train(circuit, arch, samples, cfg, LabelKind::Binary)?;
        let preds = training::predictions(circuit, &run.final_params, &data.points)?;
        let p_minus = mean_ancilla(&preds, labels.iter().map(|y| *y < 0.0));
        let p_inner = mean_ancilla(&preds, data.labels.iter().map(|y| *y < 0.0));
        Ok(LabellingCaseReport {
            case,
            final_loss: run.final_loss,
            accuracy: run.final_accuracy.expect("binary runs track accuracy"),
            p_minus,
            p_inner,
            run,
        })
    })
    .collect::<Result<Vec<_>>>()?;
    Ok(LabellingReport { cases })
}

/// Deep-teacher experiment on `[-1, 1]^2` next to the same run on `[-pi, pi]^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationReport {
    pub unit_range: ExperimentResult,
    pub full_range: ExperimentResult,
}

/// Runs the four-layer teacher against the dissipative QP and the two-layer
/// re-uploading students with inputs on `[-1, 1]` and on `[-pi, pi]`.
/// `settings.lo`/`hi` are ignored.
pub fn normalization_experiment(cfg: &TrainConfig, settings: &ExperimentSettings) -> Result<NormalizationReport> {
    let students = [Architecture::dissipative_qp(), Architecture::reuploading(2)];
    let teacher = Architecture::deep_teacher4();
    let unit = ExperimentSettings {
        lo: -1.0,
        hi: 1.0,
        ..*settings
    };
    let full = ExperimentSettings {
        lo: -PI,
        hi: PI,
        ..*settings
    };
    Ok(NormalizationReport {
        unit_range: run_experiment(teacher, &students, cfg, &unit)?,
        full_range: run_experiment(teacher, &students, cfg, &full)?,
    })
}
