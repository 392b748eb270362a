//! Runs a configured experiment and writes its artifacts.
//!
//! Every run writes `summary.json` last. If anything fails, a `FAILED` file
//! holding the error message is left next to whatever was already written.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use tsqml_core::analysis::{
    circular_dataset, encoding_study, labelling_experiment, normalization_experiment, EncodingReport, LabellingCase,
};
use tsqml_core::circuits::build;
use tsqml_core::metrics::prediction_map;
use tsqml_core::teacher_student::{run_experiment, ExperimentSettings};
use tsqml_core::{Architecture, ExperimentResult, TrainRun};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::CliError;

pub const SUMMARY_FILE: &str = "summary.json";
pub const FAILURE_MARKER: &str = "FAILED";

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn settings(cfg: &ExperimentConfig) -> ExperimentSettings {
    ExperimentSettings {
        n_seeds: cfg.n_seeds,
        grid_resolution: cfg.resolution,
        map_resolution: cfg.map_resolution,
        lo: -cfg.input_range,
        hi: cfg.input_range,
        binary_runs: cfg.binary_runs,
    }
}

fn ensure_finite(what: &str, values: impl IntoIterator<Item = f64>) -> Result<(), CliError> {
    if values.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(CliError::NonFinite(what.to_string()))
    }
}

/// `epoch,loss` rows, or `epoch,loss,accuracy` when the run tracked accuracy.
pub fn curve_csv(run: &TrainRun) -> String {
    let mut out = String::new();
    match &run.accuracy_curve {
        Some(acc) => {
            out.push_str("epoch,loss,accuracy\n");
            for (e, (l, a)) in run.loss_curve.iter().zip(acc).enumerate() {
                out.push_str(&format!("{e},{l},{a}\n"));
            }
        }
        None => {
            out.push_str("epoch,loss\n");
            for (e, l) in run.loss_curve.iter().enumerate() {
                out.push_str(&format!("{e},{l}\n"));
            }
        }
    }
    out
}

fn write_teacher_student(dir: &Path, r: &ExperimentResult) -> Result<Value, CliError> {
    for (i, &seed) in r.teacher_seeds.iter().enumerate() {
        write(
            &dir.join(format!("map_teacher_{seed}.csv")),
            &r.teacher_maps[i].to_csv(),
        )?;
    }
    let mut students = Vec::new();
    for s in &r.students {
        let slug = s.architecture.slug();
        let what = format!("student {}", s.architecture);
        ensure_finite(&what, [s.mean_final_loss, s.mean_relative_entropy])?;
        ensure_finite(&what, s.mean_accuracy)?;
        for (i, &seed) in r.teacher_seeds.iter().enumerate() {
            write(&dir.join(format!("loss_{slug}_{seed}.csv")), &curve_csv(&s.runs[i]))?;
            write(&dir.join(format!("map_{slug}_{seed}.csv")), &s.maps[i].to_csv())?;
            if let Some(b) = s.binary_runs.get(i) {
                write(&dir.join(format!("accuracy_{slug}_{seed}.csv")), &curve_csv(b))?;
            }
        }
        students.push(json!({
            "architecture": s.architecture.name(),
            "n_params": s.runs[0].final_params.len(),
            "mean_final_loss": s.mean_final_loss,
            "mean_relative_entropy": s.mean_relative_entropy,
            "mean_accuracy": s.mean_accuracy,
            "final_loss": s.runs.iter().map(|r| r.final_loss).collect::<Vec<_>>(),
            "relative_entropy": s.relative_entropy,
            "accuracy": s.accuracy,
        }));
    }
    Ok(json!({
        "teacher": r.teacher.name(),
        "n_seeds": r.n_seeds,
        "teacher_seeds": r.teacher_seeds,
        "grid_resolution": r.settings.grid_resolution,
        "map_resolution": r.settings.map_resolution,
        "input_range": [r.settings.lo, r.settings.hi],
        "students": students,
    }))
}

fn projection_csv(report: &EncodingReport, points: &[[f64; 2]], labels: &[f64]) -> String {
    let mut out = String::from("x1,x2,p00,p01,p10,p11,projection_1,projection_2,label\n");
    for ((pt, p), (proj, y)) in points
        .iter()
        .zip(&report.probabilities)
        .zip(report.projection.projected.iter().zip(labels))
    {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            pt[0], pt[1], p[0], p[1], p[2], p[3], proj[0], proj[1], y
        ));
    }
    out
}

fn encoding_summary(r: &EncodingReport) -> Value {
    json!({
        "separability": r.separability,
        "explained_variance": r.projection.explained_variance,
        "eigenvalues": r.projection.eigenvalues,
        "components": r.projection.components,
    })
}

fn run_encoding(cfg: &ExperimentConfig, dir: &Path) -> Result<Value, CliError> {
    let data = circular_dataset(cfg.n_points, cfg.radius, cfg.train.seed)?;
    let study = encoding_study(&data)?;
    ensure_finite("separability", [study.rx.separability, study.roth.separability])?;
    write(
        &dir.join("projection_rx.csv"),
        &projection_csv(&study.rx, &data.points, &data.labels),
    )?;
    write(
        &dir.join("projection_roth.csv"),
        &projection_csv(&study.roth, &data.points, &data.labels),
    )?;
    Ok(json!({
        "n_points": cfg.n_points,
        "radius": cfg.radius,
        "seed": cfg.train.seed,
        "rx": encoding_summary(&study.rx),
        "roth": encoding_summary(&study.roth),
    }))
}

fn case_name(case: LabellingCase) -> &'static str {
    match case {
        LabellingCase::InnerNegative => "inner_negative",
        LabellingCase::Flipped => "flipped",
        LabellingCase::FlippedWithX => "flipped_with_x",
    }
}

fn run_labelling(cfg: &ExperimentConfig, dir: &Path) -> Result<Value, CliError> {
    let data = circular_dataset(cfg.n_points, cfg.radius, cfg.train.seed)?;
    let report = labelling_experiment(&cfg.train, &data)?;
    let mut points = String::from("x1,x2,label\n");
    for (p, y) in data.points.iter().zip(&data.labels) {
        points.push_str(&format!("{},{},{}\n", p[0], p[1], y));
    }
    write(&dir.join("data.csv"), &points)?;

    let plain = build(Architecture::dissipative_qp());
    let mut cases = Vec::new();
    for c in &report.cases {
        let name = case_name(c.case);
        ensure_finite(name, [c.final_loss, c.accuracy])?;
        ensure_finite(name, c.p_minus.iter().chain(&c.p_inner).copied())?;
        let circuit = match c.case {
            LabellingCase::FlippedWithX => plain.with_flipped_readout(),
            _ => plain.clone(),
        };
        let map = prediction_map(
            &circuit,
            &c.run.final_params,
            cfg.map_resolution,
            -std::f64::consts::PI,
            std::f64::consts::PI,
        )?;
        write(&dir.join(format!("accuracy_{name}.csv")), &curve_csv(&c.run))?;
        write(&dir.join(format!("map_{name}.csv")), &map.to_csv())?;
        cases.push(json!({
            "case": name,
            "final_loss": c.final_loss,
            "accuracy": c.accuracy,
            "p_minus": c.p_minus,
            "p_inner": c.p_inner,
        }));
    }
    Ok(json!({ "n_points": cfg.n_points, "radius": cfg.radius, "seed": cfg.train.seed, "cases": cases }))
}

fn loss_gap(r: &ExperimentResult) -> f64 {
    r.students[0].mean_final_loss - r.students[1].mean_final_loss
}

fn run_normalization(cfg: &ExperimentConfig, dir: &Path) -> Result<Value, CliError> {
    let report = normalization_experiment(&cfg.train, &settings(cfg))?;
    let mut parts = serde_json::Map::new();
    for (name, r) in [("unit_range", &report.unit_range), ("full_range", &report.full_range)] {
        let sub = dir.join(name);
        fs::create_dir_all(&sub).map_err(|e| CliError::io(&sub, e))?;
        let mut summary = write_teacher_student(&sub, r)?;
        summary["loss_gap"] = json!(loss_gap(r));
        parts.insert(name.to_string(), summary);
    }
    let (unit, full) = (loss_gap(&report.unit_range), loss_gap(&report.full_range));
    ensure_finite("loss gap", [unit, full])?;
    parts.insert("gap_ratio".into(), json!(unit.abs() / full.abs()));
    Ok(Value::Object(parts))
}

/// Runs `cfg`, writing into `out`. Returns the summary that was written.
pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<Value, CliError> {
    cfg.validate()?;
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let marker = out.join(FAILURE_MARKER);
    if marker.exists() {
        fs::remove_file(&marker).map_err(|e| CliError::io(&marker, e))?;
    }
    let result = run_inner(cfg, out);
    if let Err(e) = &result {
        // Best effort: the directory may be the thing that failed.
        let _ = fs::write(&marker, format!("{e}\n"));
    }
    result
}

fn run_inner(cfg: &ExperimentConfig, out: &Path) -> Result<Value, CliError> {
    let body = match cfg.kind {
        ExperimentKind::TeacherStudent => {
            let teacher = cfg.teacher.expect("validated");
            let r = run_experiment(teacher, &cfg.students, &cfg.train, &settings(cfg))?;
            write_teacher_student(out, &r)?
        }
        ExperimentKind::EncodingPca => run_encoding(cfg, out)?,
        ExperimentKind::Labelling => run_labelling(cfg, out)?,
        ExperimentKind::Normalization => run_normalization(cfg, out)?,
    };
    let summary = json!({
        "kind": cfg.kind.name(),
        "config": cfg.to_string(),
        "result": body,
    });
    let text = serde_json::to_string_pretty(&summary)? + "\n";
    write(&out.join(SUMMARY_FILE), &text)?;
    Ok(summary)
}

/// Output directory: the explicit override wins over the config's `output`.
pub fn output_dir(cfg: &ExperimentConfig, flag: Option<PathBuf>) -> Result<PathBuf, CliError> {
    flag.or_else(|| cfg.output.clone()).ok_or(CliError::NoOutput)
}
