//! Experiment configuration files.
//!
//! The format is one `key = value` pair per line. Blank lines and lines
//! starting with `#` are ignored, as is anything after a `#` on a value line.
//! Keys may appear at most once.
//!
//! | key              | value                                                      | default            |
//! |------------------|------------------------------------------------------------|--------------------|
//! | `kind`           | `teacher_student`, `encoding_pca`, `labelling`, `normalization` | `teacher_student` |
//! | `teacher`        | architecture name, e.g. `reuploading:2`                    | required for `teacher_student` |
//! | `students`       | comma-separated architecture names                         | required for `teacher_student` |
//! | `n_seeds`        | integer >= 1                                               | 10                 |
//! | `resolution`     | training grid side, integer >= 2                           | 21                 |
//! | `map_resolution` | prediction map side, integer >= 2                          | 51                 |
//! | `input_range`    | inputs span `[-r, r]` per axis                             | pi                 |
//! | `binary_runs`    | `true` / `false`                                           | `true`             |
//! | `n_points`       | circular dataset size                                      | 500                |
//! | `radius`         | circular dataset radius                                    | pi / sqrt(2)       |
//! | `learning_rate`  | real > 0                                                   | 0.05               |
//! | `epochs`         | integer >= 1                                               | 150                |
//! | `optimizer`      | `adam` or `gd`                                             | `adam`             |
//! | `seed`           | base seed, integer                                         | 0                  |
//! | `init_scale`     | initial angles drawn from `[0, init_scale)`                | 2 pi               |
//! | `output`         | output directory                                           | none               |
//!
//! Architecture names are `dissipative_qp`, `reuploading:<layers>`,
//! `deep_teacher4`, `eight_gate_qp`, `deep_dissipative_qp`, `qnn_two_qp` and
//! `random_deep_qp`, optionally suffixed with `@roth` to swap the angle
//! encoding for the Hadamard-plus-rotation encoding.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use tsqml_core::analysis::DEFAULT_RADIUS;
use tsqml_core::{Architecture, TrainConfig};

use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    TeacherStudent,
    EncodingPca,
    Labelling,
    Normalization,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 4] = [
        ExperimentKind::TeacherStudent,
        ExperimentKind::EncodingPca,
        ExperimentKind::Labelling,
        ExperimentKind::Normalization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::TeacherStudent => "teacher_student",
            ExperimentKind::EncodingPca => "encoding_pca",
            ExperimentKind::Labelling => "labelling",
            ExperimentKind::Normalization => "normalization",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown experiment kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub teacher: Option<Architecture>,
    pub students: Vec<Architecture>,
    pub n_seeds: usize,
    pub resolution: usize,
    pub map_resolution: usize,
    pub input_range: f64,
    pub binary_runs: bool,
    pub n_points: usize,
    pub radius: f64,
    pub train: TrainConfig,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            kind: ExperimentKind::TeacherStudent,
            teacher: None,
            students: Vec::new(),
            n_seeds: 10,
            resolution: 21,
            map_resolution: 51,
            input_range: PI,
            binary_runs: true,
            n_points: 500,
            radius: DEFAULT_RADIUS,
            train: TrainConfig::default(),
            output: None,
        }
    }
}

const KEYS: [&str; 16] = [
    "kind",
    "teacher",
    "students",
    "n_seeds",
    "resolution",
    "map_resolution",
    "input_range",
    "binary_runs",
    "n_points",
    "radius",
    "learning_rate",
    "epochs",
    "optimizer",
    "seed",
    "init_scale",
    "output",
];

fn value<T: FromStr>(line: usize, key: &str, raw: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    raw.parse::<T>()
        .map_err(|e| ConfigError::at(line, key, format!("malformed value `{raw}`: {e}")))
}

fn architecture(line: usize, key: &str, raw: &str) -> Result<Architecture, ConfigError> {
    raw.parse::<Architecture>()
        .map_err(|e| ConfigError::at(line, key, e.to_string()))
}

/// Parses and validates a config, filling defaults for absent keys.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = ExperimentConfig::default();
    let mut seen = HashSet::new();
    let mut lines = std::collections::HashMap::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, raw) = content
            .split_once('=')
            .ok_or_else(|| ConfigError::line(line, format!("expected `key = value`, got `{content}`")))?;
        let (key, raw) = (key.trim(), raw.trim());
        if !KEYS.contains(&key) {
            return Err(ConfigError::at(line, key, "unknown key"));
        }
        if !seen.insert(key.to_string()) {
            return Err(ConfigError::at(line, key, "key given twice"));
        }
        lines.insert(key, line);
        match key {
            "kind" => cfg.kind = value(line, key, raw)?,
            "teacher" => cfg.teacher = Some(architecture(line, key, raw)?),
            "students" => {
                cfg.students = raw
                    .split(',')
                    .map(|s| architecture(line, key, s.trim()))
                    .collect::<Result<_, _>>()?;
            }
            "n_seeds" => cfg.n_seeds = value(line, key, raw)?,
            "resolution" => cfg.resolution = value(line, key, raw)?,
            "map_resolution" => cfg.map_resolution = value(line, key, raw)?,
            "input_range" => cfg.input_range = value(line, key, raw)?,
            "binary_runs" => cfg.binary_runs = value(line, key, raw)?,
            "n_points" => cfg.n_points = value(line, key, raw)?,
            "radius" => cfg.radius = value(line, key, raw)?,
            "learning_rate" => cfg.train.learning_rate = value(line, key, raw)?,
            "epochs" => cfg.train.epochs = value(line, key, raw)?,
            "optimizer" => cfg.train.optimizer = value(line, key, raw)?,
            "seed" => cfg.train.seed = value(line, key, raw)?,
            "init_scale" => cfg.train.init_scale = value(line, key, raw)?,
            "output" => {
                if raw.is_empty() {
                    return Err(ConfigError::at(line, key, "empty path"));
                }
                cfg.output = Some(PathBuf::from(raw));
            }
            _ => unreachable!("key list checked above"),
        }
    }

    cfg.validate_with(|key| lines.get(key).copied())?;
    Ok(cfg)
}

impl ExperimentConfig {
    /// Checks cross-field constraints.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.validate_with(|_| None)
    }

    fn validate_with(&self, line_of: impl Fn(&str) -> Option<usize>) -> Result<(), ConfigError> {
        let err = |key: &str, msg: String| match line_of(key) {
            Some(line) => ConfigError::at(line, key, msg),
            None => ConfigError::key(key, msg),
        };
        let needs_pair = self.kind == ExperimentKind::TeacherStudent;
        if needs_pair {
            if self.teacher.is_none() {
                return Err(ConfigError::key("teacher", "missing required key"));
            }
            if self.students.is_empty() {
                return Err(ConfigError::key("students", "missing required key"));
            }
        } else if self.teacher.is_some() || !self.students.is_empty() {
            let key = if self.teacher.is_some() { "teacher" } else { "students" };
            return Err(err(key, format!("not used by `{}` experiments", self.kind.name())));
        }
        let mut names = HashSet::new();
        for s in &self.students {
            if !names.insert(s.name()) {
                return Err(err("students", format!("`{}` listed twice", s.name())));
            }
        }
        if self.n_seeds == 0 {
            return Err(err("n_seeds", "must be at least 1".into()));
        }
        if self.resolution < 2 {
            return Err(err("resolution", "must be at least 2".into()));
        }
        if self.map_resolution < 2 {
            return Err(err("map_resolution", "must be at least 2".into()));
        }
        if !(self.input_range.is_finite() && self.input_range >= 0.0) {
            return Err(err("input_range", "must be finite and non-negative".into()));
        }
        if self.n_points < 3 {
            return Err(err("n_points", "must be at least 3".into()));
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(err("radius", "must be finite and positive".into()));
        }
        self.train.validate().map_err(|e| {
            let key = if self.train.epochs == 0 {
                "epochs"
            } else if !(self.train.learning_rate > 0.0 && self.train.learning_rate.is_finite()) {
                "learning_rate"
            } else {
                "init_scale"
            };
            err(key, e.to_string())
        })
    }
}

/// Prints every key, so the output parses back to an equal config.
impl fmt::Display for ExperimentConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind = {}", self.kind.name())?;
        if let Some(t) = self.teacher {
            writeln!(f, "teacher = {t}")?;
        }
        if !self.students.is_empty() {
            let names: Vec<String> = self.students.iter().map(|s| s.name()).collect();
            writeln!(f, "students = {}", names.join(", "))?;
        }
        writeln!(f, "n_seeds = {}", self.n_seeds)?;
        writeln!(f, "resolution = {}", self.resolution)?;
        writeln!(f, "map_resolution = {}", self.map_resolution)?;
        writeln!(f, "input_range = {:?}", self.input_range)?;
        writeln!(f, "binary_runs = {}", self.binary_runs)?;
        writeln!(f, "n_points = {}", self.n_points)?;
        writeln!(f, "radius = {:?}", self.radius)?;
        writeln!(f, "learning_rate = {:?}", self.train.learning_rate)?;
        writeln!(f, "epochs = {}", self.train.epochs)?;
        writeln!(f, "optimizer = {}", self.train.optimizer.name())?;
        writeln!(f, "seed = {}", self.train.seed)?;
        writeln!(f, "init_scale = {:?}", self.train.init_scale)?;
        if let Some(out) = &self.output {
            writeln!(f, "output = {}", out.display())?;
        }
        Ok(())
    }
}
