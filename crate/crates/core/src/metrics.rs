//! Prediction maps, relative entropy between maps, and accuracy.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::circuits::CircuitSpec;
use crate::error::{Error, Result};
use crate::teacher_student::make_grid;
use crate::training::{binarize, predictions};

/// Offset added to every shifted prediction before renormalizing, so a map
/// saturated at -1 never produces `ln 0`.
pub const NORMALIZATION_FLOOR: f64 = 1e-9;

/// Model outputs on a square grid. `values[row * resolution + col]` is the
/// prediction at `x1 = coord(col)`, `x2 = coord(row)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionMap {
    pub resolution: usize,
    pub lo: f64,
    pub hi: f64,
    pub values: Vec<f64>,
}

impl PredictionMap {
    pub fn new(resolution: usize, lo: f64, hi: f64, values: Vec<f64>) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::config(format!(
                "map resolution must be at least 2, got {resolution}"
            )));
        }
        if values.len() != resolution * resolution {
            return Err(Error::structural(format!(
                "{} values for a {resolution}x{resolution} map",
                values.len()
            )));
        }
        Ok(PredictionMap {
            resolution,
            lo,
            hi,
            values,
        })
    }

    /// Grid coordinate of row/column index `i`.
    pub fn coord(&self, i: usize) -> f64 {
        grid_coord(self.lo, self.hi, self.resolution, i)
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.resolution + col]
    }

    fn same_grid(&self, other: &PredictionMap) -> bool {
        self.resolution == other.resolution && self.lo == other.lo && self.hi == other.hi
    }

    /// CSV matrix. The header row holds the `x1` coordinates, the first column
    /// the `x2` coordinate of each row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x2\\x1");
        for j in 0..self.resolution {
            let _ = write!(out, ",{}", self.coord(j));
        }
        out.push('\n');
        for i in 0..self.resolution {
            let _ = write!(out, "{}", self.coord(i));
            for j in 0..self.resolution {
                let _ = write!(out, ",{}", self.get(i, j));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::structural("empty map CSV"))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::structural(format!("bad number `{s}` in map CSV")))
        };
        let coords: Vec<f64> = header.split(',').skip(1).map(parse).collect::<Result<_>>()?;
        let resolution = coords.len();
        let mut values = Vec::with_capacity(resolution * resolution);
        for line in lines {
            let row: Vec<f64> = line.split(',').skip(1).map(parse).collect::<Result<_>>()?;
            if row.len() != resolution {
                return Err(Error::structural("ragged map CSV"));
            }
            values.extend(row);
        }
        let lo = *coords
            .first()
            .ok_or_else(|| Error::structural("map CSV has no columns"))?;
        PredictionMap::new(resolution, lo, coords[resolution - 1], values)
    }
}

pub(crate) fn grid_coord(lo: f64, hi: f64, resolution: usize, i: usize) -> f64 {
    if i + 1 == resolution {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (resolution - 1) as f64
    }
}

/// Evaluates the model at every node of a `resolution x resolution` grid on `[lo, hi]^2`.
pub fn prediction_map(circuit: &CircuitSpec, w: &[f64], resolution: usize, lo: f64, hi: f64) -> Result<PredictionMap> {
    let grid = make_grid(resolution, lo, hi)?;
    let values = predictions(circuit, w, &grid)?;
    PredictionMap::new(resolution, lo, hi, values)
}

/// Shifts predictions from `[-1, 1]` to positive weights and renormalizes:
/// `p_i = (y_i + 1 + eps) / sum_j (y_j + 1 + eps)`.
pub fn normalize_to_distribution(values: &[f64]) -> Vec<f64> {
    let shifted: Vec<f64> = values.iter().map(|y| y + 1.0 + NORMALIZATION_FLOOR).collect();
    let total: f64 = shifted.iter().sum();
    shifted.into_iter().map(|v| v / total).collect()
}

/// `S(P || Q) = sum_i p_i ln(p_i / q_i)` for two probability vectors.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::structural(format!(
            "distributions of length {} and {}",
            p.len(),
            q.len()
        )));
    }
    Ok(p.iter()
        .zip(q)
        .filter(|(pi, _)| **pi > 0.0)
        .map(|(pi, qi)| pi * (pi / qi).ln())
        .sum())
}

/// Relative entropy between two prediction maps on the same grid, with the
/// teacher as `P` and the student as `Q`.
pub fn relative_entropy(teacher: &PredictionMap, student: &PredictionMap) -> Result<f64> {
    if !teacher.same_grid(student) {
        return Err(Error::structural("prediction maps are on different grids"));
    }
    kl_divergence(
        &normalize_to_distribution(&teacher.values),
        &normalize_to_distribution(&student.values),
    )
}

/// Fraction of predictions whose sign matches the `±1` label.
pub fn accuracy(predictions: &[f64], labels: &[f64]) -> Result<f64> {
    if predictions.len() != labels.len() {
        return Err(Error::structural(format!(
            "{} predictions but {} labels",
            predictions.len(),
            labels.len()
        )));
    }
    if predictions.is_empty() {
        return Err(Error::config("accuracy of an empty set"));
    }
    let hits = predictions
        .iter()
        .zip(labels)
        .filter(|(p, l)| binarize(**p) == binarize(**l))
        .count();
    Ok(hits as f64 / predictions.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{build, Architecture};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn map(values: Vec<f64>) -> PredictionMap {
        let r = (values.len() as f64).sqrt() as usize;
        PredictionMap::new(r, -1.0, 1.0, values).unwrap()
    }

    #[test]
    fn normalization_examples() {
        for p in normalize_to_distribution(&[0.0; 4]) {
            assert_abs_diff_eq!(p, 0.25, epsilon = 1e-15);
        }
        for p in normalize_to_distribution(&[-1.0; 4]) {
            assert_abs_diff_eq!(p, 0.25, epsilon = 1e-15);
        }
        let p = normalize_to_distribution(&[-1.0, 1.0, 0.3, -0.9]);
        assert!(p.iter().all(|&v| v > 0.0));
        assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn relative_entropy_examples() {
        let a = map(vec![0.2, -0.4, 0.9, -1.0]);
        assert!(relative_entropy(&a, &a).unwrap().abs() < 1e-12);
        assert!(relative_entropy(&map(vec![0.3; 4]), &map(vec![-0.6; 4])).unwrap().abs() < 1e-12);
        let s = kl_divergence(&[0.5, 0.5], &[0.25, 0.75]).unwrap();
        assert_abs_diff_eq!(s, 0.5 * 2f64.ln() + 0.5 * (2.0f64 / 3.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(s, 0.143841036, epsilon = 1e-9);
    }

    #[test]
    fn relative_entropy_direction_is_teacher_first() {
        let t = map(vec![1.0, -1.0, 0.0, 0.5]);
        let s = map(vec![0.0, 0.0, 0.0, 0.0]);
        let pt = normalize_to_distribution(&t.values);
        let ps = normalize_to_distribution(&s.values);
        assert_abs_diff_eq!(relative_entropy(&t, &s).unwrap(), kl_divergence(&pt, &ps).unwrap());
        assert!((relative_entropy(&t, &s).unwrap() - relative_entropy(&s, &t).unwrap()).abs() > 1e-3);
    }

    #[test]
    fn grid_mismatch_is_structural() {
        let a = map(vec![0.0; 4]);
        let b = map(vec![0.0; 9]);
        assert!(matches!(relative_entropy(&a, &b), Err(Error::Structural(_))));
        let c = PredictionMap::new(2, -2.0, 2.0, vec![0.0; 4]).unwrap();
        assert!(relative_entropy(&a, &c).is_err());
    }

    #[test]
    fn accuracy_examples() {
        assert_eq!(accuracy(&[1.0, -1.0, 1.0], &[1.0, -1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(accuracy(&[-0.5, 0.2], &[1.0, -1.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(accuracy(&[0.3, -0.2, 0.9], &[1.0, 1.0, 1.0]).unwrap(), 2.0 / 3.0);
        assert!(matches!(accuracy(&[0.1], &[1.0, 1.0]), Err(Error::Structural(_))));
    }

    #[test]
    fn prediction_map_of_zero_params() {
        let c = build(Architecture::dissipative_qp());
        let m = prediction_map(&c, &[0.0; 12], 3, -1.0, 1.0).unwrap();
        assert_abs_diff_eq!(m.get(1, 1), 1.0, epsilon = 1e-12);
        assert_eq!(m.coord(0), -1.0);
        assert_eq!(m.coord(2), 1.0);
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let c = build(Architecture::reuploading(2));
        let w: Vec<f64> = (0..24).map(|i| 0.37 * i as f64).collect();
        let m = prediction_map(&c, &w, 7, -std::f64::consts::PI, std::f64::consts::PI).unwrap();
        let back = PredictionMap::from_csv(&m.to_csv()).unwrap();
        assert_eq!(back, m);
        let lines: Vec<_> = m.to_csv().lines().map(|l| l.split(',').count()).collect();
        assert!(lines.iter().all(|&n| n == 8));
    }

    proptest! {
        #[test]
        fn gibbs_inequality(a in proptest::collection::vec(-1.0f64..=1.0, 16), b in proptest::collection::vec(-1.0f64..=1.0, 16)) {
            prop_assert!(relative_entropy(&map(a), &map(b)).unwrap() >= -1e-15);
        }

        #[test]
        fn accuracy_only_sees_signs(p in proptest::collection::vec(-1.0f64..1.0, 1..40), scale in 1e-3f64..1e3) {
            let labels: Vec<f64> = p.iter().enumerate().map(|(i, _)| if i % 3 == 0 { 1.0 } else { -1.0 }).collect();
            let scaled: Vec<f64> = p.iter().map(|v| v * scale).collect();
            prop_assert_eq!(accuracy(&p, &labels).unwrap(), accuracy(&scaled, &labels).unwrap());
        }
    }
}
