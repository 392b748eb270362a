use serde::{Deserialize, Serialize};

use super::dataset::CircularDataset;
use super::pca::{pca_2d, PcaProjection};
use crate::circuits::{encoding_gates, Encoding};
use crate::error::{Error, Result};
use crate::qsim::QuantumState;
use crate::Point;

/// `[p00, p01, p10, p11]` of the two data qubits after the encoding gates
/// alone, for every point.
pub fn encoding_probability_vectors(encoding: Encoding, points: &[Point]) -> Result<Vec<[f64; 4]>> {
    points
        .iter()
        .map(|&x| {
            let mut state = QuantumState::new(2)?;
            for g in encoding_gates(encoding, x) {
                state.apply(&g)?;
            }
            let p = state.probability_vector(&[0, 1])?;
            Ok([p[0], p[1], p[2], p[3]])
        })
        .collect()
}

/// Best accuracy of a linear threshold classifier on the 2-D projection.
///
/// Candidate directions are the Fisher discriminant and the raw centroid
/// difference; for each, every threshold between consecutive projected
/// points is tried in both orientations. The result is at least the
/// majority-class rate, so never below 0.5.
pub fn separability_score(projection: &PcaProjection, labels: &[f64]) -> Result<f64> {
    let points = &projection.projected;
    if points.len() != labels.len() {
        return Err(Error::structural(format!(
            "{} points but {} labels",
            points.len(),
            labels.len()
        )));
    }
    if points.is_empty() {
        return Err(Error::config("separability of an empty set"));
    }
    let class = |positive: bool| {
        points
            .iter()
            .zip(labels)
            .filter(move |(_, l)| (**l > 0.0) == positive)
            .map(|(p, _)| *p)
    };
    let n_pos = class(true).count();
    let n_neg = points.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Ok(1.0);
    }
    let centroid = |positive: bool, n: usize| {
        class(positive).fold([0.0; 2], |acc, p| [acc[0] + p[0] / n as f64, acc[1] + p[1] / n as f64])
    };
    let (mu_pos, mu_neg) = (centroid(true, n_pos), centroid(false, n_neg));
    let diff = [mu_pos[0] - mu_neg[0], mu_pos[1] - mu_neg[1]];

    // Pooled within-class scatter.
    let mut sw = [[0.0; 2]; 2];
    for (p, l) in points.iter().zip(labels) {
        let mu = if *l > 0.0 { mu_pos } else { mu_neg };
        let d = [p[0] - mu[0], p[1] - mu[1]];
        for i in 0..2 {
            for j in 0..2 {
                sw[i][j] += d[i] * d[j];
            }
        }
    }
    let ridge = 1e-12 * (sw[0][0] + sw[1][1]).max(1e-300);
    sw[0][0] += ridge;
    sw[1][1] += ridge;
    let det = sw[0][0] * sw[1][1] - sw[0][1] * sw[1][0];
    let fisher = [
        (sw[1][1] * diff[0] - sw[0][1] * diff[1]) / det,
        (-sw[1][0] * diff[0] + sw[0][0] * diff[1]) / det,
    ];

    let majority = n_pos.max(n_neg) as f64 / points.len() as f64;
    let best = [fisher, diff]
        .iter()
        .filter(|d| d[0].is_finite() && d[1].is_finite() && (d[0] != 0.0 || d[1] != 0.0))
        .map(|d| best_threshold_accuracy(points, labels, *d))
        .fold(majority, f64::max);
    Ok(best)
}

fn best_threshold_accuracy(points: &[[f64; 2]], labels: &[f64], direction: [f64; 2]) -> f64 {
    let mut scored: Vec<(f64, bool)> = points
        .iter()
        .zip(labels)
        .map(|(p, l)| (p[0] * direction[0] + p[1] * direction[1], *l > 0.0))
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = scored.len();
    let total_pos = scored.iter().filter(|s| s.1).count();
    // Predict positive above the threshold; `pos_below` counts positives at or below it.
    let mut pos_below = 0;
    let mut best = total_pos.max(n - total_pos);
    for k in 0..n {
        if scored[k].1 {
            pos_below += 1;
        }
        if k + 1 < n && scored[k].0 == scored[k + 1].0 {
            continue;
        }
        let below = k + 1;
        let neg_below = below - pos_below;
        let pos_above = total_pos - pos_below;
        let correct = neg_below + pos_above;
        best = best.max(correct).max(n - correct);
    }
    best as f64 / n as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodingReport {
    pub encoding: Encoding,
    pub probabilities: Vec<[f64; 4]>,
    pub projection: PcaProjection,
    pub separability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodingStudy {
    pub data: CircularDataset,
    pub rx: EncodingReport,
    pub roth: EncodingReport,
}

/// Probability vectors, PCA and separability for both encodings of `data`.
pub fn encoding_study(data: &CircularDataset) -> Result<EncodingStudy> {
    let report = |encoding| -> Result<EncodingReport> {
        let probabilities = encoding_probability_vectors(encoding, &data.points)?;
        let projection = pca_2d(&probabilities)?;
        let separability = separability_score(&projection, &data.labels)?;
        Ok(EncodingReport {
            encoding,
            probabilities,
            projection,
            separability,
        })
    };
    Ok(EncodingStudy {
        data: data.clone(),
        rx: report(Encoding::RxAngle)?,
        roth: report(Encoding::RotH)?,
    })
}
