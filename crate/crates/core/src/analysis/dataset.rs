use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{seeding, Point};

/// `pi / sqrt(2)`: the disk covers about 39% of `[-pi, pi]^2`.
pub const DEFAULT_RADIUS: f64 = PI * FRAC_1_SQRT_2;

/// Uniform points in `[-pi, pi]^2`, labelled `-1` inside a centred disk and
/// `+1` outside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircularDataset {
    pub points: Vec<Point>,
    pub labels: Vec<f64>,
    pub radius: f64,
}

impl CircularDataset {
    pub fn label(point: Point, radius: f64) -> f64 {
        if point[0] * point[0] + point[1] * point[1] < radius * radius {
            -1.0
        } else {
            1.0
        }
    }

    pub fn from_points(points: Vec<Point>, radius: f64) -> Self {
        let labels = points.iter().map(|&p| Self::label(p, radius)).collect();
        CircularDataset { points, labels, radius }
    }

    /// Same points with every label negated.
    pub fn flipped_labels(&self) -> Vec<f64> {
        self.labels.iter().map(|l| -l).collect()
    }
}

pub fn circular_dataset(n: usize, radius: f64, seed: u64) -> Result<CircularDataset> {
    if n == 0 {
        return Err(Error::config("circular dataset needs at least one point"));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::config(format!("radius must be positive, got {radius}")));
    }
    let mut rng = seeding::rng(seed);
    let points = (0..n)
        .map(|_| [rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)])
        .collect();
    Ok(CircularDataset::from_points(points, radius))
}
