use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DIM: usize = 4;

/// Two-component PCA of 4-D rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaProjection {
    pub mean: [f64; DIM],
    /// Orthonormal principal axes, largest variance first.
    pub components: [[f64; DIM]; 2],
    /// Centred rows projected onto `components`.
    pub projected: Vec<[f64; 2]>,
    pub explained_variance: [f64; 2],
    /// All four covariance eigenvalues, descending.
    pub eigenvalues: [f64; DIM],
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues descending and the matching eigenvectors as rows.
pub fn symmetric_eigen(matrix: [[f64; DIM]; DIM]) -> ([f64; DIM], [[f64; DIM]; DIM]) {
    let mut a = matrix;
    let mut v = [[0.0; DIM]; DIM];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..DIM)
            .flat_map(|i| (0..DIM).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = (0..DIM).map(|i| a[i][i] * a[i][i]).sum::<f64>() + off;
        if off <= 1e-32 * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..DIM {
            for q in p + 1..DIM {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                let (row_p, row_q) = (a[p], a[q]);
                for k in 0..DIM {
                    a[p][k] = c * row_p[k] - s * row_q[k];
                    a[q][k] = s * row_p[k] + c * row_q[k];
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..DIM).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let mut values = [0.0; DIM];
    let mut vectors = [[0.0; DIM]; DIM];
    for (k, &i) in order.iter().enumerate() {
        values[k] = a[i][i];
        for r in 0..DIM {
            vectors[k][r] = v[r][i];
        }
        // Sign convention: largest-magnitude entry positive.
        let pivot = vectors[k]
            .iter()
            .copied()
            .fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        if pivot < 0.0 {
            vectors[k].iter_mut().for_each(|x| *x = -*x);
        }
    }
    (values, vectors)
}

/// Sample covariance (divisor `n - 1`) of 4-D rows and their mean.
pub(crate) fn covariance(rows: &[[f64; DIM]]) -> ([f64; DIM], [[f64; DIM]; DIM]) {
    let n = rows.len() as f64;
    let mut mean = [0.0; DIM];
    for r in rows {
        for k in 0..DIM {
            mean[k] += r[k] / n;
        }
    }
    let mut cov = [[0.0; DIM]; DIM];
    for r in rows {
        for i in 0..DIM {
            for j in 0..DIM {
                cov[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]);
            }
        }
    }
    cov.iter_mut().flatten().for_each(|c| *c /= n - 1.0);
    (mean, cov)
}

/// Projects 4-D rows onto their two leading principal axes.
pub fn pca_2d(rows: &[[f64; DIM]]) -> Result<PcaProjection> {
    if rows.len() < 3 {
        return Err(Error::config(format!("PCA needs at least 3 rows, got {}", rows.len())));
    }
    let (mean, cov) = covariance(rows);
    let (mut eigenvalues, vectors) = symmetric_eigen(cov);
    // Round-off can leave tiny negative variances on rank-deficient data.
    eigenvalues.iter_mut().for_each(|e| *e = e.max(0.0));
    let components = [vectors[0], vectors[1]];
    let projected = rows
        .iter()
        .map(|r| {
            let mut out = [0.0; 2];
            for (o, comp) in out.iter_mut().zip(&components) {
                *o = (0..DIM).map(|k| (r[k] - mean[k]) * comp[k]).sum();
            }
            out
        })
        .collect();
    Ok(PcaProjection {
        mean,
        components,
        projected,
        explained_variance: [eigenvalues[0], eigenvalues[1]],
        eigenvalues,
    })
}
