//! Lloyd's k-means with random-point initialization.

use ndarray::{Array2, ArrayView2};
use rand::seq::SliceRandom;
use rand::Rng;

const MAX_ITERATIONS: usize = 300;
const MOVEMENT_TOL: f64 = 1e-6;

/// Fitted clustering: centroids plus the per-point assignment.
#[derive(Debug, Clone)]
pub struct KMeansFit {
    pub centroids: Array2<f64>,
    pub assignments: Vec<usize>,
}

/// Runs Lloyd iterations seeded by `k` distinct random data points.
///
/// Stops when no centroid moves more than 1e-6 or after 300 iterations.
/// Clusters that lose all points keep their previous centroid.
pub fn kmeans<R: Rng>(points: ArrayView2<'_, f64>, k: usize, rng: &mut R) -> KMeansFit {
    let n = points.nrows();
    let d = points.ncols();
    let k = k.min(n);
    assert!(k >= 1, "need at least one cluster");

    let mut indices: Vec<usize> = (0..n).collect();
    indices.shuffle(rng);
    let mut centroids = Array2::zeros((k, d));
    for (c, &i) in indices.iter().take(k).enumerate() {
        centroids.row_mut(c).assign(&points.row(i));
    }

    let mut assignments = vec![0usize; n];
    for _ in 0..MAX_ITERATIONS {
        for (i, point) in points.rows().into_iter().enumerate() {
            let mut best = 0usize;
            let mut best_d2 = f64::INFINITY;
            for c in 0..k {
                let d2: f64 = point
                    .iter()
                    .zip(centroids.row(c).iter())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                if d2 < best_d2 {
                    best_d2 = d2;
                    best = c;
                }
            }
            assignments[i] = best;
        }

        let mut sums = Array2::<f64>::zeros((k, d));
        let mut counts = vec![0usize; k];
        for (i, &c) in assignments.iter().enumerate() {
            let mut row = sums.row_mut(c);
            row += &points.row(i);
            counts[c] += 1;
        }
        let mut movement = 0.0f64;
        for c in 0..k {
            if counts[c] == 0 {
                continue;
            }
            let mut shift2 = 0.0;
            for j in 0..d {
                let new = sums[[c, j]] / counts[c] as f64;
                let delta = new - centroids[[c, j]];
                shift2 += delta * delta;
                centroids[[c, j]] = new;
            }
            movement = movement.max(shift2.sqrt());
        }
        if movement <= MOVEMENT_TOL {
            break;
        }
    }

    KMeansFit {
        centroids,
        assignments,
    }
}
