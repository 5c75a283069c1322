//! Exact k-nearest-neighbor search by full distance scan.

use ndarray::ArrayView2;

/// For each row, the indices of its `k` nearest rows by Euclidean distance,
/// self excluded, nearest first. Distance ties break toward the lower index.
pub fn k_nearest(points: ArrayView2<'_, f64>, k: usize) -> Vec<Vec<usize>> {
    let n = points.nrows();
    assert!(k < n, "k must be smaller than the number of points");
    let mut neighbors = Vec::with_capacity(n);
    for i in 0..n {
        let mut dists: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| {
                let d2: f64 = points
                    .row(i)
                    .iter()
                    .zip(points.row(j).iter())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                (d2, j)
            })
            .collect();
        dists.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        neighbors.push(dists.iter().take(k).map(|&(_, j)| j).collect());
    }
    neighbors
}
