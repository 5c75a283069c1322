//! Principal component analysis via the covariance eigendecomposition.

use crate::error::{Error, Result};
use crate::linalg;
use ndarray::{Array1, Array2, ArrayView2, Axis};
use serde::{Deserialize, Serialize};

/// A fitted projection: column means plus orthonormal components sorted by
/// descending explained variance. Each component's sign is fixed so its
/// largest-magnitude entry is positive.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PcaModel {
    mean: Array1<f64>,
    /// One component per row.
    components: Array2<f64>,
    explained_variance: Array1<f64>,
    explained_variance_ratio: Array1<f64>,
}

impl PcaModel {
    pub fn components(&self) -> ArrayView2<'_, f64> {
        self.components.view()
    }

    pub fn mean(&self) -> &Array1<f64> {
        &self.mean
    }

    pub fn explained_variance(&self) -> &Array1<f64> {
        &self.explained_variance
    }

    pub fn explained_variance_ratio(&self) -> &Array1<f64> {
        &self.explained_variance_ratio
    }

    pub fn n_components(&self) -> usize {
        self.components.nrows()
    }

    /// Projects rows onto the fitted components.
    pub fn transform(&self, data: ArrayView2<'_, f64>) -> Result<Array2<f64>> {
        if data.ncols() != self.mean.len() {
            return Err(Error::DimensionMismatch {
                expected: self.mean.len(),
                got: data.ncols(),
            });
        }
        let centered = &data - &self.mean;
        Ok(centered.dot(&self.components.t()))
    }
}

/// Fits the top `n_components` principal directions of the sample
/// covariance (n − 1 convention).
pub fn pca_fit(data: ArrayView2<'_, f64>, n_components: usize) -> Result<PcaModel> {
    let (n, d) = data.dim();
    if n_components > n.min(d) {
        return Err(Error::Dimension(format!(
            "cannot extract {n_components} components from {n} samples x {d} features"
        )));
    }
    if n < 2 {
        return Err(Error::Dimension("PCA needs at least 2 samples".into()));
    }

    let mean = data.mean_axis(Axis(0)).expect("n >= 2");
    let centered = &data - &mean;
    let covariance = centered.t().dot(&centered) / (n as f64 - 1.0);
    let (w, v) = linalg::eigh_sym(covariance.view());

    let total_variance: f64 = w.iter().map(|&x| x.max(0.0)).sum();
    let mut components = Array2::zeros((n_components, d));
    let mut explained = Array1::zeros(n_components);
    for k in 0..n_components {
        // Eigenvalues ascend, so take from the back.
        let src = d - 1 - k;
        let mut comp = v.column(src).to_owned();
        // Deterministic sign: largest-magnitude entry positive.
        let mut pivot = 0usize;
        for (i, &x) in comp.iter().enumerate() {
            if x.abs() > comp[pivot].abs() {
                pivot = i;
            }
        }
        if comp[pivot] < 0.0 {
            comp.mapv_inplace(|x| -x);
        }
        components.row_mut(k).assign(&comp);
        explained[k] = w[src].max(0.0);
    }
    let ratio = if total_variance > 0.0 {
        &explained / total_variance
    } else {
        Array1::zeros(n_components)
    };

    Ok(PcaModel {
        mean,
        components,
        explained_variance: explained,
        explained_variance_ratio: ratio,
    })
}
