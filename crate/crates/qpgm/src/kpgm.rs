//! Kernelized PGM classifier computed entirely from inner products.
//!
//! Instead of lifting states into the (d+1)^m-dimensional tensor space, the
//! model works with the N×N power-kernel Gram matrix G_ij = (x_i·x_j)^m and
//! its pseudoinverse square root. A query z scores class k as
//! Σ_{i∈C_k} v_i² with v = G^{-1/2} w and w_i = (x_i·z)^m, which coincides
//! with the PGM class scores whenever the encoded query lies in the span of
//! the encoded training states. Fit cost depends on N only; no m-fold tensor
//! is ever materialized.

use crate::encoding::{self, EncodingConfig, StateVector};
use crate::error::{Error, Result};
use crate::pgm::{self, argmax_label};
use ndarray::{Array1, Array2, ArrayView2};
use serde::{Deserialize, Serialize};

/// The fitted kernel model: encoded training states, class index sets, and
/// the Gram pseudoinverse square root.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GramModel {
    /// Encoded training states, one row per sample.
    training_states: Array2<f64>,
    labels: Vec<usize>,
    class_index_sets: Vec<Vec<usize>>,
    power: usize,
    gram_inv_sqrt: Array2<f64>,
    rank_tolerance: f64,
    encoding: EncodingConfig,
    input_dim: usize,
}

impl GramModel {
    pub fn training_states(&self) -> ArrayView2<'_, f64> {
        self.training_states.view()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_index_sets(&self) -> &[Vec<usize>] {
        &self.class_index_sets
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn gram_inv_sqrt(&self) -> ArrayView2<'_, f64> {
        self.gram_inv_sqrt.view()
    }

    pub fn rank_tolerance(&self) -> f64 {
        self.rank_tolerance
    }

    pub fn encoding(&self) -> &EncodingConfig {
        &self.encoding
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn n_classes(&self) -> usize {
        self.class_index_sets.len()
    }

    pub fn n_samples(&self) -> usize {
        self.training_states.nrows()
    }
}

/// Per-class probabilities, the argmax label, and how much of the encoded
/// query lies inside the training span (1 means fully in span).
#[derive(Debug, Clone, PartialEq)]
pub struct KpgmPrediction {
    pub class_scores: Vec<f64>,
    pub label: usize,
    pub span_coverage: f64,
}

/// Power-kernel Gram matrix G_ij = (x_i·x_j)^m for unit states.
pub fn power_gram(states: ArrayView2<'_, f64>, m: usize) -> Array2<f64> {
    assert!(m >= 1, "kernel power must be at least 1");
    let mut gram = states.dot(&states.t());
    if m > 1 {
        gram.mapv_inplace(|g| g.powi(m as i32));
    }
    gram
}

/// Encodes rows and fits the kernelized PGM at power `m`.
pub fn fit_kpgm(
    features: ArrayView2<'_, f64>,
    labels: &[usize],
    m: usize,
    cfg: EncodingConfig,
    rank_tolerance: Option<f64>,
) -> Result<GramModel> {
    assert_eq!(features.nrows(), labels.len());
    assert!(!labels.is_empty(), "need at least one sample");
    let n = features.nrows();
    let d = features.ncols();

    let mut states = Array2::zeros((n, d + 1));
    for (i, row) in features.rows().into_iter().enumerate() {
        let psi = encoding::encode(row.as_slice().expect("contiguous row"), &cfg);
        states.row_mut(i).assign(&psi.amplitudes());
    }

    let n_classes = labels.iter().max().map_or(0, |&l| l + 1);
    let mut class_index_sets: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
    for (i, &label) in labels.iter().enumerate() {
        class_index_sets[label].push(i);
    }
    for (class, set) in class_index_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(Error::EmptyClass { class });
        }
    }

    let gram = power_gram(states.view(), m);
    let tol = rank_tolerance.unwrap_or_else(|| pgm::default_rank_tolerance(n));
    let (gram_inv_sqrt, _kernel) = pgm::psd_inv_sqrt(gram.view(), tol)?;

    Ok(GramModel {
        training_states: states,
        labels: labels.to_vec(),
        class_index_sets,
        power: m,
        gram_inv_sqrt,
        rank_tolerance: tol,
        encoding: cfg,
        input_dim: d,
    })
}

/// Scores a query: encode, take powered overlaps w, rotate by G^{-1/2},
/// and sum squared coordinates per class.
pub fn kpgm_predict(model: &GramModel, z: &[f64]) -> Result<KpgmPrediction> {
    if z.len() != model.input_dim {
        return Err(Error::DimensionMismatch {
            expected: model.input_dim,
            got: z.len(),
        });
    }
    let psi = encoding::encode(z, &model.encoding);
    Ok(kpgm_predict_state(model, &psi))
}

/// Scores an already-encoded unit state.
pub fn kpgm_predict_state(model: &GramModel, psi: &StateVector) -> KpgmPrediction {
    let mut w: Array1<f64> = model.training_states.dot(&psi.amplitudes());
    if model.power > 1 {
        w.mapv_inplace(|o| o.powi(model.power as i32));
    }
    let v = model.gram_inv_sqrt.dot(&w);
    let class_scores: Vec<f64> = model
        .class_index_sets
        .iter()
        .map(|set| set.iter().map(|&i| v[i] * v[i]).sum())
        .collect();
    let span_coverage = class_scores.iter().sum();
    let label = argmax_label(&class_scores);
    KpgmPrediction {
        class_scores,
        label,
        span_coverage,
    }
}

/// Scores many queries at once via batched matrix products.
pub fn kpgm_predict_batch(
    model: &GramModel,
    queries: ArrayView2<'_, f64>,
) -> Result<Vec<KpgmPrediction>> {
    if queries.ncols() != model.input_dim {
        return Err(Error::DimensionMismatch {
            expected: model.input_dim,
            got: queries.ncols(),
        });
    }
    let n = queries.nrows();
    let q = model.training_states.ncols();
    let mut encoded = Array2::zeros((n, q));
    for (i, row) in queries.rows().into_iter().enumerate() {
        let psi = encoding::encode(row.as_slice().expect("contiguous row"), &model.encoding);
        encoded.row_mut(i).assign(&psi.amplitudes());
    }
    let mut w = encoded.dot(&model.training_states.t());
    if model.power > 1 {
        w.mapv_inplace(|o| o.powi(model.power as i32));
    }
    let v = w.dot(&model.gram_inv_sqrt.t());
    Ok((0..n)
        .map(|i| {
            let row = v.row(i);
            let class_scores: Vec<f64> = model
                .class_index_sets
                .iter()
                .map(|set| set.iter().map(|&j| row[j] * row[j]).sum())
                .collect();
            let span_coverage = class_scores.iter().sum();
            let label = argmax_label(&class_scores);
            KpgmPrediction {
                class_scores,
                label,
                span_coverage,
            }
        })
        .collect())
}

/// Fraction of queries where the kPGM label at each requested power agrees
/// with the 1-nearest-neighbor rule by maximal absolute encoded overlap.
///
/// Returns one agreement fraction per entry of `powers`.
pub fn nn_limit_agreement(
    features: ArrayView2<'_, f64>,
    labels: &[usize],
    queries: ArrayView2<'_, f64>,
    powers: &[usize],
    cfg: EncodingConfig,
) -> Result<Vec<f64>> {
    let models: Vec<GramModel> = powers
        .iter()
        .map(|&m| fit_kpgm(features, labels, m, cfg, None))
        .collect::<Result<_>>()?;
    let states = models[0].training_states();

    let mut agreements = vec![0usize; powers.len()];
    for query in queries.rows() {
        let psi = encoding::encode(query.as_slice().expect("contiguous row"), &cfg);
        let overlaps = states.dot(&psi.amplitudes());
        let mut nn = 0usize;
        for (i, o) in overlaps.iter().enumerate() {
            if o.abs() > overlaps[nn].abs() {
                nn = i;
            }
        }
        let nn_label = labels[nn];
        for (slot, model) in models.iter().enumerate() {
            let pred = kpgm_predict_state(model, &psi);
            if pred.label == nn_label {
                agreements[slot] += 1;
            }
        }
    }
    Ok(agreements
        .into_iter()
        .map(|a| a as f64 / queries.nrows() as f64)
        .collect())
}
