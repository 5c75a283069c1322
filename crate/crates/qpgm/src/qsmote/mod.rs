//! Quantum-inspired minority oversampling.
//!
//! Four generators share one interpolation primitive. The base variant
//! interpolates between random minority pairs; the KNN variant restricts the
//! partner to one of the k nearest minority neighbors; the fidelity variant
//! steps from a minority point toward its cluster centroid, scaled by a
//! fidelity similarity; the margin variant generates with one of the other
//! three and keeps only samples a probabilistic filter classifies away from
//! the decision boundary.
//!
//! The interpolation weight λ models a simulated swap test: the exact state
//! fidelity of the two amplitude-encoded endpoints is estimated from a
//! binomially sampled shot count, and λ is the normalized angle
//! arccos(√F̂)/(π/2).

pub mod kmeans;
pub mod knn;
pub mod logistic;

use crate::dataset::Dataset;
use crate::encoding::{self, EncodingConfig};
use crate::error::{Error, Result};
use ndarray::{Array1, Array2, ArrayView1};
use rand::{Rng, RngExt, SeedableRng};
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::io::Write;
use std::path::Path;

pub use logistic::LogisticModel;

/// Which oversampling variant to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Base,
    Knn,
    Fidelity,
    Margin,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::Base => write!(f, "qsmote"),
            Variant::Knn => write!(f, "knn-qsmote"),
            Variant::Fidelity => write!(f, "fidelity-qsmote"),
            Variant::Margin => write!(f, "margin-qsmote"),
        }
    }
}

/// Candidate generator the margin filter sits on top of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseVariant {
    Base,
    Knn,
    Fidelity,
}

/// How the interpolation weight λ is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaPolicy {
    /// Shot-sampled swap-test angle (the default).
    AngleShots,
    /// λ ~ Uniform(0, 1).
    Uniform,
}

/// Resampling configuration. Defaults follow the evaluated setup:
/// 5 neighbors, 3 clusters, margin 0.1, 1024 shots.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResampleConfig {
    pub variant: Variant,
    pub k_neighbors: usize,
    pub n_clusters: usize,
    pub margin: f64,
    pub base_for_margin: BaseVariant,
    pub shots: u64,
    pub lambda_policy: LambdaPolicy,
    pub step: f64,
    pub seed: u64,
}

impl Default for ResampleConfig {
    fn default() -> Self {
        Self {
            variant: Variant::Base,
            k_neighbors: 5,
            n_clusters: 3,
            margin: 0.1,
            base_for_margin: BaseVariant::Base,
            shots: 1024,
            lambda_policy: LambdaPolicy::AngleShots,
            step: 1.0,
            seed: 0,
        }
    }
}

impl ResampleConfig {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            ..Self::default()
        }
    }

    #[must_use]
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Why a synthetic sample deviated from the plain generation recipe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleFlag {
    /// Minority had one sample; the point is a duplicate of it.
    DegenerateMinority,
    /// The minority point coincides with its cluster centroid.
    AtCentroid,
    /// A zero-norm endpoint made the fidelity weight undefined; 0 was used.
    ZeroVector,
}

/// Per-sample generation record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleProvenance {
    pub variant: Variant,
    /// Dataset row index of the anchor minority point.
    pub parent_a: usize,
    /// Dataset row index of the partner point, for pairwise variants.
    pub parent_b: Option<usize>,
    /// Cluster index of the guiding centroid, for the fidelity variant.
    pub centroid: Option<usize>,
    pub lambda: f64,
    pub fidelity_weight: Option<f64>,
    pub filter_probability: Option<f64>,
    pub flags: Vec<SampleFlag>,
}

/// Generated samples plus everything needed to audit them.
#[derive(Debug, Clone)]
pub struct SyntheticBatch {
    pub samples: Array2<f64>,
    pub provenance: Vec<SampleProvenance>,
    /// Cluster centroids used by the fidelity variant.
    pub centroids: Option<Array2<f64>>,
    /// The margin filter, retained so kept samples can be re-validated.
    pub filter: Option<LogisticModel>,
    /// Set when the margin variant hit its attempt cap before reaching the
    /// requested count.
    pub underfilled: bool,
}

impl SyntheticBatch {
    fn empty(n_features: usize) -> Self {
        Self {
            samples: Array2::zeros((0, n_features)),
            provenance: Vec::new(),
            centroids: None,
            filter: None,
            underfilled: false,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Writes one JSON record per synthetic row, atomically.
    pub fn write_provenance_jsonl(&self, path: &Path) -> Result<()> {
        let tmp = crate::dataset::temp_sibling(path);
        {
            let mut f = fs::File::create(&tmp)?;
            for record in &self.provenance {
                serde_json::to_writer(&mut f, record)?;
                f.write_all(b"\n")?;
            }
            f.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Swap-test-modeled interpolation weight in [0, 1].
///
/// Under the shot policy both points are amplitude encoded, the exact
/// fidelity F = (ψ_a·ψ_b)² is perturbed by Binomial(shots, (1+F)/2)
/// sampling, and λ = arccos(√F̂)/(π/2). Identical points push λ toward 0,
/// orthogonal states toward 1.
pub fn sample_lambda<R: Rng>(
    x_a: ArrayView1<'_, f64>,
    x_b: ArrayView1<'_, f64>,
    cfg: &ResampleConfig,
    rng: &mut R,
) -> f64 {
    match cfg.lambda_policy {
        LambdaPolicy::Uniform => rng.random_range(0.0..1.0),
        LambdaPolicy::AngleShots => {
            let enc = EncodingConfig::default();
            let a = encoding::encode(x_a.as_slice().expect("contiguous"), &enc);
            let b = encoding::encode(x_b.as_slice().expect("contiguous"), &enc);
            let overlap = a.overlap(&b);
            let fidelity = (overlap * overlap).clamp(0.0, 1.0);
            let p = (1.0 + fidelity) / 2.0;
            let hits = Binomial::new(cfg.shots, p.clamp(0.0, 1.0))
                .expect("valid binomial parameters")
                .sample(rng);
            let f_hat = (2.0 * hits as f64 / cfg.shots as f64 - 1.0).max(0.0);
            (f_hat.sqrt().acos() / FRAC_PI_2).clamp(0.0, 1.0)
        }
    }
}

/// Fidelity-inspired similarity F(x, c) = (x·c / (‖x‖‖c‖))².
pub fn fidelity_similarity(x: ArrayView1<'_, f64>, c: ArrayView1<'_, f64>) -> Result<f64> {
    let nx = x.dot(&x).sqrt();
    let nc = c.dot(&c).sqrt();
    if nx == 0.0 || nc == 0.0 {
        return Err(Error::ZeroVector);
    }
    let cos = x.dot(&c) / (nx * nc);
    Ok((cos * cos).min(1.0))
}

/// x_i + λ (x_j − x_i).
pub(crate) fn interpolate(
    x_i: ArrayView1<'_, f64>,
    x_j: ArrayView1<'_, f64>,
    lambda: f64,
) -> Array1<f64> {
    let mut out = x_i.to_owned();
    out.zip_mut_with(&x_j, |a, &b| *a += lambda * (b - *a));
    out
}

/// Rows of the minority class, defined as the label with fewer samples
/// (ties go to label 1).
fn minority_split(data: &Dataset) -> Result<(usize, Vec<usize>, usize)> {
    let (zeros, ones) = data.binary_counts()?;
    let minority_label = if ones <= zeros { 1 } else { 0 };
    let indices: Vec<usize> = data
        .labels
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == minority_label)
        .map(|(i, _)| i)
        .collect();
    let majority_count = zeros.max(ones);
    Ok((minority_label, indices, majority_count))
}

/// Per-variant state prepared once, then sampled repeatedly.
enum Generator {
    Base,
    Knn {
        /// Neighbor lists among minority rows, in minority-local indices.
        neighbors: Vec<Vec<usize>>,
    },
    Fidelity {
        centroids: Array2<f64>,
        /// Cluster assignment per dataset row.
        assignments: Vec<usize>,
    },
}

impl Generator {
    fn prepare<R: Rng>(
        variant: BaseVariant,
        data: &Dataset,
        minority: &[usize],
        cfg: &ResampleConfig,
        rng: &mut R,
    ) -> Result<Self> {
        match variant {
            BaseVariant::Base => Ok(Generator::Base),
            BaseVariant::Knn => {
                if minority.len() <= cfg.k_neighbors {
                    return Err(Error::InsufficientMinority {
                        count: minority.len(),
                        k: cfg.k_neighbors,
                    });
                }
                let minority_points = data.features.select(ndarray::Axis(0), minority);
                let neighbors = knn::k_nearest(minority_points.view(), cfg.k_neighbors);
                Ok(Generator::Knn { neighbors })
            }
            BaseVariant::Fidelity => {
                let fit = kmeans::kmeans(data.features.view(), cfg.n_clusters, rng);
                Ok(Generator::Fidelity {
                    centroids: fit.centroids,
                    assignments: fit.assignments,
                })
            }
        }
    }

    fn variant(&self) -> Variant {
        match self {
            Generator::Base => Variant::Base,
            Generator::Knn { .. } => Variant::Knn,
            Generator::Fidelity { .. } => Variant::Fidelity,
        }
    }

    fn draw<R: Rng>(
        &self,
        data: &Dataset,
        minority: &[usize],
        cfg: &ResampleConfig,
        rng: &mut R,
    ) -> (Array1<f64>, SampleProvenance) {
        let m = minority.len();
        let variant = self.variant();
        match self {
            Generator::Base | Generator::Knn { .. } => {
                if m == 1 {
                    let anchor = minority[0];
                    return (
                        data.row(anchor).to_owned(),
                        SampleProvenance {
                            variant,
                            parent_a: anchor,
                            parent_b: Some(anchor),
                            centroid: None,
                            lambda: 0.0,
                            fidelity_weight: None,
                            filter_probability: None,
                            flags: vec![SampleFlag::DegenerateMinority],
                        },
                    );
                }
                let i_local = rng.random_range(0..m);
                let j_local = match self {
                    Generator::Base => {
                        let mut j = rng.random_range(0..m);
                        while j == i_local {
                            j = rng.random_range(0..m);
                        }
                        j
                    }
                    Generator::Knn { neighbors } => {
                        let list = &neighbors[i_local];
                        list[rng.random_range(0..list.len())]
                    }
                    _ => unreachable!(),
                };
                let a = minority[i_local];
                let b = minority[j_local];
                let lambda = sample_lambda(data.row(a), data.row(b), cfg, rng);
                let sample = interpolate(data.row(a), data.row(b), lambda);
                (
                    sample,
                    SampleProvenance {
                        variant,
                        parent_a: a,
                        parent_b: Some(b),
                        centroid: None,
                        lambda,
                        fidelity_weight: None,
                        filter_probability: None,
                        flags: Vec::new(),
                    },
                )
            }
            Generator::Fidelity {
                centroids,
                assignments,
            } => {
                let anchor = minority[rng.random_range(0..m)];
                let cluster = assignments[anchor];
                let x = data.row(anchor);
                let c = centroids.row(cluster);
                let mut direction = c.to_owned();
                direction.zip_mut_with(&x, |d, &xi| *d -= xi);
                let dist = direction.dot(&direction).sqrt();
                let mut flags = Vec::new();
                if dist == 0.0 {
                    return (
                        x.to_owned(),
                        SampleProvenance {
                            variant,
                            parent_a: anchor,
                            parent_b: None,
                            centroid: Some(cluster),
                            lambda: 0.0,
                            fidelity_weight: None,
                            filter_probability: None,
                            flags: vec![SampleFlag::AtCentroid],
                        },
                    );
                }
                let weight = match fidelity_similarity(x, c) {
                    Ok(f) => f,
                    Err(Error::ZeroVector) => {
                        flags.push(SampleFlag::ZeroVector);
                        0.0
                    }
                    Err(_) => unreachable!(),
                };
                let lambda = cfg.step * sample_lambda(x, c, cfg, rng);
                let mut sample = x.to_owned();
                sample.scaled_add(lambda * weight / dist, &direction);
                (
                    sample,
                    SampleProvenance {
                        variant,
                        parent_a: anchor,
                        parent_b: None,
                        centroid: Some(cluster),
                        lambda,
                        fidelity_weight: Some(weight),
                        filter_probability: None,
                        flags,
                    },
                )
            }
        }
    }
}

fn collect_batch(rows: Vec<Array1<f64>>, n_features: usize) -> Array2<f64> {
    let mut out = Array2::zeros((rows.len(), n_features));
    for (i, row) in rows.into_iter().enumerate() {
        out.row_mut(i).assign(&row);
    }
    out
}

fn generate_plain<R: Rng>(
    variant: BaseVariant,
    data: &Dataset,
    target_count: usize,
    cfg: &ResampleConfig,
    rng: &mut R,
) -> Result<SyntheticBatch> {
    let (_, minority, _) = minority_split(data)?;
    if minority.is_empty() {
        return Err(Error::EmptyClass { class: 1 });
    }
    let generator = Generator::prepare(variant, data, &minority, cfg, rng)?;
    let needed = target_count.saturating_sub(minority.len());
    let mut rows = Vec::with_capacity(needed);
    let mut provenance = Vec::with_capacity(needed);
    for _ in 0..needed {
        let (sample, record) = generator.draw(data, &minority, cfg, rng);
        rows.push(sample);
        provenance.push(record);
    }
    let mut batch = SyntheticBatch::empty(data.n_features());
    batch.samples = collect_batch(rows, data.n_features());
    batch.provenance = provenance;
    if let Generator::Fidelity { centroids, .. } = generator {
        batch.centroids = Some(centroids);
    }
    Ok(batch)
}

/// Base generator: interpolate between two distinct random minority points
/// until the minority would reach `target_count`.
pub fn base_qsmote<R: Rng>(
    data: &Dataset,
    target_count: usize,
    cfg: &ResampleConfig,
    rng: &mut R,
) -> Result<SyntheticBatch> {
    generate_plain(BaseVariant::Base, data, target_count, cfg, rng)
}

/// KNN generator: the partner point is one of the anchor's k nearest
/// minority neighbors.
pub fn knn_qsmote<R: Rng>(
    data: &Dataset,
    target_count: usize,
    cfg: &ResampleConfig,
    rng: &mut R,
) -> Result<SyntheticBatch> {
    generate_plain(BaseVariant::Knn, data, target_count, cfg, rng)
}

/// Fidelity generator: step from a minority point toward its cluster
/// centroid by λ · F(x, c) along the unit direction.
pub fn fidelity_qsmote<R: Rng>(
    data: &Dataset,
    target_count: usize,
    cfg: &ResampleConfig,
    rng: &mut R,
) -> Result<SyntheticBatch> {
    generate_plain(BaseVariant::Fidelity, data, target_count, cfg, rng)
}

/// Margin-filtered generator.
///
/// Candidates come from `cfg.base_for_margin`; a logistic filter trained on
/// the original dataset keeps a candidate only when |P(y=1|x̃) − 0.5|
/// strictly exceeds `cfg.margin`. Generation stops at `target_count`
/// retained minority samples or after 50 × target_count attempts, in which
/// case the batch is marked underfilled.
pub fn margin_qsmote<R: Rng>(
    data: &Dataset,
    target_count: usize,
    cfg: &ResampleConfig,
    rng: &mut R,
) -> Result<SyntheticBatch> {
    let (_, minority, _) = minority_split(data)?;
    if minority.is_empty() {
        return Err(Error::EmptyClass { class: 1 });
    }
    let filter = LogisticModel::fit(data.features.view(), &data.labels)?;
    let generator = Generator::prepare(cfg.base_for_margin, data, &minority, cfg, rng)?;

    let needed = target_count.saturating_sub(minority.len());
    let attempt_cap = 50 * target_count;
    let mut rows = Vec::with_capacity(needed);
    let mut provenance = Vec::with_capacity(needed);
    let mut attempts = 0usize;
    while rows.len() < needed && attempts < attempt_cap {
        attempts += 1;
        let (sample, mut record) = generator.draw(data, &minority, cfg, rng);
        let p = filter.predict_proba(sample.view());
        if (p - 0.5).abs() > cfg.margin {
            record.variant = Variant::Margin;
            record.filter_probability = Some(p);
            rows.push(sample);
            provenance.push(record);
        }
    }

    let underfilled = rows.len() < needed;
    let mut batch = SyntheticBatch::empty(data.n_features());
    batch.samples = collect_batch(rows, data.n_features());
    batch.provenance = provenance;
    batch.filter = Some(filter);
    batch.underfilled = underfilled;
    if let Generator::Fidelity { centroids, .. } = generator {
        batch.centroids = Some(centroids);
    }
    Ok(batch)
}

/// Runs the configured variant so the minority class reaches the majority
/// count, returning the balanced dataset and the audit batch.
pub fn resample_balanced(data: &Dataset, cfg: &ResampleConfig) -> Result<(Dataset, SyntheticBatch)> {
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(cfg.seed);
    resample_balanced_with(data, cfg, &mut rng)
}

/// Same as [`resample_balanced`] with a caller-provided RNG stream.
pub fn resample_balanced_with<R: Rng>(
    data: &Dataset,
    cfg: &ResampleConfig,
    rng: &mut R,
) -> Result<(Dataset, SyntheticBatch)> {
    let (minority_label, _, majority_count) = minority_split(data)?;
    let batch = match cfg.variant {
        Variant::Base => base_qsmote(data, majority_count, cfg, rng)?,
        Variant::Knn => knn_qsmote(data, majority_count, cfg, rng)?,
        Variant::Fidelity => fidelity_qsmote(data, majority_count, cfg, rng)?,
        Variant::Margin => margin_qsmote(data, majority_count, cfg, rng)?,
    };

    let n_old = data.n_rows();
    let n_new = n_old + batch.len();
    let mut features = Array2::zeros((n_new, data.n_features()));
    features
        .slice_mut(ndarray::s![..n_old, ..])
        .assign(&data.features);
    features
        .slice_mut(ndarray::s![n_old.., ..])
        .assign(&batch.samples);
    let mut labels = data.labels.clone();
    labels.extend(std::iter::repeat(minority_label).take(batch.len()));
    let balanced = Dataset::new(
        features,
        labels,
        data.feature_names.clone(),
        format!("{} + {}", data.provenance, cfg.variant),
    )?;
    Ok((balanced, batch))
}

/// The collinearity defect ‖x̃−x_i‖ + ‖x̃−x_j‖ − ‖x_i−x_j‖, which is 0 for
/// points on the segment.
pub fn segment_defect(
    sample: ArrayView1<'_, f64>,
    parent_a: ArrayView1<'_, f64>,
    parent_b: ArrayView1<'_, f64>,
) -> f64 {
    let d = |u: ArrayView1<'_, f64>, v: ArrayView1<'_, f64>| {
        u.iter()
            .zip(v.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    };
    d(sample, parent_a) + d(sample, parent_b) - d(parent_a, parent_b)
}
