//! Cross-validated benchmark over (model, variant, encoding, copies) grids.
//!
//! Every (seed, fold) split refits the scaler on the training rows, resamples
//! the training rows only, fits PCA on the balanced training set, and scores
//! the untouched evaluation fold. Cells own RNG streams derived from the
//! master seed and their coordinates, so results do not depend on execution
//! order and a fixed master seed reproduces byte-identical output.

use crate::dataset::{temp_sibling, Dataset};
use crate::encoding::{EncodingConfig, EncodingMethod, Precision};
use crate::error::{Error, Result};
use crate::kpgm;
use crate::pgm::PgmClassifier;
use crate::pipeline::cv::{stratified_kfold, train_indices};
use crate::pipeline::metrics::{compute_metrics, ConfusionCounts, Metrics};
use crate::pipeline::pca::pca_fit;
use crate::pipeline::preprocess::MinMaxScaler;
use crate::qsmote::{resample_balanced_with, LogisticModel, ResampleConfig, Variant};
use crate::pgm::HelstromClassifier;
use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

/// Which classifier a cell trains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Pgm,
    Kpgm,
    Helstrom,
    Logistic,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelKind::Pgm => write!(f, "pgm"),
            ModelKind::Kpgm => write!(f, "kpgm"),
            ModelKind::Helstrom => write!(f, "helstrom"),
            ModelKind::Logistic => write!(f, "logistic"),
        }
    }
}

/// The model × variant × encoding × copies grid to evaluate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchGrid {
    pub models: Vec<ModelKind>,
    pub variants: Vec<Variant>,
    pub encodings: Vec<EncodingMethod>,
    pub copies: Vec<usize>,
}

impl BenchGrid {
    /// The full quantum-model grid: PGM and kPGM over all four variants,
    /// both encodings, one and two copies (32 configurations).
    pub fn full_quantum() -> Self {
        Self {
            models: vec![ModelKind::Pgm, ModelKind::Kpgm],
            variants: vec![
                Variant::Base,
                Variant::Knn,
                Variant::Fidelity,
                Variant::Margin,
            ],
            encodings: vec![EncodingMethod::Amplitude, EncodingMethod::Stereographic],
            copies: vec![1, 2],
        }
    }

    pub fn single(
        model: ModelKind,
        variant: Variant,
        encoding: EncodingMethod,
        copies: usize,
    ) -> Self {
        Self {
            models: vec![model],
            variants: vec![variant],
            encodings: vec![encoding],
            copies: vec![copies],
        }
    }

    pub fn n_configs(&self) -> usize {
        self.models.len() * self.variants.len() * self.encodings.len() * self.copies.len()
    }
}

/// Benchmark configuration. Defaults: 10 seeds, 5 folds, PCA-16, master
/// seed 42, resampling with the standard hyperparameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchConfig {
    pub grid: BenchGrid,
    pub n_seeds: usize,
    pub n_folds: usize,
    pub master_seed: u64,
    pub resample: ResampleConfig,
    pub pca_components: usize,
    pub rescale: f64,
    pub precision: Precision,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            grid: BenchGrid::full_quantum(),
            n_seeds: 10,
            n_folds: 5,
            master_seed: 42,
            resample: ResampleConfig::default(),
            pca_components: 16,
            rescale: 1.0,
            precision: Precision::Double,
        }
    }
}

/// One evaluated cell.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricRecord {
    pub model: ModelKind,
    pub variant: Variant,
    pub encoding: EncodingMethod,
    pub n_copies: usize,
    pub seed: usize,
    pub fold: usize,
    pub metrics: Metrics,
}

/// A cell that errored; the run continues without it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellFailure {
    pub model: ModelKind,
    pub variant: Variant,
    pub encoding: EncodingMethod,
    pub n_copies: usize,
    pub seed: usize,
    pub fold: usize,
    pub message: String,
}

/// Mean and two standard deviations per metric for one configuration:
/// over all (seed, fold) records, and over per-seed means.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AggregateRecord {
    pub model: ModelKind,
    pub variant: Variant,
    pub encoding: EncodingMethod,
    pub n_copies: usize,
    pub n_records: usize,
    pub mean: [f64; 4],
    pub std_records: [f64; 4],
    pub std_seed_means: [f64; 4],
}

impl AggregateRecord {
    pub fn mean_accuracy(&self) -> f64 {
        self.mean[0]
    }
    pub fn mean_precision(&self) -> f64 {
        self.mean[1]
    }
    pub fn mean_recall(&self) -> f64 {
        self.mean[2]
    }
    pub fn mean_f1(&self) -> f64 {
        self.mean[3]
    }
}

/// All records, failures, and aggregates from one benchmark run.
#[derive(Debug, Clone)]
pub struct BenchmarkReport {
    pub records: Vec<MetricRecord>,
    pub failures: Vec<CellFailure>,
    pub aggregates: Vec<AggregateRecord>,
    pub n_cells: usize,
}

fn splitmix_round(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable seed derivation from coordinates; independent of execution order.
pub(crate) fn derive_seed(parts: &[u64]) -> u64 {
    let mut state = 0u64;
    let mut out = 0u64;
    for &p in parts {
        state ^= p.wrapping_mul(0xA24B_AED4_963E_E407);
        out ^= splitmix_round(&mut state);
    }
    out
}

fn variant_id(v: Variant) -> u64 {
    match v {
        Variant::Base => 0,
        Variant::Knn => 1,
        Variant::Fidelity => 2,
        Variant::Margin => 3,
    }
}

struct PreparedFold {
    train_features: Array2<f64>,
    train_labels: Vec<usize>,
    eval_features: Array2<f64>,
    eval_labels: Vec<usize>,
}

/// Scaler fit on the training rows only, then applied to both sides.
fn prepare_fold(data: &Dataset, train: &[usize], eval: &[usize]) -> PreparedFold {
    let train_raw = data.features.select(ndarray::Axis(0), train);
    let eval_raw = data.features.select(ndarray::Axis(0), eval);
    let scaler = MinMaxScaler::fit(train_raw.view());
    PreparedFold {
        train_features: scaler.transform(train_raw.view()),
        train_labels: train.iter().map(|&i| data.labels[i]).collect(),
        eval_features: scaler.transform_clamped(eval_raw.view()),
        eval_labels: eval.iter().map(|&i| data.labels[i]).collect(),
    }
}

/// Runs the configured grid and aggregates the results.
///
/// The expensive preparation (resampling and PCA) is shared by every model
/// cell of the same (seed, fold, variant); preparation units run in
/// parallel.
pub fn run_benchmark(data: &Dataset, config: &BenchConfig) -> Result<BenchmarkReport> {
    data.binary_counts()?;
    faer::set_global_parallelism(faer::Par::Seq);

    // Fold assignments per seed.
    let mut fold_sets = Vec::with_capacity(config.n_seeds);
    for seed in 0..config.n_seeds {
        let fold_seed = derive_seed(&[config.master_seed, 0xF01D, seed as u64]);
        fold_sets.push(stratified_kfold(&data.labels, config.n_folds, fold_seed)?);
    }

    let mut units = Vec::new();
    for seed in 0..config.n_seeds {
        for fold in 0..config.n_folds {
            for &variant in &config.grid.variants {
                units.push((seed, fold, variant));
            }
        }
    }

    let outcomes: Vec<(Vec<MetricRecord>, Vec<CellFailure>)> = units
        .par_iter()
        .map(|&(seed, fold, variant)| run_unit(data, config, &fold_sets, seed, fold, variant))
        .collect();

    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (mut r, mut f) in outcomes {
        records.append(&mut r);
        failures.append(&mut f);
    }
    records.sort_by_key(record_key);
    failures.sort_by_key(|f| {
        (
            format!("{}", f.model),
            variant_id(f.variant),
            format!("{}", f.encoding),
            f.n_copies,
            f.seed,
            f.fold,
        )
    });

    let aggregates = aggregate(&records, config);
    let n_cells = config.grid.n_configs() * config.n_seeds * config.n_folds;
    Ok(BenchmarkReport {
        records,
        failures,
        aggregates,
        n_cells,
    })
}

fn record_key(r: &MetricRecord) -> (String, u64, String, usize, usize, usize) {
    (
        format!("{}", r.model),
        variant_id(r.variant),
        format!("{}", r.encoding),
        r.n_copies,
        r.seed,
        r.fold,
    )
}

#[allow(clippy::too_many_arguments)]
fn run_unit(
    data: &Dataset,
    config: &BenchConfig,
    fold_sets: &[Vec<Vec<usize>>],
    seed: usize,
    fold: usize,
    variant: Variant,
) -> (Vec<MetricRecord>, Vec<CellFailure>) {
    let mut records = Vec::new();
    let mut failures = Vec::new();
    let fail_all = |message: String, failures: &mut Vec<CellFailure>| {
        for &model in &config.grid.models {
            for &encoding in &config.grid.encodings {
                for &n_copies in &config.grid.copies {
                    failures.push(CellFailure {
                        model,
                        variant,
                        encoding,
                        n_copies,
                        seed,
                        fold,
                        message: message.clone(),
                    });
                }
            }
        }
    };

    let folds = &fold_sets[seed];
    let eval_idx = &folds[fold];
    let train_idx = train_indices(folds, fold, data.n_rows());
    let prepared = prepare_fold(data, &train_idx, eval_idx);

    let train = match Dataset::new(
        prepared.train_features.clone(),
        prepared.train_labels.clone(),
        data.feature_names.clone(),
        "train fold",
    ) {
        Ok(d) => d,
        Err(e) => {
            fail_all(e.to_string(), &mut failures);
            return (records, failures);
        }
    };

    let mut resample_cfg = config.resample.clone();
    resample_cfg.variant = variant;
    resample_cfg.seed = derive_seed(&[
        config.master_seed,
        0x5EED,
        seed as u64,
        fold as u64,
        variant_id(variant),
    ]);
    let mut rng = ChaCha12Rng::seed_from_u64(resample_cfg.seed);
    let (balanced, _batch) = match resample_balanced_with(&train, &resample_cfg, &mut rng) {
        Ok(out) => out,
        Err(e) => {
            fail_all(e.to_string(), &mut failures);
            return (records, failures);
        }
    };

    let n_components = config
        .pca_components
        .min(balanced.n_rows().saturating_sub(1))
        .min(balanced.n_features());
    let pca = match pca_fit(balanced.features.view(), n_components) {
        Ok(p) => p,
        Err(e) => {
            fail_all(e.to_string(), &mut failures);
            return (records, failures);
        }
    };
    let train_proj = pca.transform(balanced.features.view()).expect("fit dims");
    let eval_proj = pca
        .transform(prepared.eval_features.view())
        .expect("fit dims");

    for &model in &config.grid.models {
        for &encoding in &config.grid.encodings {
            for &n_copies in &config.grid.copies {
                let enc_cfg = EncodingConfig {
                    method: encoding,
                    rescale: config.rescale,
                    precision: config.precision,
                };
                let outcome = run_cell(
                    model,
                    enc_cfg,
                    n_copies,
                    train_proj.view(),
                    &balanced.labels,
                    eval_proj.view(),
                    &prepared.eval_labels,
                );
                match outcome {
                    Ok(metrics) => records.push(MetricRecord {
                        model,
                        variant,
                        encoding,
                        n_copies,
                        seed,
                        fold,
                        metrics,
                    }),
                    Err(e) => failures.push(CellFailure {
                        model,
                        variant,
                        encoding,
                        n_copies,
                        seed,
                        fold,
                        message: e.to_string(),
                    }),
                }
            }
        }
    }
    (records, failures)
}

fn run_cell(
    model: ModelKind,
    encoding: EncodingConfig,
    n_copies: usize,
    train: ndarray::ArrayView2<'_, f64>,
    train_labels: &[usize],
    eval: ndarray::ArrayView2<'_, f64>,
    eval_labels: &[usize],
) -> Result<Metrics> {
    let predicted: Vec<usize> = match model {
        ModelKind::Pgm => {
            let clf = PgmClassifier::fit(train, train_labels, encoding, n_copies, None)?;
            clf.predict_batch(eval)?.into_iter().map(|p| p.label).collect()
        }
        ModelKind::Kpgm => {
            let mdl = kpgm::fit_kpgm(train, train_labels, n_copies, encoding, None)?;
            kpgm::kpgm_predict_batch(&mdl, eval)?
                .into_iter()
                .map(|p| p.label)
                .collect()
        }
        ModelKind::Helstrom => {
            let clf = HelstromClassifier::fit(train, train_labels, encoding, n_copies)?;
            eval.rows()
                .into_iter()
                .map(|row| clf.predict(row.as_slice().expect("contiguous")))
                .collect::<Result<_>>()?
        }
        ModelKind::Logistic => {
            let mdl = LogisticModel::fit(train, train_labels)?;
            eval.rows().into_iter().map(|row| mdl.predict(row)).collect()
        }
    };
    if eval_labels.iter().any(|&l| l > 1) {
        return Err(Error::Schema("evaluation labels must be binary".into()));
    }
    let counts = ConfusionCounts::from_predictions(eval_labels, &predicted);
    Ok(compute_metrics(&counts))
}

fn sample_std(values: &[f64], mean: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (ss / (values.len() as f64 - 1.0)).sqrt()
}

fn aggregate(records: &[MetricRecord], config: &BenchConfig) -> Vec<AggregateRecord> {
    let mut out = Vec::new();
    for &model in &config.grid.models {
        for &encoding in &config.grid.encodings {
            for &n_copies in &config.grid.copies {
                for &variant in &config.grid.variants {
                    let cell: Vec<&MetricRecord> = records
                        .iter()
                        .filter(|r| {
                            r.model == model
                                && r.variant == variant
                                && r.encoding == encoding
                                && r.n_copies == n_copies
                        })
                        .collect();
                    if cell.is_empty() {
                        continue;
                    }
                    let metric_of = |r: &MetricRecord, k: usize| match k {
                        0 => r.metrics.accuracy,
                        1 => r.metrics.precision,
                        2 => r.metrics.recall,
                        _ => r.metrics.f1,
                    };
                    let mut mean = [0.0; 4];
                    let mut std_records = [0.0; 4];
                    let mut std_seed_means = [0.0; 4];
                    for k in 0..4 {
                        let values: Vec<f64> = cell.iter().map(|r| metric_of(r, k)).collect();
                        let m = values.iter().sum::<f64>() / values.len() as f64;
                        mean[k] = m;
                        std_records[k] = sample_std(&values, m);
                        // Per-seed means, then their spread.
                        let mut seed_means = Vec::new();
                        for seed in 0..config.n_seeds {
                            let vs: Vec<f64> = cell
                                .iter()
                                .filter(|r| r.seed == seed)
                                .map(|r| metric_of(r, k))
                                .collect();
                            if !vs.is_empty() {
                                seed_means.push(vs.iter().sum::<f64>() / vs.len() as f64);
                            }
                        }
                        let sm = seed_means.iter().sum::<f64>() / seed_means.len().max(1) as f64;
                        std_seed_means[k] = sample_std(&seed_means, sm);
                    }
                    out.push(AggregateRecord {
                        model,
                        variant,
                        encoding,
                        n_copies,
                        n_records: cell.len(),
                        mean,
                        std_records,
                        std_seed_means,
                    });
                }
            }
        }
    }
    out
}

impl BenchmarkReport {
    /// Looks up the aggregate for one configuration.
    pub fn aggregate_for(
        &self,
        model: ModelKind,
        variant: Variant,
        encoding: EncodingMethod,
        n_copies: usize,
    ) -> Option<&AggregateRecord> {
        self.aggregates.iter().find(|a| {
            a.model == model
                && a.variant == variant
                && a.encoding == encoding
                && a.n_copies == n_copies
        })
    }

    pub fn success_fraction(&self) -> f64 {
        if self.n_cells == 0 {
            return 1.0;
        }
        self.records.len() as f64 / self.n_cells as f64
    }

    /// Per-record results as CSV text (full float precision).
    pub fn results_csv(&self) -> String {
        let mut out = String::from("model,variant,encoding,n_copies,seed,fold,accuracy,precision,recall,f1,flags\n");
        for r in &self.records {
            let flags = r
                .metrics
                .flags
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join(";");
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                r.model,
                r.variant,
                r.encoding,
                r.n_copies,
                r.seed,
                r.fold,
                r.metrics.accuracy,
                r.metrics.precision,
                r.metrics.recall,
                r.metrics.f1,
                flags
            ));
        }
        out
    }

    /// Aggregates as CSV: mean, std over records, std over per-seed means.
    pub fn aggregates_csv(&self) -> String {
        let mut out = String::from(
            "model,variant,encoding,n_copies,n_records,\
             accuracy_mean,accuracy_std,accuracy_seed_std,\
             precision_mean,precision_std,precision_seed_std,\
             recall_mean,recall_std,recall_seed_std,\
             f1_mean,f1_std,f1_seed_std\n",
        );
        for a in &self.aggregates {
            out.push_str(&format!(
                "{},{},{},{},{}",
                a.model, a.variant, a.encoding, a.n_copies, a.n_records
            ));
            for k in 0..4 {
                out.push_str(&format!(
                    ",{},{},{}",
                    a.mean[k], a.std_records[k], a.std_seed_means[k]
                ));
            }
            out.push('\n');
        }
        out
    }

    /// Markdown summary tables, one per (model, encoding, copies) group,
    /// mean ± std to four decimals.
    pub fn summary_markdown(&self) -> String {
        let mut out = String::new();
        let mut groups: Vec<(ModelKind, EncodingMethod, usize)> = self
            .aggregates
            .iter()
            .map(|a| (a.model, a.encoding, a.n_copies))
            .collect();
        groups.dedup();
        for (model, encoding, n_copies) in groups {
            out.push_str(&format!(
                "### {model} — {encoding} encoding, n_copies = {n_copies}\n\n"
            ));
            out.push_str("| Variant | Accuracy | Precision | Recall | F1 Score |\n");
            out.push_str("|---|---|---|---|---|\n");
            for a in self
                .aggregates
                .iter()
                .filter(|a| a.model == model && a.encoding == encoding && a.n_copies == n_copies)
            {
                out.push_str(&format!("| {} ", a.variant));
                for k in 0..4 {
                    out.push_str(&format!(
                        "| {:.4} ± {:.4} ",
                        a.mean[k], a.std_records[k]
                    ));
                }
                out.push_str("|\n");
            }
            out.push('\n');
        }
        if !self.failures.is_empty() {
            out.push_str(&format!(
                "**Failed cells: {} of {}**\n\n",
                self.failures.len(),
                self.n_cells
            ));
            for f in &self.failures {
                out.push_str(&format!(
                    "- {} {} {} copies={} seed={} fold={}: {}\n",
                    f.model, f.variant, f.encoding, f.n_copies, f.seed, f.fold, f.message
                ));
            }
        }
        out
    }

    /// Writes results.csv, aggregates.csv, and summary.md atomically.
    pub fn write_artifacts(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        for (name, contents) in [
            ("results.csv", self.results_csv()),
            ("aggregates.csv", self.aggregates_csv()),
            ("summary.md", self.summary_markdown()),
        ] {
            let path = dir.join(name);
            let tmp = temp_sibling(&path);
            fs::write(&tmp, contents)?;
            fs::rename(&tmp, &path)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    /// A small synthetic imbalanced dataset with signal in two coordinates.
    fn toy_dataset(n: usize, seed: u64) -> Dataset {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let d = 6;
        let mut features = Array2::zeros((n, d));
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            let positive = rng.random_range(0.0..1.0) < 0.3;
            let center = if positive { 0.7 } else { 0.3 };
            for j in 0..d {
                let base = if j < 2 { center } else { 0.5 };
                features[[i, j]] = (base + rng.random_range(-0.25..0.25f64)).clamp(0.0, 1.0);
            }
            labels.push(usize::from(positive));
        }
        Dataset::new(
            features,
            labels,
            (0..d).map(|j| format!("f{j}")).collect(),
            "toy",
        )
        .unwrap()
    }

    fn tiny_config() -> BenchConfig {
        BenchConfig {
            grid: BenchGrid {
                models: vec![ModelKind::Pgm, ModelKind::Logistic],
                variants: vec![Variant::Base],
                encodings: vec![EncodingMethod::Amplitude],
                copies: vec![1],
            },
            n_seeds: 2,
            n_folds: 3,
            master_seed: 7,
            pca_components: 4,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn record_count_is_seeds_times_folds_per_config() {
        let data = toy_dataset(120, 1);
        let report = run_benchmark(&data, &tiny_config()).unwrap();
        assert_eq!(report.n_cells, 2 * 2 * 3);
        assert_eq!(report.records.len(), report.n_cells);
        assert!(report.failures.is_empty());
    }

    #[test]
    fn aggregates_recompute_from_records() {
        let data = toy_dataset(120, 2);
        let report = run_benchmark(&data, &tiny_config()).unwrap();
        for agg in &report.aggregates {
            let values: Vec<f64> = report
                .records
                .iter()
                .filter(|r| {
                    r.model == agg.model
                        && r.variant == agg.variant
                        && r.encoding == agg.encoding
                        && r.n_copies == agg.n_copies
                })
                .map(|r| r.metrics.f1)
                .collect();
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            assert_eq!(mean, agg.mean[3]);
            assert_eq!(sample_std(&values, mean), agg.std_records[3]);
        }
    }

    #[test]
    fn identical_master_seed_reproduces_results_byte_for_byte() {
        let data = toy_dataset(100, 3);
        let cfg = tiny_config();
        let a = run_benchmark(&data, &cfg).unwrap();
        let b = run_benchmark(&data, &cfg).unwrap();
        assert_eq!(a.results_csv(), b.results_csv());
        assert_eq!(a.aggregates_csv(), b.aggregates_csv());
    }

    #[test]
    fn no_leakage_scaler_comes_from_training_rows_only() {
        let data = toy_dataset(90, 4);
        let folds = stratified_kfold(&data.labels, 3, 11).unwrap();
        let train = train_indices(&folds, 0, data.n_rows());
        let prepared = prepare_fold(&data, &train, &folds[0]);
        // Refit a scaler on the training rows by hand; the fold's training
        // block must already be in [0,1] with both endpoints attained.
        for j in 0..data.n_features() {
            let col = prepared.train_features.column(j);
            let lo = col.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert!(lo.abs() < 1e-12);
            assert!((hi - 1.0).abs() < 1e-12 || hi.abs() < 1e-12);
        }
        assert_eq!(
            prepared.train_features.nrows() + prepared.eval_features.nrows(),
            data.n_rows()
        );
    }

    #[test]
    fn derive_seed_is_stable_and_sensitive() {
        let a = derive_seed(&[42, 1, 2, 3]);
        let b = derive_seed(&[42, 1, 2, 3]);
        let c = derive_seed(&[42, 1, 2, 4]);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn insufficient_minority_for_knn_fails_cells_but_not_the_run() {
        let data = toy_dataset(40, 5);
        let mut cfg = tiny_config();
        cfg.grid.variants = vec![Variant::Knn];
        cfg.resample.k_neighbors = 50;
        let report = run_benchmark(&data, &cfg).unwrap();
        assert!(report.records.is_empty());
        assert_eq!(report.failures.len(), report.n_cells);
        assert!(report.success_fraction() < 0.9);
    }
}
