//! Quantum-inspired classification and oversampling for imbalanced data.
//!
//! The crate has three layers:
//!
//! - **Classifiers.** [`pgm`] fits the Pretty Good Measurement on density
//!   matrices (with the optimal Helstrom measurement for binary problems);
//!   [`kpgm`] is the kernelized reformulation that works entirely with Gram
//!   matrices and scales with the sample count instead of the lifted
//!   dimension. Both consume feature vectors through the [`encoding`]
//!   module's amplitude or inverse-stereographic maps and support tensor-copy
//!   lifting.
//! - **Oversampling.** [`qsmote`] balances a binary dataset by synthesizing
//!   minority samples: plain pairwise interpolation, k-nearest-neighbor
//!   interpolation, fidelity-weighted steps toward cluster centroids, or any
//!   of those filtered by a logistic margin rule. Interpolation weights model
//!   a shot-sampled swap test.
//! - **Pipeline.** [`dataset`] and [`pipeline`] cover CSV ingestion, the
//!   churn-table preprocessing chain, PCA, stratified cross-validation,
//!   metrics, and a parallel benchmark runner with CSV/Markdown reports.
//!   [`synth`] generates a schema-faithful synthetic churn table for running
//!   the benchmark without the original data file.
//!
//! Start from the `examples/` directory: each file is a runnable tour of one
//! capability.

pub mod dataset;
pub mod encoding;
pub mod error;
pub mod kpgm;
mod linalg;
pub mod model_io;
pub mod pgm;
pub mod pipeline;
pub mod qsmote;
pub mod synth;

#[cfg(test)]
pub(crate) mod oracle;

pub use dataset::{load_csv, Dataset, RawTable, SchemaHints};
pub use encoding::{
    density_from_state, encode, encode_amplitude, encode_stereographic, tensor_power,
    DensityMatrix, EncodingConfig, EncodingMethod, Precision, StateVector,
};
pub use error::{Error, Result};
pub use kpgm::{fit_kpgm, kpgm_predict, nn_limit_agreement, GramModel, KpgmPrediction};
pub use pgm::{
    average_state, class_centroids, fit_pgm, helstrom_binary, pgm_bound, pgm_predict,
    psd_inv_sqrt, ClassEnsemble, HelstromClassifier, PgmClassifier, PgmPrediction, PovmSet,
};
pub use pipeline::{
    preprocess_telco, run_benchmark, stratified_kfold, BenchConfig, BenchGrid, BenchmarkReport,
    ModelKind,
};
pub use qsmote::{
    base_qsmote, fidelity_qsmote, fidelity_similarity, knn_qsmote, margin_qsmote,
    resample_balanced, sample_lambda, LambdaPolicy, ResampleConfig, SyntheticBatch, Variant,
};
