//! Dataset preparation, cross-validation, metrics, and the benchmark runner.

pub mod bench;
pub mod cv;
pub mod metrics;
pub mod pca;
pub mod preprocess;

pub use bench::{
    run_benchmark, AggregateRecord, BenchConfig, BenchGrid, BenchmarkReport, CellFailure,
    MetricRecord, ModelKind,
};
pub use cv::{stratified_kfold, train_indices};
pub use metrics::{compute_metrics, ConfusionCounts, MetricFlag, Metrics};
pub use pca::{pca_fit, PcaModel};
pub use preprocess::{
    preprocess_telco, telco_clean, telco_design_matrix, MinMaxScaler, OneHotEncoder,
};
