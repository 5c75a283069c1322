//! A desk-scale run of the full evaluation pipeline on synthetic churn data:
//! generation, preprocessing, resampling, PCA, cross-validated scoring, and
//! the summary tables.
//!
//! ```bash
//! cargo run --release -p qpgm --example churn_benchmark
//! ```
//!
//! Uses 2 seeds to stay quick; the `qpgm bench --reproduce-paper` command
//! runs the full 10-seed grid.

use qpgm::pipeline::bench::{BenchConfig, BenchGrid, ModelKind};
use qpgm::pipeline::telco_design_matrix;
use qpgm::qsmote::Variant;
use qpgm::synth;
use qpgm::{run_benchmark, EncodingMethod};

fn main() {
    let (rate, bayes) = synth::generator_stats(7043, 1);
    println!("synthetic churn table: churn rate {rate:.3}, generator Bayes accuracy {bayes:.3}");

    let table = synth::synthetic_telco_table(7043, 1);
    let design = telco_design_matrix(&table, Some(1000)).unwrap();
    println!(
        "design matrix: {} rows x {} one-hot features\n",
        design.n_rows(),
        design.n_features()
    );

    let config = BenchConfig {
        grid: BenchGrid {
            models: vec![ModelKind::Pgm, ModelKind::Kpgm, ModelKind::Logistic],
            variants: vec![Variant::Base, Variant::Knn],
            encodings: vec![EncodingMethod::Stereographic],
            copies: vec![1, 2],
        },
        n_seeds: 2,
        ..BenchConfig::default()
    };
    let report = run_benchmark(&design, &config).unwrap();
    print!("{}", report.summary_markdown());
    println!(
        "{} of {} cells succeeded",
        report.records.len(),
        report.n_cells
    );
}
