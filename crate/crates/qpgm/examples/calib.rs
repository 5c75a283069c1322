//! Scratch calibration harness (temporary).

use qpgm::pipeline::bench::{BenchConfig, BenchGrid, ModelKind};
use qpgm::pipeline::telco_design_matrix;
use qpgm::qsmote::Variant;
use qpgm::synth;
use qpgm::{run_benchmark, EncodingMethod};

fn main() {
    let (rate, bayes) = synth::generator_stats(7043, 1);
    println!("rate {rate:.3}  bayes {bayes:.3}");
    let table = synth::synthetic_telco_table(7043, 1);
    let design = telco_design_matrix(&table, Some(1000)).unwrap();
    let config = BenchConfig {
        grid: BenchGrid {
            models: vec![ModelKind::Pgm, ModelKind::Logistic],
            variants: vec![Variant::Base, Variant::Knn, Variant::Fidelity, Variant::Margin],
            encodings: vec![EncodingMethod::Stereographic],
            copies: vec![1, 2],
        },
        n_seeds: 2,
        ..BenchConfig::default()
    };
    let report = run_benchmark(&design, &config).unwrap();
    println!("model variant          enc    c   acc     prec    rec     f1");
    for a in &report.aggregates {
        println!(
            "{:5} {:16} {:6} {}  {:.4}  {:.4}  {:.4}  {:.4}",
            a.model.to_string(),
            a.variant.to_string(),
            a.encoding.to_string(),
            a.n_copies,
            a.mean[0],
            a.mean[1],
            a.mean[2],
            a.mean[3]
        );
    }
    println!("failures: {}", report.failures.len());
}
