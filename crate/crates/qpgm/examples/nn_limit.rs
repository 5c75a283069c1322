//! The kernel power's large-m limit: kPGM converges to 1-nearest-neighbor
//! classification by maximal state overlap.
//!
//! ```bash
//! cargo run -p qpgm --example nn_limit
//! ```

use ndarray::Array2;
use qpgm::kpgm::nn_limit_agreement;
use qpgm::{encode, EncodingConfig};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Rejection-sample feature vectors whose encoded states stay separated.
fn separated_points(
    n: usize,
    d: usize,
    max_overlap: f64,
    cfg: &EncodingConfig,
    rng: &mut ChaCha12Rng,
) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    while rows.len() < n {
        let candidate: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let psi = encode(&candidate, cfg);
        if rows
            .iter()
            .all(|other| psi.overlap(&encode(other, cfg)).abs() <= max_overlap)
        {
            rows.push(candidate);
        }
    }
    rows
}

fn main() {
    let mut rng = ChaCha12Rng::seed_from_u64(17);
    let cfg = EncodingConfig::default().with_rescale(3.0);
    let (n, d) = (30, 7);

    let train = separated_points(n, d, 0.85, &cfg, &mut rng);
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..2usize)).collect();
    let mut features = Array2::zeros((n, d));
    for (i, row) in train.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            features[[i, j]] = v;
        }
    }

    let queries_vec = separated_points(200, d, 0.95, &cfg, &mut rng);
    let mut queries = Array2::zeros((200, d));
    for (i, row) in queries_vec.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            queries[[i, j]] = v;
        }
    }

    let powers = [1usize, 2, 4, 8, 16, 32];
    let agreements =
        nn_limit_agreement(features.view(), &labels, queries.view(), &powers, cfg).unwrap();

    println!("agreement with the 1-NN-by-overlap rule over 200 queries:\n");
    println!("  m    agreement");
    for (m, a) in powers.iter().zip(&agreements) {
        let bar = "#".repeat((a * 40.0).round() as usize);
        println!("  {m:>2}   {a:.3}  {bar}");
    }
}
