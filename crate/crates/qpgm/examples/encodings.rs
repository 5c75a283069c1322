//! Feature-vector encodings: amplitude vs inverse-stereographic, density
//! matrices, and tensor-copy lifting.
//!
//! ```bash
//! cargo run -p qpgm --example encodings
//! ```

use qpgm::{density_from_state, encode, tensor_power, EncodingConfig, EncodingMethod};

fn main() {
    let points: Vec<Vec<f64>> = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.3, 0.8]];

    for method in [EncodingMethod::Amplitude, EncodingMethod::Stereographic] {
        println!("=== {method} encoding ===");
        let cfg = EncodingConfig::new(method);
        for x in &points {
            let psi = encode(x, &cfg);
            let norm: f64 = psi.amplitudes().iter().map(|a| a * a).sum::<f64>();
            println!(
                "  {x:?} -> {:?}  (norm {:.15})",
                psi.amplitudes()
                    .iter()
                    .map(|a| (a * 1e4).round() / 1e4)
                    .collect::<Vec<_>>(),
                norm.sqrt()
            );
        }
        println!();
    }

    // A rank-1 density matrix and its two-copy lift.
    let cfg = EncodingConfig::default();
    let psi = encode(&[0.6], &cfg);
    let rho = density_from_state(&psi).unwrap();
    println!("density matrix of encode([0.6]):");
    for row in rho.entries().rows() {
        println!("  {:?}", row.iter().map(|v| (v * 1e4).round() / 1e4).collect::<Vec<_>>());
    }
    println!("trace = {}", rho.trace());

    let lifted = tensor_power(&rho, 2).unwrap();
    println!(
        "two tensor copies: side {} -> {}, trace {:.12}",
        rho.side(),
        lifted.side(),
        lifted.trace()
    );

    // Rescaling spreads amplitude-encoded points further apart.
    let near = encode(&[0.50], &cfg);
    let far = encode(&[0.55], &cfg);
    let overlap_plain = near.overlap(&far);
    let cfg_rescaled = EncodingConfig::default().with_rescale(10.0);
    let near = encode(&[0.50], &cfg_rescaled);
    let far = encode(&[0.55], &cfg_rescaled);
    println!(
        "overlap of encode(0.50), encode(0.55): rescale 1 -> {:.6}, rescale 10 -> {:.6}",
        overlap_plain,
        near.overlap(&far)
    );
}
