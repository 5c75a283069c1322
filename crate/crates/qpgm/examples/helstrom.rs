//! Optimal two-state discrimination: sweep the overlap between two pure
//! states and compare the measured success probability with the analytic
//! value ½(1 + √(1 − c²)).
//!
//! ```bash
//! cargo run -p qpgm --example helstrom
//! ```

use ndarray::array;
use qpgm::pgm::{class_centroids, fit_pgm, helstrom_binary, pgm_bound};
use qpgm::{density_from_state, EncodingConfig, StateVector};

fn main() {
    println!("overlap c   Helstrom     analytic     PGM bound");
    for &c in &[0.0, 0.25, 0.5, 1.0 / 2.0f64.sqrt(), 0.9, 0.99] {
        let s0 = StateVector::new(array![1.0, 0.0]).unwrap();
        let s1 = StateVector::new(array![c, (1.0 - c * c).sqrt()]).unwrap();
        let ensemble = class_centroids(
            &[
                density_from_state(&s0).unwrap(),
                density_from_state(&s1).unwrap(),
            ],
            &[0, 1],
            1,
        )
        .unwrap();
        let helstrom = helstrom_binary(&ensemble).unwrap();
        let analytic = 0.5 * (1.0 + (1.0 - c * c).sqrt());
        let povm = fit_pgm(&ensemble, EncodingConfig::default(), None).unwrap();
        let bound = pgm_bound(&ensemble, &povm);
        println!(
            "  {c:.4}    {:.6}     {analytic:.6}     {bound:.6}",
            helstrom.success_probability
        );
    }

    // The Helstrom predictor itself: classify each training state.
    let s0 = StateVector::new(array![1.0, 0.0]).unwrap();
    let r = 1.0 / 2.0f64.sqrt();
    let s1 = StateVector::new(array![r, r]).unwrap();
    let ensemble = class_centroids(
        &[
            density_from_state(&s0).unwrap(),
            density_from_state(&s1).unwrap(),
        ],
        &[0, 1],
        1,
    )
    .unwrap();
    let helstrom = helstrom_binary(&ensemble).unwrap();
    println!(
        "\nat c = 1/sqrt(2): state 0 -> class {}, state 1 -> class {}",
        helstrom.classify_state(&s0),
        helstrom.classify_state(&s1)
    );
}
