//! Fit the Pretty Good Measurement classifier on a toy two-moon-ish set,
//! inspect Born-rule scores, the analytic success bound, and model
//! persistence.
//!
//! ```bash
//! cargo run -p qpgm --example pgm_classifier
//! ```

use ndarray::Array2;
use qpgm::model_io::{load_povm, save_povm};
use qpgm::pgm::pgm_predict;
use qpgm::{EncodingConfig, EncodingMethod, PgmClassifier};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn main() {
    let mut rng = ChaCha12Rng::seed_from_u64(42);
    let n_per_class = 60;
    let mut features = Array2::zeros((2 * n_per_class, 2));
    let mut labels = Vec::new();
    for i in 0..2 * n_per_class {
        let class = i / n_per_class;
        let angle = rng.random_range(0.0..std::f64::consts::PI);
        let radius = 1.0 + rng.random_range(-0.15..0.15);
        let (sin, cos) = angle.sin_cos();
        if class == 0 {
            features[[i, 0]] = 0.5 + 0.4 * radius * cos;
            features[[i, 1]] = 0.4 + 0.4 * radius * sin;
        } else {
            features[[i, 0]] = 0.5 - 0.4 * radius * cos;
            features[[i, 1]] = 0.6 - 0.4 * radius * sin;
        }
        labels.push(class);
    }

    for n_copies in [1usize, 2] {
        let cfg = EncodingConfig::new(EncodingMethod::Stereographic);
        let model = PgmClassifier::fit(features.view(), &labels, cfg, n_copies, None).unwrap();
        let correct = features
            .rows()
            .into_iter()
            .zip(&labels)
            .filter(|(row, &y)| {
                model.predict(row.as_slice().unwrap()).unwrap().label == y
            })
            .count();
        println!(
            "n_copies = {n_copies}: operator side {}, training accuracy {:.3}, PGM bound {:.4}",
            model.povm().side(),
            correct as f64 / labels.len() as f64,
            model.bound()
        );
    }

    // Scores are Born-rule probabilities and always sum to 1.
    let cfg = EncodingConfig::new(EncodingMethod::Stereographic);
    let model = PgmClassifier::fit(features.view(), &labels, cfg, 2, None).unwrap();
    let probe = [0.5, 0.5];
    let pred = model.predict(&probe).unwrap();
    println!(
        "\nscores at {probe:?}: {:?} (sum {:.12}), label {}",
        pred.scores
            .iter()
            .map(|s| (s * 1e4).round() / 1e4)
            .collect::<Vec<_>>(),
        pred.scores.iter().sum::<f64>(),
        pred.label
    );

    // POVM validity diagnostics.
    println!(
        "POVM completeness defect {:.2e}, min operator eigenvalue {:.2e}",
        model.povm().completeness_defect(),
        model.povm().min_operator_eigenvalue()
    );

    // Round-trip the fitted measurement through disk.
    let dir = std::env::temp_dir().join("qpgm-example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pgm_model.json");
    save_povm(&path, model.povm()).unwrap();
    let restored = load_povm(&path).unwrap();
    let again = pgm_predict(&restored, &probe).unwrap();
    println!(
        "reloaded model agrees: {}",
        (again.scores[0] - pred.scores[0]).abs() == 0.0
    );
}
