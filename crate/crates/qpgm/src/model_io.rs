//! Fitted-model persistence with a versioned JSON envelope.
//!
//! Floats survive the round trip exactly: serialization uses the shortest
//! representation that parses back to the same f64.

use crate::error::{Error, Result};
use crate::kpgm::GramModel;
use crate::pgm::PovmSet;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

const FORMAT: &str = "qpgm-model";
const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Envelope<T> {
    format: String,
    version: u32,
    kind: String,
    model: T,
}

fn save<T: Serialize>(path: &Path, kind: &str, model: &T) -> Result<()> {
    let envelope = Envelope {
        format: FORMAT.to_string(),
        version: VERSION,
        kind: kind.to_string(),
        model,
    };
    let tmp = crate::dataset::temp_sibling(path);
    fs::write(&tmp, serde_json::to_vec(&envelope)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn load<T: for<'de> Deserialize<'de>>(path: &Path, kind: &str) -> Result<T> {
    let bytes = fs::read(path)?;
    // Validate the header before attempting to decode the payload, so a
    // wrong-kind file reports what it is instead of a field mismatch.
    let envelope: Envelope<serde_json::Value> = serde_json::from_slice(&bytes)?;
    if envelope.format != FORMAT {
        return Err(Error::ModelFormat(format!(
            "unknown format '{}'",
            envelope.format
        )));
    }
    if envelope.version != VERSION {
        return Err(Error::ModelFormat(format!(
            "unsupported version {}",
            envelope.version
        )));
    }
    if envelope.kind != kind {
        return Err(Error::ModelFormat(format!(
            "expected a {kind} model, found '{}'",
            envelope.kind
        )));
    }
    Ok(serde_json::from_value(envelope.model)?)
}

pub fn save_povm(path: &Path, model: &PovmSet) -> Result<()> {
    save(path, "povm", model)
}

pub fn load_povm(path: &Path) -> Result<PovmSet> {
    load(path, "povm")
}

pub fn save_gram(path: &Path, model: &GramModel) -> Result<()> {
    save(path, "gram", model)
}

pub fn load_gram(path: &Path) -> Result<GramModel> {
    load(path, "gram")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::EncodingConfig;
    use crate::kpgm;
    use crate::pgm::PgmClassifier;
    use ndarray::array;

    fn toy_features() -> ndarray::Array2<f64> {
        array![
            [0.11, 0.92],
            [0.25, 0.01],
            [0.33, 0.85],
            [0.97, 0.44],
            [0.62, 0.13]
        ]
    }

    #[test]
    fn povm_round_trip_is_exact() {
        let features = toy_features();
        let labels = [0, 1, 0, 1, 1];
        let clf =
            PgmClassifier::fit(features.view(), &labels, EncodingConfig::default(), 2, None)
                .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        save_povm(&path, clf.povm()).unwrap();
        let loaded = load_povm(&path).unwrap();
        assert_eq!(loaded.operators().len(), clf.povm().operators().len());
        for (a, b) in loaded.operators().iter().zip(clf.povm().operators()) {
            assert_eq!(a, b);
        }
        assert_eq!(loaded.kernel_projector(), clf.povm().kernel_projector());
        assert_eq!(loaded.rank_tolerance(), clf.povm().rank_tolerance());
    }

    #[test]
    fn gram_round_trip_is_exact() {
        let features = toy_features();
        let labels = [0, 1, 0, 1, 1];
        let model = kpgm::fit_kpgm(
            features.view(),
            &labels,
            2,
            EncodingConfig::default(),
            None,
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gram.json");
        save_gram(&path, &model).unwrap();
        let loaded = load_gram(&path).unwrap();
        assert_eq!(loaded.gram_inv_sqrt(), model.gram_inv_sqrt());
        assert_eq!(loaded.training_states(), model.training_states());
        // Predictions identical through the round trip.
        let q = [0.4, 0.4];
        let a = kpgm::kpgm_predict(&model, &q).unwrap();
        let b = kpgm::kpgm_predict(&loaded, &q).unwrap();
        assert_eq!(a.class_scores, b.class_scores);
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let features = toy_features();
        let labels = [0, 1, 0, 1, 1];
        let model = kpgm::fit_kpgm(
            features.view(),
            &labels,
            1,
            EncodingConfig::default(),
            None,
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gram.json");
        save_gram(&path, &model).unwrap();
        assert!(matches!(load_povm(&path), Err(Error::ModelFormat(_))));
    }
}
