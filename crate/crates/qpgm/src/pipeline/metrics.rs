//! Binary classification metrics from confusion counts.

use serde::{Deserialize, Serialize};

/// Confusion counts with label 1 as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl ConfusionCounts {
    pub fn from_predictions(truth: &[usize], predicted: &[usize]) -> Self {
        assert_eq!(truth.len(), predicted.len());
        let mut c = ConfusionCounts {
            tp: 0,
            tn: 0,
            fp: 0,
            fn_: 0,
        };
        for (&y, &p) in truth.iter().zip(predicted) {
            match (y, p) {
                (1, 1) => c.tp += 1,
                (0, 0) => c.tn += 1,
                (0, 1) => c.fp += 1,
                (1, 0) => c.fn_ += 1,
                _ => panic!("labels must be binary"),
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.tp + self.tn + self.fp + self.fn_
    }
}

/// A degenerate denominator that was reported as 0 instead of NaN.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricFlag {
    ZeroPrecisionDenominator,
    ZeroRecallDenominator,
    ZeroF1Denominator,
}

impl std::fmt::Display for MetricFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricFlag::ZeroPrecisionDenominator => write!(f, "zero_precision_denominator"),
            MetricFlag::ZeroRecallDenominator => write!(f, "zero_recall_denominator"),
            MetricFlag::ZeroF1Denominator => write!(f, "zero_f1_denominator"),
        }
    }
}

/// Accuracy, precision, recall, F1 in [0, 1], with degenerate divisions
/// reported as 0 and flagged rather than thrown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub flags: Vec<MetricFlag>,
}

/// Computes the four standard metrics from confusion counts.
pub fn compute_metrics(c: &ConfusionCounts) -> Metrics {
    let total = c.total();
    assert!(total > 0, "empty evaluation set");
    let accuracy = (c.tp + c.tn) as f64 / total as f64;
    let mut flags = Vec::new();
    let precision = if c.tp + c.fp > 0 {
        c.tp as f64 / (c.tp + c.fp) as f64
    } else {
        flags.push(MetricFlag::ZeroPrecisionDenominator);
        0.0
    };
    let recall = if c.tp + c.fn_ > 0 {
        c.tp as f64 / (c.tp + c.fn_) as f64
    } else {
        flags.push(MetricFlag::ZeroRecallDenominator);
        0.0
    };
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        flags.push(MetricFlag::ZeroF1Denominator);
        0.0
    };
    Metrics {
        accuracy,
        precision,
        recall,
        f1,
        flags,
    }
}
