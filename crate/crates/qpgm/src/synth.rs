//! Deterministic generator for a synthetic customer-churn table.
//!
//! Produces a CSV with the exact 21-column telco schema (same column names,
//! categories, and quirks: a text `TotalCharges` column with blank cells for
//! zero-tenure customers, `SeniorCitizen` as 0/1, service columns with
//! "No internet service" levels).
//!
//! Customers are drawn from eight behavioral modes. Churn risk lives in
//! category *conjunctions* (new fiber contract without support paying by
//! electronic check; seniors without tech support; expensive fiber bundles)
//! while each single category also appears in benign modes, so the minority
//! class is multi-modal, categorically tight within each mode, and not
//! linearly separable from the majority.

use crate::dataset::{table_from_rows, RawTable};
use crate::error::Result;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Normal};
use std::fs;
use std::path::Path;

pub const SCHEMA: [&str; 21] = [
    "customerID",
    "gender",
    "SeniorCitizen",
    "Partner",
    "Dependents",
    "tenure",
    "PhoneService",
    "MultipleLines",
    "InternetService",
    "OnlineSecurity",
    "OnlineBackup",
    "DeviceProtection",
    "TechSupport",
    "StreamingTV",
    "StreamingMovies",
    "Contract",
    "PaperlessBilling",
    "PaymentMethod",
    "MonthlyCharges",
    "TotalCharges",
    "Churn",
];

const CONTRACTS: [&str; 3] = ["Month-to-month", "One year", "Two year"];
const INTERNET: [&str; 3] = ["DSL", "Fiber optic", "No"];
const PAYMENTS: [&str; 4] = [
    "Electronic check",
    "Mailed check",
    "Bank transfer (automatic)",
    "Credit card (automatic)",
];

/// Per-mode sampling profile.
struct Mode {
    weight: f64,
    tenure_range: (u32, u32),
    contract_probs: [f64; 3],
    internet_probs: [f64; 3],
    security_yes: f64,
    support_yes: f64,
    backup_yes: f64,
    streaming_yes: f64,
    multiple_yes: f64,
    payment_probs: [f64; 4],
    paperless: f64,
    senior: f64,
    partner: f64,
    dependents: f64,
    /// Base churn probability of the mode.
    churn_p: f64,
}

const MODES: [Mode; 7] = [
    // Mixed mainstream base: partly covered accounts across all contract
    // types, the mass between every churn persona.
    Mode {
        weight: 0.30,
        tenure_range: (4, 60),
        contract_probs: [0.35, 0.35, 0.30],
        internet_probs: [0.50, 0.35, 0.15],
        security_yes: 0.75,
        support_yes: 0.50,
        backup_yes: 0.45,
        streaming_yes: 0.45,
        multiple_yes: 0.45,
        payment_probs: [0.15, 0.20, 0.33, 0.32],
        paperless: 0.50,
        senior: 0.12,
        partner: 0.55,
        dependents: 0.32,
        churn_p: 0.05,
    },
    // Fully covered households on automatic payments.
    Mode {
        weight: 0.20,
        tenure_range: (10, 72),
        contract_probs: [0.20, 0.40, 0.40],
        internet_probs: [0.45, 0.45, 0.10],
        security_yes: 0.80,
        support_yes: 0.85,
        backup_yes: 0.60,
        streaming_yes: 0.55,
        multiple_yes: 0.55,
        payment_probs: [0.08, 0.12, 0.40, 0.40],
        paperless: 0.55,
        senior: 0.10,
        partner: 0.65,
        dependents: 0.40,
        churn_p: 0.02,
    },
    // Loyal legacy accounts: no add-ons at all, but locked into long
    // contracts and mailed paper bills. The benign twin of the exposed
    // personas on the add-on axis.
    Mode {
        weight: 0.14,
        tenure_range: (30, 72),
        contract_probs: [0.10, 0.15, 0.75],
        internet_probs: [0.55, 0.10, 0.35],
        security_yes: 0.20,
        support_yes: 0.15,
        backup_yes: 0.25,
        streaming_yes: 0.20,
        multiple_yes: 0.35,
        payment_probs: [0.10, 0.50, 0.20, 0.20],
        paperless: 0.25,
        senior: 0.30,
        partner: 0.60,
        dependents: 0.30,
        churn_p: 0.08,
    },
    // Phone-only accounts.
    Mode {
        weight: 0.10,
        tenure_range: (1, 60),
        contract_probs: [0.55, 0.25, 0.20],
        internet_probs: [0.0, 0.0, 1.0],
        security_yes: 0.0,
        support_yes: 0.0,
        backup_yes: 0.0,
        streaming_yes: 0.0,
        multiple_yes: 0.30,
        payment_probs: [0.20, 0.45, 0.18, 0.17],
        paperless: 0.25,
        senior: 0.12,
        partner: 0.50,
        dependents: 0.35,
        churn_p: 0.04,
    },
    // Churn persona: unprotected month-to-month fiber, electronic check,
    // paperless. Diffuse in tenure and streaming habits.
    Mode {
        weight: 0.13,
        tenure_range: (1, 30),
        contract_probs: [0.90, 0.08, 0.02],
        internet_probs: [0.25, 0.70, 0.05],
        security_yes: 0.10,
        support_yes: 0.10,
        backup_yes: 0.15,
        streaming_yes: 0.55,
        multiple_yes: 0.40,
        payment_probs: [0.60, 0.20, 0.10, 0.10],
        paperless: 0.85,
        senior: 0.12,
        partner: 0.40,
        dependents: 0.20,
        churn_p: 0.93,
    },
    // Churn persona: security add-on but no support, one-year contracts,
    // mailed checks, mostly older DSL accounts.
    Mode {
        weight: 0.08,
        tenure_range: (6, 48),
        contract_probs: [0.25, 0.65, 0.10],
        internet_probs: [0.65, 0.25, 0.10],
        security_yes: 0.80,
        support_yes: 0.10,
        backup_yes: 0.40,
        streaming_yes: 0.35,
        multiple_yes: 0.35,
        payment_probs: [0.20, 0.55, 0.13, 0.12],
        paperless: 0.15,
        senior: 0.35,
        partner: 0.55,
        dependents: 0.25,
        churn_p: 0.85,
    },
    // Churn persona: loaded fiber bundle with support but no security,
    // month-to-month on autopay; streaming-heavy.
    Mode {
        weight: 0.05,
        tenure_range: (3, 36),
        contract_probs: [0.60, 0.37, 0.03],
        internet_probs: [0.08, 0.92, 0.0],
        security_yes: 0.10,
        support_yes: 0.75,
        backup_yes: 0.75,
        streaming_yes: 0.95,
        multiple_yes: 0.90,
        payment_probs: [0.20, 0.10, 0.35, 0.35],
        paperless: 0.60,
        senior: 0.10,
        partner: 0.50,
        dependents: 0.25,
        churn_p: 0.78,
    },
];

/// Fraction of customers with zero tenure and a blank TotalCharges cell.
const ZERO_TENURE_RATE: f64 = 0.0016;

pub(crate) struct SynthRow {
    pub cells: Vec<String>,
    /// The generating churn probability, for calibration checks.
    pub churn_probability: f64,
}

fn pick<R: Rng>(rng: &mut R, probs: &[f64]) -> usize {
    let mut threshold = rng.random_range(0.0..1.0);
    for (i, &p) in probs.iter().enumerate() {
        if threshold < p {
            return i;
        }
        threshold -= p;
    }
    probs.len() - 1
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "Yes"
    } else {
        "No"
    }
}

fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

pub(crate) fn generate_rows(n_rows: usize, seed: u64) -> Vec<SynthRow> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let noise = Normal::<f64>::new(0.0, 1.5).unwrap();
    let weights: Vec<f64> = MODES.iter().map(|m| m.weight).collect();
    let mut rows = Vec::with_capacity(n_rows);

    for idx in 0..n_rows {
        let mode = &MODES[pick(&mut rng, &weights)];

        let gender = if rng.random_range(0.0..1.0) < 0.5 {
            "Female"
        } else {
            "Male"
        };
        let senior = rng.random_range(0.0..1.0) < mode.senior;
        let partner = rng.random_range(0.0..1.0) < mode.partner;
        let dependents_p = if partner { mode.dependents } else { 0.05 };
        let dependents = rng.random_range(0.0..1.0) < dependents_p;

        let mut tenure = rng.random_range(mode.tenure_range.0..=mode.tenure_range.1);
        if rng.random_range(0.0..1.0) < ZERO_TENURE_RATE {
            tenure = 0;
        }

        let phone = rng.random_range(0.0..1.0) < 0.90;
        let multiple = if !phone {
            "No phone service"
        } else {
            yes_no(rng.random_range(0.0..1.0) < mode.multiple_yes)
        };
        let internet = INTERNET[pick(&mut rng, &mode.internet_probs)];
        let has_internet = internet != "No";
        let mut service = |p: f64, rng: &mut ChaCha12Rng| {
            if has_internet {
                yes_no(rng.random_range(0.0..1.0) < p)
            } else {
                "No internet service"
            }
        };
        let security = service(mode.security_yes, &mut rng);
        let backup = service(mode.backup_yes, &mut rng);
        let device = service(mode.backup_yes, &mut rng);
        let support = service(mode.support_yes, &mut rng);
        let stv = service(mode.streaming_yes, &mut rng);
        let smv = service(mode.streaming_yes, &mut rng);
        let contract = CONTRACTS[pick(&mut rng, &mode.contract_probs)];
        let paperless = rng.random_range(0.0..1.0) < mode.paperless;
        let payment = PAYMENTS[pick(&mut rng, &mode.payment_probs)];

        let mut monthly: f64 = 20.0 + noise.sample(&mut rng).abs();
        if multiple == "Yes" {
            monthly += 5.0;
        }
        match internet {
            "DSL" => monthly += 25.0,
            "Fiber optic" => monthly += 45.0,
            _ => {}
        }
        for flag in [security, backup, device, support] {
            if flag == "Yes" {
                monthly += 5.0;
            }
        }
        for flag in [stv, smv] {
            if flag == "Yes" {
                monthly += 8.0;
            }
        }
        monthly += noise.sample(&mut rng);
        monthly = monthly.max(18.0);

        let total = if tenure == 0 {
            " ".to_string()
        } else {
            let wobble = 1.0 + rng.random_range(-0.05..0.05);
            format!("{:.2}", monthly * tenure as f64 * wobble)
        };

        // Within-mode risk modulation; the mode sets the base rate.
        let mut z = logit(mode.churn_p);
        if tenure < 6 {
            z += 0.5;
        }
        if tenure > 45 {
            z -= 0.4;
        }
        if payment == "Electronic check" {
            z += 0.25;
        }
        if support == "Yes" {
            z -= 0.25;
        }
        if paperless {
            z += 0.15;
        }
        let churn_probability = sigmoid(z);
        let churn = rng.random_range(0.0..1.0) < churn_probability;

        let id = format!(
            "{:04}-{}{}{}{}{}",
            idx % 10000,
            letter(&mut rng),
            letter(&mut rng),
            letter(&mut rng),
            letter(&mut rng),
            letter(&mut rng)
        );

        let cells = vec![
            id,
            gender.to_string(),
            if senior { "1" } else { "0" }.to_string(),
            yes_no(partner).to_string(),
            yes_no(dependents).to_string(),
            tenure.to_string(),
            yes_no(phone).to_string(),
            multiple.to_string(),
            internet.to_string(),
            security.to_string(),
            backup.to_string(),
            device.to_string(),
            support.to_string(),
            stv.to_string(),
            smv.to_string(),
            contract.to_string(),
            yes_no(paperless).to_string(),
            payment.to_string(),
            format!("{monthly:.2}"),
            total,
            yes_no(churn).to_string(),
        ];
        rows.push(SynthRow {
            cells,
            churn_probability,
        });
    }
    rows
}

fn letter<R: Rng>(rng: &mut R) -> char {
    (b'A' + rng.random_range(0..26u8)) as char
}

/// Diagnostics of the generating model over a draw: overall churn rate and
/// the accuracy a Bayes-optimal classifier would reach on it.
pub fn generator_stats(n_rows: usize, seed: u64) -> (f64, f64) {
    let rows = generate_rows(n_rows, seed);
    let rate = rows
        .iter()
        .filter(|r| r.cells.last().map(String::as_str) == Some("Yes"))
        .count() as f64
        / rows.len() as f64;
    let bayes = rows
        .iter()
        .map(|r| r.churn_probability.max(1.0 - r.churn_probability))
        .sum::<f64>()
        / rows.len() as f64;
    (rate, bayes)
}

/// Builds the synthetic table in memory.
pub fn synthetic_telco_table(n_rows: usize, seed: u64) -> RawTable {
    let rows = generate_rows(n_rows, seed);
    let headers: Vec<String> = SCHEMA.iter().map(|s| s.to_string()).collect();
    table_from_rows(
        headers,
        rows.into_iter().map(|r| r.cells).collect(),
        format!("synthetic-telco(n={n_rows}, seed={seed})"),
    )
}

/// Writes the synthetic table as CSV, atomically.
pub fn write_synthetic_telco(path: &Path, n_rows: usize, seed: u64) -> Result<()> {
    let rows = generate_rows(n_rows, seed);
    let tmp = crate::dataset::temp_sibling(path);
    {
        let mut w = csv::Writer::from_path(&tmp)?;
        w.write_record(SCHEMA)?;
        for row in &rows {
            w.write_record(&row.cells)?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::preprocess;

    #[test]
    fn schema_matches_and_is_deterministic() {
        let a = synthetic_telco_table(200, 7);
        let b = synthetic_telco_table(200, 7);
        assert_eq!(a.headers, SCHEMA.to_vec());
        assert_eq!(a.n_rows(), 200);
        for (ca, cb) in a.columns.iter().zip(&b.columns) {
            assert_eq!(ca, cb);
        }
    }

    #[test]
    fn churn_rate_and_learnability_are_in_range() {
        let rows = generate_rows(7043, 1);
        let rate = rows
            .iter()
            .filter(|r| r.cells.last().unwrap() == "Yes")
            .count() as f64
            / rows.len() as f64;
        assert!((0.2..0.33).contains(&rate), "churn rate {rate}");
        let (_, bayes) = generator_stats(7043, 1);
        assert!(bayes > 0.84, "generator Bayes accuracy {bayes}");
        // First 1000 rows keep a workable minority for stratified folds.
        let head_rate = rows[..1000]
            .iter()
            .filter(|r| r.cells.last().unwrap() == "Yes")
            .count();
        assert!(head_rate > 150 && head_rate < 380, "minority {head_rate}");
    }

    #[test]
    fn preprocessing_chain_accepts_the_synthetic_table() {
        let table = synthetic_telco_table(1500, 3);
        let ds = preprocess::preprocess_telco(&table).unwrap();
        assert_eq!(ds.n_rows(), 1000);
        assert!(ds.features.iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn blank_total_charges_appear_at_the_expected_rate() {
        let rows = generate_rows(7043, 1);
        let blanks = rows.iter().filter(|r| r.cells[19] == " ").count();
        assert!(blanks >= 3 && blanks <= 30, "blanks {blanks}");
    }
}
