//! The churn-table preprocessing chain: identifier drop, numeric coercion,
//! NaN-row drop, one-hot expansion, min-max scaling, row cap.

use crate::dataset::{Column, Dataset, RawTable};
use crate::error::{Error, Result};
use ndarray::{Array2, ArrayView2};
use serde::{Deserialize, Serialize};

pub const ID_COLUMN: &str = "customerID";
pub const COERCE_COLUMN: &str = "TotalCharges";
pub const LABEL_COLUMN: &str = "Churn";
pub const ROW_CAP: usize = 1000;

/// A cleaned table: typed feature columns and binary labels, before any
/// statistical transform.
#[derive(Debug, Clone)]
pub struct CleanTable {
    pub names: Vec<String>,
    pub columns: Vec<Column>,
    pub labels: Vec<usize>,
}

impl CleanTable {
    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }
}

/// Drops the identifier, coerces `TotalCharges` to numeric, removes rows
/// with any NaN, and extracts `Churn` (Yes → 1) as the label.
pub fn telco_clean(raw: &RawTable) -> Result<CleanTable> {
    for required in [ID_COLUMN, COERCE_COLUMN, LABEL_COLUMN] {
        if raw.column(required).is_none() {
            return Err(Error::Schema(format!("expected column '{required}'")));
        }
    }

    // Coerce TotalCharges: blank or unparseable cells become NaN.
    let coerced: Vec<(String, Column)> = raw
        .headers
        .iter()
        .zip(&raw.columns)
        .filter(|(name, _)| name.as_str() != ID_COLUMN)
        .map(|(name, col)| {
            let col = if name == COERCE_COLUMN {
                match col {
                    Column::Numeric(v) => Column::Numeric(v.clone()),
                    Column::Text(v) => Column::Numeric(
                        v.iter()
                            .map(|s| s.trim().parse::<f64>().unwrap_or(f64::NAN))
                            .collect(),
                    ),
                }
            } else {
                col.clone()
            };
            (name.clone(), col)
        })
        .collect();

    // Rows to keep: no NaN in any numeric column.
    let n = raw.n_rows();
    let keep: Vec<usize> = (0..n)
        .filter(|&i| {
            coerced.iter().all(|(_, col)| match col {
                Column::Numeric(v) => v[i].is_finite(),
                Column::Text(_) => true,
            })
        })
        .collect();

    let mut names = Vec::new();
    let mut columns = Vec::new();
    let mut labels = Vec::new();
    for (name, col) in &coerced {
        if name == LABEL_COLUMN {
            match col {
                Column::Text(v) => {
                    labels = keep.iter().map(|&i| usize::from(v[i] == "Yes")).collect();
                }
                Column::Numeric(v) => {
                    labels = keep.iter().map(|&i| usize::from(v[i] != 0.0)).collect();
                }
            }
            continue;
        }
        let filtered = match col {
            Column::Numeric(v) => Column::Numeric(keep.iter().map(|&i| v[i]).collect()),
            Column::Text(v) => Column::Text(keep.iter().map(|&i| v[i].clone()).collect()),
        };
        names.push(name.clone());
        columns.push(filtered);
    }

    Ok(CleanTable {
        names,
        columns,
        labels,
    })
}

/// One indicator column per category, categories in lexicographic order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OneHotEncoder {
    /// For each source column: None for numeric passthrough, or the sorted
    /// category list.
    per_column: Vec<Option<Vec<String>>>,
    output_names: Vec<String>,
}

impl OneHotEncoder {
    /// Learns categories from the rows at `fit_rows` (all rows when None).
    pub fn fit(table: &CleanTable, fit_rows: Option<&[usize]>) -> Self {
        let per_column: Vec<Option<Vec<String>>> = table
            .columns
            .iter()
            .map(|col| match col {
                Column::Numeric(_) => None,
                Column::Text(values) => {
                    let mut cats: Vec<String> = match fit_rows {
                        Some(rows) => rows.iter().map(|&i| values[i].clone()).collect(),
                        None => values.clone(),
                    };
                    cats.sort();
                    cats.dedup();
                    Some(cats)
                }
            })
            .collect();
        let mut output_names = Vec::new();
        for (name, cats) in table.names.iter().zip(&per_column) {
            match cats {
                None => output_names.push(name.clone()),
                Some(cats) => {
                    for c in cats {
                        output_names.push(format!("{name}={c}"));
                    }
                }
            }
        }
        Self {
            per_column,
            output_names,
        }
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn n_outputs(&self) -> usize {
        self.output_names.len()
    }

    /// Expands the selected rows into the numeric design matrix. Categories
    /// unseen at fit time map to all-zero indicators.
    pub fn transform(&self, table: &CleanTable, rows: &[usize]) -> Array2<f64> {
        let mut out = Array2::zeros((rows.len(), self.n_outputs()));
        for (r, &row) in rows.iter().enumerate() {
            let mut j = 0usize;
            for (col, cats) in table.columns.iter().zip(&self.per_column) {
                match (col, cats) {
                    (Column::Numeric(v), None) => {
                        out[[r, j]] = v[row];
                        j += 1;
                    }
                    (Column::Text(v), Some(cats)) => {
                        if let Ok(pos) = cats.binary_search(&v[row]) {
                            out[[r, j + pos]] = 1.0;
                        }
                        j += cats.len();
                    }
                    _ => unreachable!("encoder fitted on a different table shape"),
                }
            }
        }
        out
    }
}

/// Per-column min-max scaling to [0, 1]; constant columns map to 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinMaxScaler {
    mins: Vec<f64>,
    ranges: Vec<f64>,
}

impl MinMaxScaler {
    pub fn fit(data: ArrayView2<'_, f64>) -> Self {
        let d = data.ncols();
        let mut mins = vec![f64::INFINITY; d];
        let mut maxs = vec![f64::NEG_INFINITY; d];
        for row in data.rows() {
            for (j, &v) in row.iter().enumerate() {
                mins[j] = mins[j].min(v);
                maxs[j] = maxs[j].max(v);
            }
        }
        let ranges = mins
            .iter()
            .zip(&maxs)
            .map(|(&lo, &hi)| hi - lo)
            .collect();
        Self { mins, ranges }
    }

    pub fn transform(&self, data: ArrayView2<'_, f64>) -> Array2<f64> {
        let mut out = data.to_owned();
        for mut row in out.rows_mut() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = if self.ranges[j] > 0.0 {
                    (*v - self.mins[j]) / self.ranges[j]
                } else {
                    0.0
                };
            }
        }
        out
    }

    /// Transform then clamp into [0, 1]; used on evaluation rows whose raw
    /// values may fall outside the fitted range.
    pub fn transform_clamped(&self, data: ArrayView2<'_, f64>) -> Array2<f64> {
        let mut out = self.transform(data);
        out.mapv_inplace(|v| v.clamp(0.0, 1.0));
        out
    }
}

/// The full preprocessing contract: clean, one-hot, min-max to [0, 1],
/// then cap to the first [`ROW_CAP`] rows in file order.
pub fn preprocess_telco(raw: &RawTable) -> Result<Dataset> {
    let clean = telco_clean(raw)?;
    let all_rows: Vec<usize> = (0..clean.n_rows()).collect();
    let encoder = OneHotEncoder::fit(&clean, None);
    let design = encoder.transform(&clean, &all_rows);
    let scaler = MinMaxScaler::fit(design.view());
    let scaled = scaler.transform(design.view());

    let n = clean.n_rows().min(ROW_CAP);
    let features = scaled.slice(ndarray::s![..n, ..]).to_owned();
    let labels = clean.labels[..n].to_vec();
    Dataset::new(
        features,
        labels,
        encoder.output_names().to_vec(),
        format!("{} (preprocessed)", raw.source),
    )
}

/// The same chain without scaling and without losing rows beyond the cap;
/// the benchmark refits the scaler per training fold.
pub fn telco_design_matrix(raw: &RawTable, cap: Option<usize>) -> Result<Dataset> {
    let clean = telco_clean(raw)?;
    let n = cap.map_or(clean.n_rows(), |c| clean.n_rows().min(c));
    let rows: Vec<usize> = (0..n).collect();
    let encoder = OneHotEncoder::fit(&clean, None);
    let design = encoder.transform(&clean, &rows);
    Dataset::new(
        design,
        clean.labels[..n].to_vec(),
        encoder.output_names().to_vec(),
        format!("{} (design matrix)", raw.source),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_telco() -> RawTable {
        let headers = vec![
            "customerID".to_string(),
            "gender".to_string(),
            "SeniorCitizen".to_string(),
            "tenure".to_string(),
            "Contract".to_string(),
            "TotalCharges".to_string(),
            "Churn".to_string(),
        ];
        let columns = vec![
            Column::Text(vec!["a1".into(), "a2".into(), "a3".into(), "a4".into()]),
            Column::Text(vec![
                "Female".into(),
                "Male".into(),
                "Male".into(),
                "Female".into(),
            ]),
            Column::Numeric(vec![0.0, 1.0, 0.0, 0.0]),
            Column::Numeric(vec![1.0, 20.0, 40.0, 60.0]),
            Column::Text(vec![
                "Month-to-month".into(),
                "Month-to-month".into(),
                "One year".into(),
                "Two year".into(),
            ]),
            Column::Text(vec![
                "29.85".into(),
                " ".into(),
                "1840.75".into(),
                "300.0".into(),
            ]),
            Column::Text(vec!["Yes".into(), "No".into(), "No".into(), "Yes".into()]),
        ];
        RawTable {
            headers,
            columns,
            source: "tiny".into(),
        }
    }

    #[test]
    fn clean_drops_id_nan_rows_and_extracts_labels() {
        let clean = telco_clean(&tiny_telco()).unwrap();
        // Row with blank TotalCharges is gone.
        assert_eq!(clean.n_rows(), 3);
        assert!(!clean.names.iter().any(|n| n == "customerID"));
        assert_eq!(clean.labels, vec![1, 0, 1]);
    }

    #[test]
    fn missing_required_column_is_a_schema_error() {
        let mut raw = tiny_telco();
        raw.headers.retain(|h| h != "Churn");
        raw.columns.pop();
        assert!(matches!(telco_clean(&raw), Err(Error::Schema(_))));
    }

    #[test]
    fn one_hot_categories_are_lexicographic() {
        let clean = telco_clean(&tiny_telco()).unwrap();
        let encoder = OneHotEncoder::fit(&clean, None);
        let names = encoder.output_names();
        let contract_cols: Vec<&String> = names
            .iter()
            .filter(|n| n.starts_with("Contract="))
            .collect();
        assert_eq!(
            contract_cols,
            vec![
                "Contract=Month-to-month",
                "Contract=One year",
                "Contract=Two year"
            ]
        );
    }

    #[test]
    fn unseen_category_maps_to_zero_indicators() {
        let clean = telco_clean(&tiny_telco()).unwrap();
        // Fit only on rows 0 and 2 (contracts: Month-to-month, Month-to-month).
        let encoder = OneHotEncoder::fit(&clean, Some(&[0, 2]));
        let out = encoder.transform(&clean, &[1]);
        let contract_block: Vec<f64> = encoder
            .output_names()
            .iter()
            .zip(out.row(0).iter())
            .filter(|(n, _)| n.starts_with("Contract="))
            .map(|(_, &v)| v)
            .collect();
        assert!(contract_block.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn minmax_maps_to_unit_interval_and_zeroes_constants() {
        let data = ndarray::array![[1.0, 5.0], [3.0, 5.0], [2.0, 5.0]];
        let scaler = MinMaxScaler::fit(data.view());
        let out = scaler.transform(data.view());
        assert_eq!(out[[0, 0]], 0.0);
        assert_eq!(out[[1, 0]], 1.0);
        assert_eq!(out[[2, 0]], 0.5);
        assert!(out.column(1).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn preprocess_output_is_scaled_and_labeled() {
        let ds = preprocess_telco(&tiny_telco()).unwrap();
        assert_eq!(ds.n_rows(), 3);
        assert!(ds.features.iter().all(|&v| (0.0..=1.0).contains(&v)));
        assert_eq!(ds.labels, vec![1, 0, 1]);
        // gender(2) + SeniorCitizen(1) + tenure(1) + Contract(3) + TotalCharges(1)
        assert_eq!(ds.n_features(), 8);
    }
}
