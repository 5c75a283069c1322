//! Tabular data: typed CSV ingestion and the in-memory dataset.

use crate::error::{Error, Result};
use ndarray::{Array2, ArrayView1};
use std::fs;
use std::path::{Path, PathBuf};

/// A column as read from disk, typed by inference.
#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    /// Every non-empty cell parsed as f64; empty cells become NaN.
    Numeric(Vec<f64>),
    Text(Vec<String>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Numeric(v) => v.len(),
            Column::Text(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A parsed CSV table with original column order preserved.
#[derive(Debug, Clone)]
pub struct RawTable {
    pub headers: Vec<String>,
    pub columns: Vec<Column>,
    pub source: String,
}

impl RawTable {
    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, Column::len)
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.headers
            .iter()
            .position(|h| h == name)
            .map(|i| &self.columns[i])
    }
}

/// Optional per-column type overrides for [`load_csv`].
#[derive(Debug, Clone, Default)]
pub struct SchemaHints {
    /// Columns to keep as text even if every cell parses numerically.
    pub force_text: Vec<String>,
}

/// Reads a headered CSV into typed columns.
///
/// A column is numeric when every non-blank cell parses as a float; blank
/// cells in numeric columns become NaN. Malformed rows are reported with
/// their 1-based row number.
pub fn load_csv(path: &Path, hints: &SchemaHints) -> Result<RawTable> {
    let file = fs::File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(file);
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Parse {
            row: 0,
            message: format!("missing or unreadable header: {e}"),
        })?
        .iter()
        .map(str::to_owned)
        .collect();
    if headers.is_empty() {
        return Err(Error::Parse {
            row: 0,
            message: "empty file: no header row".into(),
        });
    }

    let mut cells: Vec<Vec<String>> = vec![Vec::new(); headers.len()];
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            row: row_idx + 1,
            message: e.to_string(),
        })?;
        if record.len() != headers.len() {
            return Err(Error::Parse {
                row: row_idx + 1,
                message: format!("expected {} fields, got {}", headers.len(), record.len()),
            });
        }
        for (col, field) in record.iter().enumerate() {
            cells[col].push(field.to_owned());
        }
    }

    let columns = headers
        .iter()
        .zip(cells)
        .map(|(name, values)| infer_column(name, values, hints))
        .collect();

    Ok(RawTable {
        headers,
        columns,
        source: path.display().to_string(),
    })
}

/// Builds a typed table from in-memory rows, using the same type inference
/// as the CSV loader.
pub(crate) fn table_from_rows(
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
    source: String,
) -> RawTable {
    let mut cells: Vec<Vec<String>> = vec![Vec::with_capacity(rows.len()); headers.len()];
    for row in rows {
        assert_eq!(row.len(), headers.len());
        for (col, value) in row.into_iter().enumerate() {
            cells[col].push(value);
        }
    }
    let hints = SchemaHints::default();
    let columns = headers
        .iter()
        .zip(cells)
        .map(|(name, values)| infer_column(name, values, &hints))
        .collect();
    RawTable {
        headers,
        columns,
        source,
    }
}

fn infer_column(name: &str, values: Vec<String>, hints: &SchemaHints) -> Column {
    if hints.force_text.iter().any(|f| f == name) {
        return Column::Text(values);
    }
    let mut parsed = Vec::with_capacity(values.len());
    let mut any_number = false;
    for v in &values {
        let t = v.trim();
        if t.is_empty() {
            parsed.push(f64::NAN);
        } else if let Ok(x) = t.parse::<f64>() {
            parsed.push(x);
            any_number = true;
        } else {
            return Column::Text(values);
        }
    }
    if any_number {
        Column::Numeric(parsed)
    } else {
        Column::Text(values)
    }
}

/// A numeric feature matrix with binary-or-multiclass labels.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub features: Array2<f64>,
    pub labels: Vec<usize>,
    pub feature_names: Vec<String>,
    pub provenance: String,
}

impl Dataset {
    pub fn new(
        features: Array2<f64>,
        labels: Vec<usize>,
        feature_names: Vec<String>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if features.nrows() != labels.len() {
            return Err(Error::Schema(format!(
                "{} rows but {} labels",
                features.nrows(),
                labels.len()
            )));
        }
        if features.ncols() != feature_names.len() {
            return Err(Error::Schema(format!(
                "{} feature columns but {} names",
                features.ncols(),
                feature_names.len()
            )));
        }
        if features.iter().any(|v| !v.is_finite()) {
            return Err(Error::Schema("features contain NaN or infinity".into()));
        }
        Ok(Self {
            features,
            labels,
            feature_names,
            provenance: provenance.into(),
        })
    }

    pub fn n_rows(&self) -> usize {
        self.features.nrows()
    }

    pub fn n_features(&self) -> usize {
        self.features.ncols()
    }

    pub fn row(&self, i: usize) -> ArrayView1<'_, f64> {
        self.features.row(i)
    }

    /// Requires labels to be 0/1 and returns (count of 0s, count of 1s).
    pub fn binary_counts(&self) -> Result<(usize, usize)> {
        let mut counts = [0usize; 2];
        for &l in &self.labels {
            if l > 1 {
                return Err(Error::Schema(format!("label {l} is not binary")));
            }
            counts[l] += 1;
        }
        Ok((counts[0], counts[1]))
    }

    /// Writes features plus a trailing `label` column, atomically.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let tmp = temp_sibling(path);
        {
            let mut w = csv::Writer::from_path(&tmp)?;
            let mut header: Vec<&str> = self.feature_names.iter().map(String::as_str).collect();
            header.push("label");
            w.write_record(&header)?;
            for (row, &label) in self.features.rows().into_iter().zip(&self.labels) {
                let mut record: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                record.push(label.to_string());
                w.write_record(&record)?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Temp path in the same directory, so the final rename stays on one filesystem.
pub(crate) fn temp_sibling(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(format!(".tmp.{}", std::process::id()));
    path.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use std::io::Write;

    fn write_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
        let path = dir.path().join(name);
        let mut f = fs::File::create(&path).unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        path
    }

    #[test]
    fn loads_typed_columns_in_order() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(&dir, "t.csv", "name,score,tag\nalice,1.5,x\nbob,2.0,y\n");
        let table = load_csv(&path, &SchemaHints::default()).unwrap();
        assert_eq!(table.headers, vec!["name", "score", "tag"]);
        assert_eq!(table.n_rows(), 2);
        assert!(matches!(table.columns[0], Column::Text(_)));
        assert!(matches!(table.columns[1], Column::Numeric(_)));
    }

    #[test]
    fn quoted_comma_field_is_preserved() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            &dir,
            "q.csv",
            "id,note,v\n1,\"a, with comma\",0.5\n2,plain,0.7\n3,\"x,y,z\",0.9\n",
        );
        let table = load_csv(&path, &SchemaHints::default()).unwrap();
        match table.column("note").unwrap() {
            Column::Text(values) => {
                assert_eq!(values[0], "a, with comma");
                assert_eq!(values[2], "x,y,z");
            }
            _ => panic!("note should be text"),
        }
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(&dir, "e.csv", "");
        assert!(matches!(
            load_csv(&path, &SchemaHints::default()),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn ragged_row_reports_its_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(&dir, "r.csv", "a,b\n1,2\n3\n");
        match load_csv(&path, &SchemaHints::default()) {
            Err(Error::Parse { row, .. }) => assert_eq!(row, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_file_error_names_the_path() {
        let err = load_csv(Path::new("/no/such/file.csv"), &SchemaHints::default()).unwrap_err();
        assert!(err.to_string().contains("/no/such/file.csv"));
    }

    #[test]
    fn blank_cells_in_numeric_columns_become_nan() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(&dir, "n.csv", "v\n1.5\n \n2.5\n");
        let table = load_csv(&path, &SchemaHints::default()).unwrap();
        match &table.columns[0] {
            Column::Numeric(values) => {
                assert!(values[1].is_nan());
                assert_eq!(values[2], 2.5);
            }
            _ => panic!("should infer numeric"),
        }
    }

    #[test]
    fn dataset_round_trips_through_csv() {
        let dir = tempfile::tempdir().unwrap();
        let ds = Dataset::new(
            array![[0.125, 0.5], [0.75, 1.0]],
            vec![0, 1],
            vec!["a".into(), "b".into()],
            "test",
        )
        .unwrap();
        let path = dir.path().join("out.csv");
        ds.write_csv(&path).unwrap();
        let table = load_csv(&path, &SchemaHints::default()).unwrap();
        assert_eq!(table.headers, vec!["a", "b", "label"]);
        match table.column("a").unwrap() {
            Column::Numeric(v) => assert_eq!(v, &vec![0.125, 0.75]),
            _ => panic!(),
        }
    }

    #[test]
    fn dataset_rejects_nan_features() {
        let err = Dataset::new(
            array![[f64::NAN]],
            vec![0],
            vec!["a".into()],
            "test",
        )
        .unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }
}
