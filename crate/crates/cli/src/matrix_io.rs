//! Matrix files: headerless CSV rows, or JSON `{"rows", "cols", "data"}` in row-major order.

use std::fs;
use std::path::Path;

use spectral_perturb::Matrix;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Json,
}

impl MatrixFormat {
    /// `.json` files are JSON, `.csv` files CSV; anything else is sniffed from the contents.
    pub fn detect(path: &Path, contents: &str) -> Self {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("json") => MatrixFormat::Json,
            Some("csv") => MatrixFormat::Csv,
            _ if contents.trim_start().starts_with('{') => MatrixFormat::Json,
            _ => MatrixFormat::Csv,
        }
    }
}

pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    match MatrixFormat::detect(path, &text) {
        MatrixFormat::Json => parse_json(&text).map_err(|r| CliError::parse(path, r)),
        MatrixFormat::Csv => parse_csv(&text).map_err(|r| CliError::parse(path, r)),
    }
}

pub fn parse_json(text: &str) -> Result<Matrix, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid JSON matrix: {e}"))
}

pub fn parse_csv(text: &str) -> Result<Matrix, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| format!("row {}: {e}", i + 1))?;
        let row = record
            .iter()
            .enumerate()
            .map(|(j, field)| {
                field.parse::<f64>().map_err(|_| {
                    format!("row {}, column {}: not a number: {field:?}", i + 1, j + 1)
                })
            })
            .collect::<Result<Vec<f64>, String>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    first.len()
                ));
            }
        }
        rows.push(row);
    }
    Matrix::from_rows(&rows).map_err(|e| e.to_string())
}

/// Shortest round-trip decimal for every entry.
pub fn to_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(m: &Matrix) -> String {
    let mut s = serde_json::to_string(m).expect("finite matrix");
    s.push('\n');
    s
}

pub fn write_matrix(path: &Path, m: &Matrix, format: MatrixFormat) -> Result<(), CliError> {
    let text = match format {
        MatrixFormat::Csv => to_csv(m),
        MatrixFormat::Json => to_json(m),
    };
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}
