//! The matrix file format: a JSON document
//!
//! ```text
//! {
//!   "dims": [2, 2],
//!   "matrix": [
//!     [[0.5, 0], [0, 0], ...],
//!     ...
//!   ]
//! }
//! ```
//!
//! with one `[real, imaginary]` pair per entry. Numbers are written in
//! shortest round-trip form, so reading a written file reproduces every entry
//! bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use lucoset::linalg::ComplexMatrix;
use lucoset::young::LocalStructure;
use lucoset::Complex64;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub dims: LocalStructure,
    pub matrix: ComplexMatrix,
}

#[derive(Deserialize)]
struct RawMatrixFile {
    dims: Vec<usize>,
    matrix: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawMatrixFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        let dims = LocalStructure::new(raw.dims).map_err(|e| CliError::Parse(e.to_string()))?;
        let n = raw.matrix.len();
        if let Some(i) = raw.matrix.iter().position(|row| row.len() != n) {
            return Err(CliError::Parse(format!(
                "matrix row {} has {} entries, expected {n}",
                i + 1,
                raw.matrix[i].len()
            )));
        }
        let rows: Vec<Vec<Complex64>> = raw
            .matrix
            .into_iter()
            .map(|row| row.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let matrix = ComplexMatrix::from_rows(&rows).map_err(|e| CliError::Parse(e.to_string()))?;
        if dims.total() != n {
            return Err(CliError::Parse(format!(
                "dims {dims} multiply to {} but the matrix is {n}x{n}",
                dims.total()
            )));
        }
        Ok(Self { dims, matrix })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        let dims: Vec<String> = self.dims.dims().iter().map(usize::to_string).collect();
        let mut out = String::new();
        let _ = write!(out, "{{\n  \"dims\": [{}],\n  \"matrix\": {}\n}}\n", dims.join(", "), matrix_json(&self.matrix, "  "));
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json())
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
    }
}

/// Shortest round-trip decimal for a finite float.
pub fn number(x: f64) -> String {
    serde_json::to_string(&x).expect("finite float")
}

/// A matrix as nested `[re, im]` rows, one row per line, indented by `indent`.
pub fn matrix_json(m: &ComplexMatrix, indent: &str) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let entries: Vec<String> = m
                .row(i)
                .iter()
                .map(|z| format!("[{}, {}]", number(z.re), number(z.im)))
                .collect();
            format!("{indent}  [{}]", entries.join(", "))
        })
        .collect();
    format!("[\n{}\n{indent}]", rows.join(",\n"))
}

/// Parses a matrix given as nested `[re, im]` rows.
pub fn matrix_from_value(value: &serde_json::Value) -> Result<ComplexMatrix, CliError> {
    let rows: Vec<Vec<[f64; 2]>> =
        serde_json::from_value(value.clone()).map_err(|e| CliError::Parse(e.to_string()))?;
    let rows: Vec<Vec<Complex64>> =
        rows.into_iter().map(|r| r.into_iter().map(|[a, b]| Complex64::new(a, b)).collect()).collect();
    ComplexMatrix::from_rows(&rows).map_err(|e| CliError::Parse(e.to_string()))
}
