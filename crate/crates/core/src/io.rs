//! JSON code files and ordering files.
//!
//! A code file is a single object:
//!
//! ```json
//! {"name": "abba", "nt": 2, "K": 4, "labels": ["x_1", ...],
//!  "weights": [[[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]], ...]}
//! ```
//!
//! Each weight matrix is an `nt`-array of rows, each row an `nt`-array of
//! `[re, im]` pairs. An ordering file is a JSON array of `K` distinct
//! 0-based indices.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::code::{LinearStbc, Ordering};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeFile {
    name: String,
    nt: usize,
    #[serde(rename = "K")]
    k: usize,
    labels: Vec<String>,
    weights: Vec<Vec<Vec<[f64; 2]>>>,
}

/// Parses and validates a code from JSON text.
pub fn parse_code(text: &str) -> Result<LinearStbc> {
    let raw: CodeFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    if raw.labels.len() != raw.k {
        return Err(Error::Validation(format!(
            "field 'labels': K = {} but {} labels given",
            raw.k,
            raw.labels.len()
        )));
    }
    if raw.weights.len() != raw.k {
        return Err(Error::Validation(format!(
            "field 'weights': K = {} but {} matrices given",
            raw.k,
            raw.weights.len()
        )));
    }
    let mut weights = Vec::with_capacity(raw.k);
    for (i, rows) in raw.weights.iter().enumerate() {
        if rows.len() != raw.nt {
            return Err(Error::Validation(format!(
                "field 'weights[{i}]': {} rows, expected nt = {}",
                rows.len(),
                raw.nt
            )));
        }
        let mut data = Vec::with_capacity(raw.nt * raw.nt);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != raw.nt {
                return Err(Error::Validation(format!(
                    "field 'weights[{i}][{r}]': {} entries, expected nt = {} (codes must be square)",
                    row.len(),
                    raw.nt
                )));
            }
            data.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
        }
        let m = ComplexMatrix::new(raw.nt, raw.nt, data)
            .map_err(|e| Error::Validation(format!("field 'weights[{i}]': {e}")))?;
        weights.push(m);
    }
    LinearStbc::new(raw.name, raw.nt, weights, raw.labels)
}

/// Serializes a code to JSON text (pretty-printed, exact float round trip).
pub fn code_to_json(code: &LinearStbc) -> String {
    let nt = code.nt();
    let raw = CodeFile {
        name: code.name().to_string(),
        nt,
        k: code.k(),
        labels: code.labels().to_vec(),
        weights: code
            .weights()
            .iter()
            .map(|w| {
                (0..nt)
                    .map(|r| (0..nt).map(|c| [w.get(r, c).re, w.get(r, c).im]).collect())
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("code serializes")
}

pub fn load_code(path: impl AsRef<Path>) -> Result<LinearStbc> {
    let path = path.as_ref();
    let text = read(path)?;
    parse_code(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn save_code(code: &LinearStbc, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, code_to_json(code) + "\n").map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Parses a JSON array of distinct 0-based indices.
pub fn parse_ordering(text: &str) -> Result<Ordering> {
    let perm: Vec<usize> = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("ordering, line {}, column {}: {e}", e.line(), e.column())))?;
    Ordering::new(perm)
}

pub fn ordering_to_json(ord: &Ordering) -> String {
    serde_json::to_string(ord.as_slice()).expect("ordering serializes")
}

pub fn load_ordering(path: impl AsRef<Path>) -> Result<Ordering> {
    parse_ordering(&read(path.as_ref())?)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
