//! JSON interchange: the operator-field file schema shared by the CLI and
//! the witness store.
//!
//! A field file is `{"group": "Z6", "dim": d, "values": [...]}` with one
//! matrix per group element in lexicographic order; a matrix is an array of
//! rows, each entry a `[re, im]` pair.

use crate::fourier::{FourierError, OperatorField};
use crate::groups::{parse_group, GroupError};
use crate::operators::{from_rows, CMatrix, OperatorError};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),
}

/// Matrix as rows of `[re, im]` pairs.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

/// The field file schema.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FieldJson {
    pub group: String,
    pub dim: usize,
    pub values: Vec<MatrixJson>,
}

pub fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<CMatrix, IoError> {
    let data: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
        .collect();
    Ok(from_rows(&data)?)
}

/// Serializes a field, optionally under its original group label (e.g. a
/// `T@N` circle spelling rather than the plain `Z_N` it is backed by).
pub fn field_to_json(field: &OperatorField, label: Option<&str>) -> FieldJson {
    FieldJson {
        group: label
            .map(str::to_string)
            .unwrap_or_else(|| field.group().to_string()),
        dim: field.dim(),
        values: field.values().iter().map(matrix_to_json).collect(),
    }
}

pub fn field_from_json(json: &FieldJson, cap: u64) -> Result<OperatorField, IoError> {
    let group = parse_group(&json.group, cap)?.spec().clone();
    let mut values = Vec::with_capacity(json.values.len());
    for m in &json.values {
        let m = matrix_from_json(m)?;
        if m.nrows() != json.dim || m.ncols() != json.dim {
            return Err(IoError::Operator(OperatorError::DimMismatch {
                expected: json.dim,
                rows: m.nrows(),
                cols: m.ncols(),
            }));
        }
        values.push(m);
    }
    Ok(OperatorField::new(group, values)?)
}

pub fn field_to_string(field: &OperatorField, label: Option<&str>) -> String {
    serde_json::to_string_pretty(&field_to_json(field, label))
        .expect("field serialization cannot fail")
}

pub fn field_from_str(s: &str, cap: u64) -> Result<OperatorField, IoError> {
    let json: FieldJson = serde_json::from_str(s)?;
    field_from_json(&json, cap)
}

pub fn read_field(path: &Path, cap: u64) -> Result<OperatorField, IoError> {
    field_from_str(&std::fs::read_to_string(path)?, cap)
}

pub fn write_field(path: &Path, field: &OperatorField, label: Option<&str>) -> Result<(), IoError> {
    std::fs::write(path, field_to_string(field, label))?;
    Ok(())
}
