//! Finite-dimensional matrix analysis: singular values, operator absolute
//! value, polar decomposition, Schatten / Ky Fan / operator norms, spectral
//! calculus for scalar functions, and the operator Jensen inequality.

mod jensen;
mod norms;
mod phi;
mod spectral;

pub use jensen::{convex_sum_check, operator_jensen_check};
pub use norms::{kyfan_dominance_check, norm, schatten_power_sum, NormKind, SingularSpectrum};
pub use phi::{FunctionShape, ScalarFunction};
pub use spectral::{
    abs_operator, apply_scalar_function, hermitian_eigenvalues, polar_decomposition,
    singular_values, PolarDecomposition,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

/// Dense complex matrix used throughout the library.
pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not Hermitian within tolerance (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },
    #[error(
        "decomposition of a {rows}x{cols} matrix did not converge \
         (Frobenius norm {frobenius:.3e}, largest entry {max_abs:.3e})"
    )]
    Decomposition {
        rows: usize,
        cols: usize,
        frobenius: f64,
        max_abs: f64,
    },
    #[error("Schatten exponent must be positive, got {0}")]
    InvalidExponent(f64),
    #[error("Ky Fan order must be at least 1")]
    InvalidKyFanOrder,
    #[error("Schatten({p}) with p < 1 is a quasinorm, not a unitarily invariant norm")]
    QuasinormNotUin { p: f64 },
    #[error("weights must be positive and sum to 1 (sum was {sum})")]
    WeightSum { sum: f64 },
    #[error("scalar function {name:?} violates its declared {shape} shape near t = {at}")]
    ShapeViolation {
        name: String,
        shape: &'static str,
        at: f64,
    },
    #[error("scalar function {name:?} must vanish at 0, got {value}")]
    NotZeroAtZero { name: String, value: f64 },
    #[error("expected at least one matrix")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    DimMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },
}

/// True when every entry is finite (no NaN or infinity).
pub fn is_finite(a: &CMatrix) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn ensure_finite(a: &CMatrix) -> Result<(), OperatorError> {
    if is_finite(a) {
        Ok(())
    } else {
        Err(OperatorError::NonFinite)
    }
}

/// Validating constructor from row data.
pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<CMatrix, OperatorError> {
    if rows.is_empty() || rows[0].is_empty() {
        return Err(OperatorError::EmptyInput);
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(OperatorError::DimMismatch {
            expected: cols,
            rows: rows.len(),
            cols: rows.iter().map(|r| r.len()).max().unwrap_or(0),
        });
    }
    let m = CMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]);
    ensure_finite(&m)?;
    Ok(m)
}

/// Largest entry magnitude.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest deviation from Hermitian symmetry, `max |a_ij - conj(a_ji)|`.
pub fn hermitian_defect(a: &CMatrix) -> f64 {
    if a.nrows() != a.ncols() {
        return f64::INFINITY;
    }
    let mut defect = 0.0f64;
    for i in 0..a.nrows() {
        for j in i..a.ncols() {
            defect = defect.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    defect
}

/// Hermitian part `(A + A^H)/2`.
pub fn hermitize(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).map(|z| z * 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_rows_rejects_non_finite() {
        let bad = vec![vec![Complex64::new(f64::NAN, 0.0)]];
        assert_eq!(from_rows(&bad), Err(OperatorError::NonFinite));
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let bad = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            vec![Complex64::new(3.0, 0.0)],
        ];
        assert!(matches!(
            from_rows(&bad),
            Err(OperatorError::DimMismatch { .. })
        ));
    }

    #[test]
    fn hermitian_defect_detects_asymmetry() {
        let a = from_rows(&[
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)],
        ])
        .unwrap();
        // conj(a_10) = -i while a_01 = i, defect |i - (-i)| = 2.
        assert!((hermitian_defect(&a) - 2.0).abs() < 1e-15);
        assert_eq!(hermitian_defect(&hermitize(&a)), 0.0);
    }
}
