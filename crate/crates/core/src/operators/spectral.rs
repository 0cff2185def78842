//! Decomposition-backed operations: singular values, `|A| = (A^H A)^{1/2}`,
//! the polar decomposition `A = U |A|`, and the spectral calculus
//! `A -> phi(A)` for Hermitian positive semidefinite matrices.

use super::norms::SingularSpectrum;
use super::phi::ScalarFunction;
use super::{ensure_finite, hermitian_defect, hermitize, max_abs, CMatrix, OperatorError};
use crate::tol;
use nalgebra::{DMatrix, DVector, Dyn, SVD};
use num_complex::Complex64;

const SVD_MAX_ITER: usize = 100_000;

pub(crate) fn try_svd(a: &CMatrix) -> Result<SVD<Complex64, Dyn, Dyn>, OperatorError> {
    ensure_finite(a)?;
    a.clone()
        .try_svd(true, true, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| OperatorError::Decomposition {
            rows: a.nrows(),
            cols: a.ncols(),
            frobenius: a.norm(),
            max_abs: max_abs(a),
        })
}

/// Singular values in nonincreasing order.
pub fn singular_values(a: &CMatrix) -> Result<SingularSpectrum, OperatorError> {
    ensure_finite(a)?;
    let values = a
        .clone()
        .try_svd(false, false, f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| OperatorError::Decomposition {
            rows: a.nrows(),
            cols: a.ncols(),
            frobenius: a.norm(),
            max_abs: max_abs(a),
        })?
        .singular_values;
    Ok(SingularSpectrum::from_unsorted(values.iter().copied()))
}

/// The operator absolute value `|A| = (A^H A)^{1/2}`, a `cols x cols`
/// Hermitian PSD matrix with the same singular values as `A`.
pub fn abs_operator(a: &CMatrix) -> Result<CMatrix, OperatorError> {
    let svd = try_svd(a)?;
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    // |A| = V diag(s) V^H.
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        svd.singular_values.len(),
        svd.singular_values.iter().map(|s| Complex64::new(*s, 0.0)),
    ));
    Ok(hermitize(&(v_t.adjoint() * d * v_t)))
}

/// Result of the polar decomposition `A = U P`.
#[derive(Debug, Clone)]
pub struct PolarDecomposition {
    /// Unitary factor; on rank-deficient input the kernel part is completed
    /// to a full unitary by the decomposition's singular bases.
    pub unitary: CMatrix,
    /// The Hermitian PSD factor `P = |A|`.
    pub positive: CMatrix,
}

/// Polar decomposition of a square matrix via its SVD:
/// `A = (U_s V^H)(V S V^H)`.
pub fn polar_decomposition(a: &CMatrix) -> Result<PolarDecomposition, OperatorError> {
    if a.nrows() != a.ncols() {
        return Err(OperatorError::NotSquare {
            op: "polar decomposition",
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let svd = try_svd(a)?;
    let u_s = svd.u.as_ref().expect("u requested");
    let v_t = svd.v_t.as_ref().expect("v_t requested");
    let unitary = u_s * v_t;
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        svd.singular_values.len(),
        svd.singular_values.iter().map(|s| Complex64::new(*s, 0.0)),
    ));
    let positive = hermitize(&(v_t.adjoint() * d * v_t));
    Ok(PolarDecomposition { unitary, positive })
}

/// Eigenvalues of a Hermitian matrix in nondecreasing order.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Result<Vec<f64>, OperatorError> {
    ensure_finite(a)?;
    if a.nrows() != a.ncols() {
        return Err(OperatorError::NotSquare {
            op: "hermitian eigendecomposition",
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let h = hermitize(a);
    let eig = h
        .try_symmetric_eigen(f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| OperatorError::Decomposition {
            rows: a.nrows(),
            cols: a.ncols(),
            frobenius: a.norm(),
            max_abs: max_abs(a),
        })?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(values)
}

/// Applies a scalar function to a Hermitian PSD matrix through its
/// eigendecomposition: eigenvalues are clamped at zero within tolerance,
/// mapped through `phi`, and reassembled on the same eigenvectors.
pub fn apply_scalar_function(
    a: &CMatrix,
    phi: &ScalarFunction,
) -> Result<CMatrix, OperatorError> {
    ensure_finite(a)?;
    if a.nrows() != a.ncols() {
        return Err(OperatorError::NotSquare {
            op: "scalar function calculus",
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let scale = 1.0 + max_abs(a);
    let defect = hermitian_defect(a);
    if defect > tol::PSD_EIG * scale {
        return Err(OperatorError::NotHermitian { defect });
    }
    let h = hermitize(a);
    let eig = h
        .try_symmetric_eigen(f64::EPSILON, SVD_MAX_ITER)
        .ok_or_else(|| OperatorError::Decomposition {
            rows: a.nrows(),
            cols: a.ncols(),
            frobenius: a.norm(),
            max_abs: max_abs(a),
        })?;
    let mut mapped = Vec::with_capacity(eig.eigenvalues.len());
    for lambda in eig.eigenvalues.iter() {
        if *lambda < -tol::PSD_EIG * scale {
            return Err(OperatorError::NotPositiveSemidefinite { eigenvalue: *lambda });
        }
        mapped.push(Complex64::new(phi.eval(lambda.max(0.0)), 0.0));
    }
    let d = DMatrix::from_diagonal(&DVector::from_vec(mapped));
    let q = &eig.eigenvectors;
    Ok(hermitize(&(q * d * q.adjoint())))
}

/// Errors unless `a` is Hermitian PSD within tolerance.
pub(crate) fn ensure_psd(a: &CMatrix) -> Result<(), OperatorError> {
    let scale = 1.0 + max_abs(a);
    let defect = hermitian_defect(a);
    if defect > tol::PSD_EIG * scale {
        return Err(OperatorError::NotHermitian { defect });
    }
    let eig = hermitian_eigenvalues(a)?;
    if let Some(min) = eig.first() {
        if *min < -tol::PSD_EIG * scale {
            return Err(OperatorError::NotPositiveSemidefinite { eigenvalue: *min });
        }
    }
    Ok(())
}
