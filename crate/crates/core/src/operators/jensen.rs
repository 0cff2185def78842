//! The operator Jensen inequality for normalized weights and the
//! convex-function sum inequality, both reported with the direction chosen
//! by the declared shape of `phi`:
//!
//! * Jensen: `|||phi(sum_t w_t A_t)||| <= |||sum_t w_t phi(A_t)|||` for
//!   convex `phi` with `phi(0) = 0`; reversed for concave `phi` with
//!   `phi(0) = 0`, `phi(inf) = inf`.
//! * Sum form: `|||sum_n phi(A_n)||| <= |||phi(sum_n A_n)|||`, same reversal.

use super::phi::ScalarFunction;
use super::spectral::{apply_scalar_function, ensure_psd, singular_values};
use super::{CMatrix, NormKind, OperatorError};
use crate::report::{digest_matrices, InequalityReport, ReportParams};
use crate::tol;

/// Compares `|||phi(sum w_t A_t)|||` against `|||sum w_t phi(A_t)|||` for a
/// finitely supported field of PSD matrices with positive weights summing
/// to 1.
pub fn operator_jensen_check(
    field: &[(f64, CMatrix)],
    phi: &ScalarFunction,
    kind: NormKind,
) -> Result<InequalityReport, OperatorError> {
    kind.validate_uin()?;
    if field.is_empty() {
        return Err(OperatorError::EmptyInput);
    }
    let total: f64 = field.iter().map(|(w, _)| w).sum();
    if field.iter().any(|(w, _)| *w <= 0.0) || (total - 1.0).abs() > 1e-12 {
        return Err(OperatorError::WeightSum { sum: total });
    }
    let d = field[0].1.nrows();
    for (_, a) in field {
        if a.nrows() != d || a.ncols() != d {
            return Err(OperatorError::DimMismatch {
                expected: d,
                rows: a.nrows(),
                cols: a.ncols(),
            });
        }
        ensure_psd(a)?;
    }

    let mut mean = CMatrix::zeros(d, d);
    let mut mean_phi = CMatrix::zeros(d, d);
    for (w, a) in field {
        mean += a.map(|z| z * *w);
        mean_phi += apply_scalar_function(a, phi)?.map(|z| z * *w);
    }
    let lhs = kind.apply(&singular_values(&apply_scalar_function(&mean, phi)?)?);
    let rhs = kind.apply(&singular_values(&mean_phi)?);

    let matrices: Vec<CMatrix> = field.iter().map(|(_, a)| a.clone()).collect();
    let digest = digest_matrices("jensen", &matrices);
    let params = ReportParams::new()
        .with_phi(phi.name())
        .with_norm(&kind.label())
        .with_dim(d);
    Ok(InequalityReport::evaluate(
        "jensen",
        phi.shape().direction(),
        lhs,
        rhs,
        tol::report(rhs, None),
        params,
        digest,
    ))
}

/// Compares `|||sum_n phi(A_n)|||` against `|||phi(sum_n A_n)|||` for PSD
/// parts.
pub fn convex_sum_check(
    parts: &[CMatrix],
    phi: &ScalarFunction,
    kind: NormKind,
) -> Result<InequalityReport, OperatorError> {
    kind.validate_uin()?;
    if parts.is_empty() {
        return Err(OperatorError::EmptyInput);
    }
    let d = parts[0].nrows();
    for a in parts {
        if a.nrows() != d || a.ncols() != d {
            return Err(OperatorError::DimMismatch {
                expected: d,
                rows: a.nrows(),
                cols: a.ncols(),
            });
        }
        ensure_psd(a)?;
    }

    let mut total = CMatrix::zeros(d, d);
    let mut total_phi = CMatrix::zeros(d, d);
    for a in parts {
        total += a;
        total_phi += apply_scalar_function(a, phi)?;
    }
    let lhs = kind.apply(&singular_values(&total_phi)?);
    let rhs = kind.apply(&singular_values(&apply_scalar_function(&total, phi)?)?);

    let digest = digest_matrices("convex-sum", parts);
    let params = ReportParams::new()
        .with_phi(phi.name())
        .with_norm(&kind.label())
        .with_dim(d);
    Ok(InequalityReport::evaluate(
        "convex-sum",
        phi.shape().direction(),
        lhs,
        rhs,
        tol::report(rhs, None),
        params,
        digest,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn diag(values: &[f64]) -> CMatrix {
        CMatrix::from_fn(values.len(), values.len(), |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    #[test]
    fn jensen_point_mass_is_equality() {
        let field = vec![(1.0, diag(&[1.0, 3.0]))];
        let r =
            operator_jensen_check(&field, &ScalarFunction::square(), NormKind::Schatten(1.0))
                .unwrap();
        assert!(r.holds);
        assert!(r.margin.abs() <= 1e-10, "margin {}", r.margin);
    }

    #[test]
    fn jensen_linear_phi_is_equality() {
        let field = vec![(0.25, diag(&[1.0, 3.0])), (0.75, diag(&[2.0, 0.5]))];
        let r =
            operator_jensen_check(&field, &ScalarFunction::identity(), NormKind::Schatten(1.0))
                .unwrap();
        assert!(r.holds);
        assert!(r.margin.abs() <= 1e-10);
    }

    #[test]
    fn jensen_rejects_bad_weights() {
        let field = vec![(0.5, diag(&[1.0])), (0.4, diag(&[1.0]))];
        assert!(matches!(
            operator_jensen_check(&field, &ScalarFunction::square(), NormKind::Operator),
            Err(OperatorError::WeightSum { .. })
        ));
    }

    #[test]
    fn convex_sum_single_part_is_equality() {
        let r = convex_sum_check(
            &[diag(&[2.0, 1.0])],
            &ScalarFunction::square(),
            NormKind::Schatten(1.0),
        )
        .unwrap();
        assert!(r.holds);
        assert!(r.margin.abs() <= 1e-10);
    }

    #[test]
    fn convex_sum_diagonal_margin_is_cross_term_trace() {
        // For phi = t^2 and commuting parts, phi(A+B) - phi(A) - phi(B) =
        // AB + BA, so the trace-norm margin is 2 tr(AB).
        let a = diag(&[1.0, 2.0]);
        let b = diag(&[3.0, 0.5]);
        let r = convex_sum_check(
            &[a.clone(), b.clone()],
            &ScalarFunction::square(),
            NormKind::Schatten(1.0),
        )
        .unwrap();
        let cross = 2.0 * (1.0 * 3.0 + 2.0 * 0.5);
        assert!(r.holds);
        assert!((r.margin - cross).abs() < 1e-10, "margin {}", r.margin);
    }

    #[test]
    fn convex_sum_rejects_non_psd() {
        let err = convex_sum_check(
            &[diag(&[1.0, -2.0])],
            &ScalarFunction::square(),
            NormKind::Operator,
        );
        assert!(matches!(
            err,
            Err(OperatorError::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn quasinorm_rejected_for_uin_checks() {
        let err = convex_sum_check(
            &[diag(&[1.0])],
            &ScalarFunction::square(),
            NormKind::Schatten(0.5),
        );
        assert!(matches!(err, Err(OperatorError::QuasinormNotUin { .. })));
    }
}
