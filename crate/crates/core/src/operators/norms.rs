//! Singular spectra and the norm family driving every checker: Schatten `p`
//! (a quasinorm for `0 < p < 1`), Ky Fan `(n)`, and the operator norm.

use super::spectral::singular_values;
use super::{CMatrix, OperatorError};
use crate::tol;

/// Singular values in nonincreasing order, clamped at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    /// Sorts the values and clamps everything within `1e-12 * s_1` of zero
    /// (including round-off negatives) to exactly zero, so that PSD
    /// invariants stay testable.
    pub fn from_unsorted(values: impl IntoIterator<Item = f64>) -> Self {
        let mut values: Vec<f64> = values.into_iter().collect();
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
        let cutoff = values.first().map_or(0.0, |s1| 1e-12 * s1.abs());
        for v in values.iter_mut() {
            if v.abs() <= cutoff || *v < 0.0 {
                *v = 0.0;
            }
        }
        SingularSpectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `sum s_j^p` over the nonzero singular values.
    pub fn schatten_power_sum(&self, p: f64) -> f64 {
        self.values
            .iter()
            .filter(|s| **s > 0.0)
            .map(|s| s.powf(p))
            .sum()
    }

    /// Sum of the `n` largest singular values.
    pub fn kyfan(&self, n: usize) -> f64 {
        self.values.iter().take(n).sum()
    }

    pub fn operator_norm(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

/// Selects the norm used by a checker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormKind {
    /// `(sum s_j^p)^{1/p}`; for `0 < p < 1` this is a quasinorm and is
    /// excluded from the unitarily-invariant-norm checkers.
    Schatten(f64),
    /// Sum of the `n` largest singular values.
    KyFan(usize),
    /// Largest singular value.
    Operator,
}

impl NormKind {
    pub fn validate(&self) -> Result<(), OperatorError> {
        match self {
            NormKind::Schatten(p) if !p.is_finite() || *p <= 0.0 => Err(OperatorError::InvalidExponent(*p)),
            NormKind::KyFan(0) => Err(OperatorError::InvalidKyFanOrder),
            _ => Ok(()),
        }
    }

    /// Additionally rejects the quasinorm range, which the norm-inequality
    /// checkers cannot use.
    pub fn validate_uin(&self) -> Result<(), OperatorError> {
        self.validate()?;
        match self {
            NormKind::Schatten(p) if *p < 1.0 => Err(OperatorError::QuasinormNotUin { p: *p }),
            _ => Ok(()),
        }
    }

    pub fn apply(&self, spectrum: &SingularSpectrum) -> f64 {
        match self {
            NormKind::Schatten(p) => spectrum.schatten_power_sum(*p).powf(1.0 / *p),
            NormKind::KyFan(n) => spectrum.kyfan(*n),
            NormKind::Operator => spectrum.operator_norm(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            NormKind::Schatten(p) => format!("schatten:{p}"),
            NormKind::KyFan(n) => format!("kyfan:{n}"),
            NormKind::Operator => "operator".to_string(),
        }
    }
}

/// `norm(A, kind)`.
pub fn norm(a: &CMatrix, kind: NormKind) -> Result<f64, OperatorError> {
    kind.validate()?;
    Ok(kind.apply(&singular_values(a)?))
}

/// `sum s_j(A)^p` without the final root; checkers compare these sums
/// directly to avoid the root-then-repower round trip.
pub fn schatten_power_sum(a: &CMatrix, p: f64) -> Result<f64, OperatorError> {
    if !p.is_finite() || p <= 0.0 {
        return Err(OperatorError::InvalidExponent(p));
    }
    Ok(singular_values(a)?.schatten_power_sum(p))
}

/// Ky Fan dominance: true iff `||A||_(n) <= ||B||_(n)` for every `n`, each
/// comparison taken with a scale-aware tolerance. Shorter spectra are padded
/// with zeros.
pub fn kyfan_dominance_check(a: &CMatrix, b: &CMatrix) -> Result<bool, OperatorError> {
    let sa = singular_values(a)?;
    let sb = singular_values(b)?;
    let n = sa.len().max(sb.len());
    let mut partial_a = 0.0;
    let mut partial_b = 0.0;
    for i in 0..n {
        partial_a += sa.values().get(i).copied().unwrap_or(0.0);
        partial_b += sb.values().get(i).copied().unwrap_or(0.0);
        if partial_a > partial_b + tol::scaled(tol::REPORT_REL, partial_b) {
            return Ok(false);
        }
    }
    Ok(true)
}
