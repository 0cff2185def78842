//! Theorem-level checkers. All of them integrate with the normalized Haar
//! measure, so every constant is 1 and the two sides are directly
//! comparable:
//!
//! * `uin`:  `|||sum_k phi(|B_k|^2)|||  vs  |||int phi(|A|^2) dmu|||`,
//!   direction from the declared shape of `phi`;
//! * `pp`:   `sum_k ||B_k||_p^p  vs  int ||A||_p^p dmu`, `<=` for `p >= 2`,
//!   reversed for `0 < p <= 2` (quasinorm range included);
//! * `alpha`: `||int |A| dmu||_p^p <= sum_k alpha_k^{1-p/2} ||B_k||_p^p`
//!   for positive rational weights summing to 1, `p >= 2`;
//! * `pq`:   `sum_k ||B_k||_p^q <= (int ||A||_p^p dmu)^{q/p}`, `1 < p <= 2`;
//! * `qp`:   `sum_k ||B_k||_p^p <= (int ||A||_p^q dmu)^{p/q}`, `p >= 2`.

use super::IneqError;
use crate::fourier::{fourier_coefficients, OperatorField};
use crate::operators::{
    abs_operator, apply_scalar_function, norm, schatten_power_sum, CMatrix, NormKind,
    ScalarFunction,
};
use crate::report::{Direction, InequalityReport, ReportParams};
use crate::tol;
use num_rational::Ratio;

/// Positive rational weights over the dual group summing to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaWeights {
    weights: Vec<Ratio<u64>>,
}

impl AlphaWeights {
    pub fn new(weights: Vec<Ratio<u64>>) -> Result<Self, IneqError> {
        let zero = Ratio::new(0, 1);
        let total: Ratio<u64> = weights.iter().sum();
        if weights.is_empty() || weights.iter().any(|w| *w <= zero) || total != Ratio::from_integer(1)
        {
            return Err(IneqError::AlphaSum {
                got: total.to_string(),
            });
        }
        Ok(AlphaWeights { weights })
    }

    /// The uniform weights `1/n`.
    pub fn uniform(order: u64) -> Self {
        AlphaWeights {
            weights: vec![Ratio::new(1, order); order as usize],
        }
    }

    /// Builds weights from `(numerator, denominator)` pairs.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self, IneqError> {
        if pairs.iter().any(|(_, d)| *d == 0) {
            return Err(IneqError::AlphaSum {
                got: "a zero denominator".into(),
            });
        }
        AlphaWeights::new(pairs.iter().map(|(n, d)| Ratio::new(*n, *d)).collect())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Ratio<u64>] {
        &self.weights
    }

    pub fn as_f64(&self, index: usize) -> f64 {
        let w = self.weights[index];
        *w.numer() as f64 / *w.denom() as f64
    }

    pub fn as_strings(&self) -> Vec<String> {
        self.weights.iter().map(|w| w.to_string()).collect()
    }
}

fn base_params(field: &OperatorField) -> ReportParams {
    ReportParams::new()
        .with_group(&field.group().to_string())
        .with_dim(field.dim())
}

/// Mean of `||A_theta||_p^p` over the group (the Bochner integral of the
/// p-th norm power under normalized Haar measure).
fn haar_mean_power(field: &OperatorField, p: f64) -> Result<f64, IneqError> {
    let mut acc = 0.0;
    for a in field.values() {
        acc += schatten_power_sum(a, p)?;
    }
    Ok(acc / field.group().order() as f64)
}

/// The convex-function comparison between coefficient and field sides in a
/// unitarily invariant norm.
pub fn check_uin_convex(
    field: &OperatorField,
    phi: &ScalarFunction,
    kind: NormKind,
) -> Result<InequalityReport, IneqError> {
    kind.validate_uin()?;
    let d = field.dim();
    let coeffs = fourier_coefficients(field);

    let mut coeff_side = CMatrix::zeros(d, d);
    for b in coeffs.values() {
        coeff_side += apply_scalar_function(&(b.adjoint() * b), phi)?;
    }
    let mut field_side = CMatrix::zeros(d, d);
    for a in field.values() {
        field_side += apply_scalar_function(&(a.adjoint() * a), phi)?;
    }
    let field_side = field_side.map(|z| z / field.group().order() as f64);

    let lhs = norm(&coeff_side, kind)?;
    let rhs = norm(&field_side, kind)?;
    let params = base_params(field)
        .with_phi(phi.name())
        .with_norm(&kind.label());
    Ok(InequalityReport::evaluate(
        "uin",
        phi.shape().direction(),
        lhs,
        rhs,
        tol::report(rhs, None),
        params,
        field.digest(),
    ))
}

/// Same-exponent comparison `sum_k ||B_k||_p^p` vs `int ||A||_p^p dmu`;
/// `<=` for `p >= 2`, `>=` for `p <= 2`, equality at `p = 2`.
pub fn check_pp(field: &OperatorField, p: f64) -> Result<InequalityReport, IneqError> {
    if !p.is_finite() || p <= 0.0 {
        return Err(IneqError::ExponentOutOfRange {
            check: "pp",
            p,
            range: "p > 0",
        });
    }
    let coeffs = fourier_coefficients(field);
    let mut lhs = 0.0;
    for b in coeffs.values() {
        lhs += schatten_power_sum(b, p)?;
    }
    let rhs = haar_mean_power(field, p)?;
    let direction = if p >= 2.0 { Direction::Le } else { Direction::Ge };
    Ok(InequalityReport::evaluate(
        "pp",
        direction,
        lhs,
        rhs,
        tol::report(rhs, Some(p)),
        base_params(field).with_p(p),
        field.digest(),
    ))
}

/// Weighted lower bound on the coefficient side:
/// `||int |A| dmu||_p^p <= sum_k alpha_k^{1-p/2} ||B_k||_p^p`, `p >= 2`.
pub fn check_alpha(
    field: &OperatorField,
    p: f64,
    alpha: &AlphaWeights,
) -> Result<InequalityReport, IneqError> {
    if !p.is_finite() || p < 2.0 {
        return Err(IneqError::ExponentOutOfRange {
            check: "alpha",
            p,
            range: "p >= 2",
        });
    }
    let order = field.group().order();
    if alpha.len() as u64 != order {
        return Err(IneqError::AlphaLength {
            got: alpha.len(),
            expected: order,
        });
    }

    let d = field.dim();
    let mut mean_abs = CMatrix::zeros(d, d);
    for a in field.values() {
        mean_abs += abs_operator(a)?;
    }
    let mean_abs = mean_abs.map(|z| z / order as f64);
    let lhs = schatten_power_sum(&mean_abs, p)?;

    let coeffs = fourier_coefficients(field);
    let mut rhs = 0.0;
    for (index, b) in coeffs.values().iter().enumerate() {
        rhs += alpha.as_f64(index).powf(1.0 - p / 2.0) * schatten_power_sum(b, p)?;
    }

    let params = base_params(field)
        .with_p(p)
        .with_alpha(alpha.as_strings());
    Ok(InequalityReport::evaluate(
        "alpha",
        Direction::Le,
        lhs,
        rhs,
        tol::report(rhs, Some(p)),
        params,
        field.digest(),
    ))
}

/// Conjugate-exponent bound for `1 < p <= 2`:
/// `sum_k ||B_k||_p^q <= (int ||A||_p^p dmu)^{q/p}` with `q = p/(p-1)`.
pub fn check_pq(field: &OperatorField, p: f64) -> Result<InequalityReport, IneqError> {
    if p == 1.0 {
        return Err(IneqError::ConjugateUndefined);
    }
    if !p.is_finite() || p <= 1.0 || p > 2.0 {
        return Err(IneqError::ExponentOutOfRange {
            check: "pq",
            p,
            range: "1 < p <= 2",
        });
    }
    let q = p / (p - 1.0);
    let coeffs = fourier_coefficients(field);
    let mut lhs = 0.0;
    for b in coeffs.values() {
        lhs += schatten_power_sum(b, p)?.powf(q / p);
    }
    let rhs = haar_mean_power(field, p)?.powf(q / p);
    Ok(InequalityReport::evaluate(
        "pq",
        Direction::Le,
        lhs,
        rhs,
        tol::report(rhs, Some(p)),
        base_params(field).with_conjugate_pair(p),
        field.digest(),
    ))
}

/// Conjugate-exponent bound for `p >= 2`:
/// `sum_k ||B_k||_p^p <= (int ||A||_p^q dmu)^{p/q}` with `q = p/(p-1)`.
pub fn check_qp(field: &OperatorField, p: f64) -> Result<InequalityReport, IneqError> {
    if !p.is_finite() || p < 2.0 {
        return Err(IneqError::ExponentOutOfRange {
            check: "qp",
            p,
            range: "p >= 2",
        });
    }
    let q = p / (p - 1.0);
    let coeffs = fourier_coefficients(field);
    let mut lhs = 0.0;
    for b in coeffs.values() {
        lhs += schatten_power_sum(b, p)?;
    }
    let mut mean_q = 0.0;
    for a in field.values() {
        mean_q += schatten_power_sum(a, p)?.powf(q / p);
    }
    mean_q /= field.group().order() as f64;
    let rhs = mean_q.powf(p / q);
    Ok(InequalityReport::evaluate(
        "qp",
        Direction::Le,
        lhs,
        rhs,
        tol::report(rhs, Some(p)),
        base_params(field).with_conjugate_pair(p),
        field.digest(),
    ))
}
