//! Operator-valued Fourier analysis over a finite abelian group: coefficient
//! families `B_k = (1/|G|) sum_theta conj(k(theta)) A_theta`, partial sums,
//! the operator Parseval identity and the Bessel inequality.
//!
//! The Bochner integral over the group is the exact Haar-weighted sum; over
//! a discretized circle `T@N` it is the `N`-point uniform rule, which is
//! exact for trigonometric-polynomial fields of degree below `N/2`.

use crate::groups::{Character, GroupElement, GroupError, GroupSpec};
use crate::operators::{
    ensure_finite, hermitian_eigenvalues, hermitize, singular_values, CMatrix, OperatorError,
};
use crate::report::digest_matrices;
use crate::tol;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FourierError {
    #[error("field over {group} needs {expected} matrices, got {got}")]
    WrongValueCount {
        group: String,
        expected: u64,
        got: usize,
    },
    #[error("field matrices must all be {dim}x{dim}; value {index} is {rows}x{cols}")]
    DimMismatch {
        dim: usize,
        index: usize,
        rows: usize,
        cols: usize,
    },
    #[error("field dimension must be at least 1")]
    EmptyDim,
    #[error("field value {0} has non-finite entries")]
    NonFinite(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

/// A total assignment `theta -> A_theta` of `dim x dim` complex matrices to
/// the elements of a finite abelian group, stored in lexicographic element
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorField {
    group: GroupSpec,
    dim: usize,
    values: Vec<CMatrix>,
}

impl OperatorField {
    pub fn new(group: GroupSpec, values: Vec<CMatrix>) -> Result<Self, FourierError> {
        if values.len() as u64 != group.order() {
            return Err(FourierError::WrongValueCount {
                group: group.to_string(),
                expected: group.order(),
                got: values.len(),
            });
        }
        let dim = values[0].nrows();
        if dim == 0 {
            return Err(FourierError::EmptyDim);
        }
        for (index, v) in values.iter().enumerate() {
            if v.nrows() != dim || v.ncols() != dim {
                return Err(FourierError::DimMismatch {
                    dim,
                    index,
                    rows: v.nrows(),
                    cols: v.ncols(),
                });
            }
            if ensure_finite(v).is_err() {
                return Err(FourierError::NonFinite(index));
            }
        }
        Ok(OperatorField { group, dim, values })
    }

    /// The constant field `A_theta = m`.
    pub fn constant(group: GroupSpec, m: CMatrix) -> Result<Self, FourierError> {
        let values = vec![m; group.order() as usize];
        OperatorField::new(group, values)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[CMatrix] {
        &self.values
    }

    pub fn value(&self, theta: &GroupElement) -> Result<&CMatrix, FourierError> {
        let idx = self.group.element_index(theta)?;
        Ok(&self.values[idx])
    }

    /// The translated field `theta -> A_{theta - shift}`.
    pub fn translated(&self, shift: &GroupElement) -> Result<Self, FourierError> {
        let elements = self.group.elements();
        let mut values = Vec::with_capacity(self.values.len());
        for theta in &elements {
            let source = self.group.add(theta, &self.group.neg(shift)?)?;
            values.push(self.values[self.group.element_index(&source)?].clone());
        }
        OperatorField::new(self.group.clone(), values)
    }

    /// Rebuilds the field with transformed values (dimensions must stay
    /// consistent).
    pub fn map_values(
        &self,
        f: impl FnMut(&CMatrix) -> CMatrix,
    ) -> Result<Self, FourierError> {
        let values: Vec<CMatrix> = self.values.iter().map(f).collect();
        OperatorField::new(self.group.clone(), values)
    }

    /// Haar-weighted mean of a scalar functional of the values:
    /// `(1/|G|) sum_theta f(A_theta)`.
    pub fn haar_mean(&self, f: impl FnMut(&CMatrix) -> f64) -> f64 {
        let n = self.group.order() as f64;
        self.values.iter().map(f).sum::<f64>() / n
    }

    /// Content digest for provenance records.
    pub fn digest(&self) -> String {
        digest_matrices(&format!("field:{}:{}", self.group, self.dim), &self.values)
    }
}

/// The coefficient family `k -> B_k`, indexed over the dual group in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    group: GroupSpec,
    dim: usize,
    values: Vec<CMatrix>,
}

impl FourierCoefficients {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[CMatrix] {
        &self.values
    }

    pub fn coefficient(&self, k: &Character) -> Result<&CMatrix, FourierError> {
        let idx = self.group.element_index(k.index())?;
        Ok(&self.values[idx])
    }
}

/// Computes every coefficient `B_k = (1/|G|) sum_theta conj(k(theta))
/// A_theta`.
pub fn fourier_coefficients(field: &OperatorField) -> FourierCoefficients {
    let group = field.group().clone();
    let elements = group.elements();
    let characters = group.characters();
    let scale = 1.0 / group.order() as f64;
    let d = field.dim();

    let values: Vec<CMatrix> = characters
        .iter()
        .map(|k| {
            let mut acc = CMatrix::zeros(d, d);
            for (theta, a) in elements.iter().zip(field.values().iter()) {
                let w = group
                    .character_value(k, theta)
                    .expect("indices come from this group")
                    .conj();
                acc += a.map(|z| z * w);
            }
            acc.map(|z| z * scale)
        })
        .collect();

    FourierCoefficients {
        group,
        dim: d,
        values,
    }
}

/// The partial sum `(S_Delta A)_theta = sum_{k in Delta} B_k k(theta)`;
/// duplicate characters in `delta` are ignored.
pub fn partial_sum(
    coeffs: &FourierCoefficients,
    delta: &[Character],
    theta: &GroupElement,
) -> Result<CMatrix, FourierError> {
    let group = &coeffs.group;
    let mut seen = BTreeSet::new();
    let mut acc = CMatrix::zeros(coeffs.dim, coeffs.dim);
    for k in delta {
        let idx = group.element_index(k.index())?;
        if !seen.insert(idx) {
            continue;
        }
        let w = group.character_value(k, theta)?;
        acc += coeffs.values[idx].map(|z| z * w);
    }
    Ok(acc)
}

/// Residual of the operator Parseval identity in both reported norms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParsevalResidual {
    /// `|| sum_k B_k^H B_k - (1/|G|) sum_theta A_theta^H A_theta ||_op`.
    pub operator: f64,
    /// Same difference in the trace norm.
    pub trace: f64,
}

/// Computes both sides of the Parseval identity and returns the norms of
/// their difference.
pub fn parseval_residuals(field: &OperatorField) -> Result<ParsevalResidual, FourierError> {
    let coeffs = fourier_coefficients(field);
    let d = field.dim();
    let mut lhs = CMatrix::zeros(d, d);
    for b in coeffs.values() {
        lhs += b.adjoint() * b;
    }
    let mut rhs = CMatrix::zeros(d, d);
    for a in field.values() {
        rhs += a.adjoint() * a;
    }
    let rhs = rhs.map(|z| z / field.group().order() as f64);
    let diff = &lhs - &rhs;
    let spectrum = singular_values(&diff)?;
    Ok(ParsevalResidual {
        operator: spectrum.operator_norm(),
        trace: spectrum.kyfan(spectrum.len()),
    })
}

/// Operator-norm residual of the Parseval identity (the strong-convergence
/// analogue at finite scale).
pub fn parseval_residual(field: &OperatorField) -> Result<f64, FourierError> {
    Ok(parseval_residuals(field)?.operator)
}

/// Bessel inequality over a subset of the dual: true iff
/// `(1/|G|) sum_theta A^H A - sum_{k in Delta} B_k^H B_k` is PSD within a
/// scale-aware eigenvalue tolerance.
pub fn bessel_check(field: &OperatorField, delta: &[Character]) -> Result<bool, FourierError> {
    let coeffs = fourier_coefficients(field);
    let group = field.group();
    let d = field.dim();

    let mut partial = CMatrix::zeros(d, d);
    let mut seen = BTreeSet::new();
    for k in delta {
        let idx = group.element_index(k.index())?;
        if !seen.insert(idx) {
            continue;
        }
        let b = &coeffs.values()[idx];
        partial += b.adjoint() * b;
    }
    let mut full = CMatrix::zeros(d, d);
    for a in field.values() {
        full += a.adjoint() * a;
    }
    let full = full.map(|z| z / group.order() as f64);

    let diff = hermitize(&(&full - &partial));
    let eig = hermitian_eigenvalues(&diff)?;
    let scale = singular_values(&full)?.operator_norm();
    let min = eig.first().copied().unwrap_or(0.0);
    Ok(min >= -tol::scaled(tol::IDENTITY, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_field, random_matrix, rng_from_seed};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z2() -> GroupSpec {
        GroupSpec::cyclic(2).unwrap()
    }

    #[test]
    fn constant_field_concentrates_on_trivial_character() {
        let g = GroupSpec::cyclic(6).unwrap();
        let m = random_matrix(3, 3, &mut rng_from_seed(1));
        let field = OperatorField::constant(g.clone(), m.clone()).unwrap();
        let coeffs = fourier_coefficients(&field);
        for (k, b) in g.characters().iter().zip(coeffs.values()) {
            if k.is_trivial() {
                assert!((b - &m).norm() < 1e-12);
            } else {
                assert!(b.norm() < 1e-12 * (1.0 + m.norm()));
            }
        }
    }

    #[test]
    fn z2_half_field_splits_evenly() {
        let g = z2();
        let m = random_matrix(2, 2, &mut rng_from_seed(2));
        let field =
            OperatorField::new(g.clone(), vec![m.clone(), CMatrix::zeros(2, 2)]).unwrap();
        let coeffs = fourier_coefficients(&field);
        for b in coeffs.values() {
            assert!((b - m.map(|z| z * 0.5)).norm() < 1e-14);
        }
    }

    #[test]
    fn single_character_field_has_single_coefficient() {
        let g = GroupSpec::new(vec![2, 3]).unwrap();
        let m = random_matrix(2, 2, &mut rng_from_seed(3));
        let k0 = g.characters()[4].clone();
        let values: Vec<CMatrix> = g
            .elements()
            .iter()
            .map(|theta| {
                let w = g.character_value(&k0, theta).unwrap();
                m.map(|z| z * w)
            })
            .collect();
        let field = OperatorField::new(g.clone(), values).unwrap();
        let coeffs = fourier_coefficients(&field);
        for (k, b) in g.characters().iter().zip(coeffs.values()) {
            if *k == k0 {
                assert!((b - &m).norm() < 1e-12);
            } else {
                assert!(b.norm() < 1e-12 * (1.0 + m.norm()));
            }
        }
    }

    #[test]
    fn partial_sum_empty_is_zero() {
        let g = z2();
        let field = random_field(&g, 2, &mut rng_from_seed(4));
        let coeffs = fourier_coefficients(&field);
        let s = partial_sum(&coeffs, &[], &g.identity()).unwrap();
        assert_eq!(s, CMatrix::zeros(2, 2));
    }

    #[test]
    fn full_partial_sum_inverts_the_transform() {
        let g = GroupSpec::new(vec![2, 2]).unwrap();
        let field = random_field(&g, 3, &mut rng_from_seed(5));
        let coeffs = fourier_coefficients(&field);
        let chars = g.characters();
        for theta in g.elements() {
            let rebuilt = partial_sum(&coeffs, &chars, &theta).unwrap();
            let original = field.value(&theta).unwrap();
            assert!(
                (&rebuilt - original).norm() < 1e-10 * (1.0 + original.norm()),
                "at {theta}"
            );
        }
    }

    #[test]
    fn partial_sum_of_trivial_character_on_constant_field() {
        let g = z2();
        let m = random_matrix(2, 2, &mut rng_from_seed(6));
        let field = OperatorField::constant(g.clone(), m.clone()).unwrap();
        let coeffs = fourier_coefficients(&field);
        let s = partial_sum(
            &coeffs,
            &[g.trivial_character()],
            &g.elements()[1],
        )
        .unwrap();
        assert!((&s - &m).norm() < 1e-12);
    }

    #[test]
    fn parseval_zero_field() {
        let g = z2();
        let field =
            OperatorField::new(g, vec![CMatrix::zeros(2, 2), CMatrix::zeros(2, 2)]).unwrap();
        assert_eq!(parseval_residual(&field).unwrap(), 0.0);
    }

    #[test]
    fn parseval_random_fields_over_z6() {
        let g = GroupSpec::cyclic(6).unwrap();
        let mut rng = rng_from_seed(7);
        for _ in 0..20 {
            for d in [1usize, 4, 8] {
                let field = random_field(&g, d, &mut rng);
                let scale = field.haar_mean(|a| {
                    singular_values(a).unwrap().operator_norm().powi(2)
                });
                let res = parseval_residual(&field).unwrap();
                assert!(res <= tol::scaled(tol::IDENTITY, scale), "d={d} res={res}");
            }
        }
    }

    #[test]
    fn scalar_field_matches_scalar_parseval() {
        // d = 1 reduces to the classical identity
        // sum_k |hat f(k)|^2 = (1/n) sum_theta |f(theta)|^2.
        let g = GroupSpec::cyclic(5).unwrap();
        let mut rng = rng_from_seed(8);
        let field = random_field(&g, 1, &mut rng);
        let coeffs = fourier_coefficients(&field);
        let lhs: f64 = coeffs.values().iter().map(|b| b[(0, 0)].norm_sqr()).sum();
        let rhs: f64 =
            field.values().iter().map(|a| a[(0, 0)].norm_sqr()).sum::<f64>() / 5.0;
        assert!((lhs - rhs).abs() <= tol::scaled(tol::EXACT, rhs));
    }

    #[test]
    fn bessel_full_dual_and_empty_set() {
        let g = GroupSpec::cyclic(4).unwrap();
        let field = random_field(&g, 3, &mut rng_from_seed(9));
        assert!(bessel_check(&field, &g.characters()).unwrap());
        assert!(bessel_check(&field, &[]).unwrap());
    }

    #[test]
    fn bessel_random_subsets() {
        let g = GroupSpec::cyclic(4).unwrap();
        let mut rng = rng_from_seed(10);
        let chars = g.characters();
        for trial in 0..200 {
            let field = random_field(&g, 2, &mut rng);
            let mask: usize = trial % 16;
            let delta: Vec<Character> = chars
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, k)| k.clone())
                .collect();
            assert!(bessel_check(&field, &delta).unwrap());
        }
    }

    #[test]
    fn translation_multiplies_coefficients_by_conjugate_character() {
        let g = GroupSpec::new(vec![3, 2]).unwrap();
        let field = random_field(&g, 2, &mut rng_from_seed(11));
        let shift = g.element([2, 1]).unwrap();
        let shifted = field.translated(&shift).unwrap();
        let coeffs = fourier_coefficients(&field);
        let coeffs_shifted = fourier_coefficients(&shifted);
        for (k, (b, bs)) in g
            .characters()
            .iter()
            .zip(coeffs.values().iter().zip(coeffs_shifted.values()))
        {
            let w = g.character_value(k, &shift).unwrap().conj();
            assert!((bs - b.map(|z| z * w)).norm() < 1e-12 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn field_constructor_validations() {
        let g = z2();
        assert!(matches!(
            OperatorField::new(g.clone(), vec![CMatrix::zeros(2, 2)]),
            Err(FourierError::WrongValueCount { .. })
        ));
        assert!(matches!(
            OperatorField::new(
                g.clone(),
                vec![CMatrix::zeros(2, 2), CMatrix::zeros(3, 3)]
            ),
            Err(FourierError::DimMismatch { .. })
        ));
        let mut bad = CMatrix::zeros(2, 2);
        bad[(0, 0)] = c(f64::INFINITY, 0.0);
        assert!(matches!(
            OperatorField::new(g, vec![CMatrix::zeros(2, 2), bad]),
            Err(FourierError::NonFinite(1))
        ));
    }
}
