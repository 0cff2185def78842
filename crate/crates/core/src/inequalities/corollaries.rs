//! Corollary checkers in their published, un-normalized constants.
//!
//! Each check evaluates the classical statement exactly as printed (constants
//! `n^{p-1}`, `2^{n(p-1)}`, `2^{q-1}`, ...) and then cross-checks the two
//! sides against the corresponding normalized theorem applied to the induced
//! field, with the conversion exponent documented per corollary. A
//! cross-check mismatch is an internal-consistency error, not a report.
//!
//! The cyclic-group transform rows and Littlewood signs are the group's
//! character table; sums over all rows are permutation-invariant, so the
//! unconjugated published form matches the conjugated transform exactly.

use super::checks::{check_pp, check_pq, check_qp};
use super::IneqError;
use crate::fourier::OperatorField;
use crate::groups::GroupSpec;
use crate::operators::{schatten_power_sum, CMatrix};
use crate::report::{digest_matrices, Direction, InequalityReport, ReportParams};
use crate::tol;

/// The supported published corollaries.
///
/// `ZnPp*` are the two sides of the cyclic-group p-p inequality, `ZnPq` /
/// `ZnPq2` its conjugate-exponent forms, `Littlewood1..3` the sign-matrix
/// versions over `Z_2^n`, and `Cmc*` the classical two-operator
/// Clarkson-McCarthy forms (`CmcPq` carries the historical constant
/// `2^{q-1}`, which is weaker than the sharp `ZnPq` constant at `n = 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary {
    ZnPpLeft,
    ZnPpRight,
    ZnPq,
    ZnPq2,
    Littlewood1,
    Littlewood2,
    Littlewood3,
    CmcLeft,
    CmcRight,
    CmcQp,
    CmcPq,
}

impl Corollary {
    pub const ALL: [Corollary; 11] = [
        Corollary::ZnPpLeft,
        Corollary::ZnPpRight,
        Corollary::ZnPq,
        Corollary::ZnPq2,
        Corollary::Littlewood1,
        Corollary::Littlewood2,
        Corollary::Littlewood3,
        Corollary::CmcLeft,
        Corollary::CmcRight,
        Corollary::CmcQp,
        Corollary::CmcPq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Corollary::ZnPpLeft => "znpp-left",
            Corollary::ZnPpRight => "znpp-right",
            Corollary::ZnPq => "znpq",
            Corollary::ZnPq2 => "znpq2",
            Corollary::Littlewood1 => "littlewood1",
            Corollary::Littlewood2 => "littlewood2",
            Corollary::Littlewood3 => "littlewood3",
            Corollary::CmcLeft => "cmc-left",
            Corollary::CmcRight => "cmc-right",
            Corollary::CmcQp => "cmc-qp",
            Corollary::CmcPq => "cmc-pq",
        }
    }

    pub fn parse(s: &str) -> Result<Self, IneqError> {
        Corollary::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| IneqError::UnknownCorollary(s.to_string()))
    }

    fn is_littlewood(self) -> bool {
        matches!(
            self,
            Corollary::Littlewood1 | Corollary::Littlewood2 | Corollary::Littlewood3
        )
    }

    fn is_cmc(self) -> bool {
        matches!(
            self,
            Corollary::CmcLeft | Corollary::CmcRight | Corollary::CmcQp | Corollary::CmcPq
        )
    }
}

fn validate_tuple(name: &'static str, tuple: &[CMatrix]) -> Result<usize, IneqError> {
    if tuple.len() < 2 {
        return Err(IneqError::TupleLength {
            name,
            expected: "at least 2 matrices",
            got: tuple.len(),
        });
    }
    let d = tuple[0].nrows();
    if d == 0 || tuple.iter().any(|a| a.nrows() != d || a.ncols() != d) {
        return Err(IneqError::TupleDims);
    }
    Ok(d)
}

fn tuple_group(c: Corollary, len: usize) -> Result<GroupSpec, IneqError> {
    if c.is_cmc() {
        if len != 2 {
            return Err(IneqError::TupleLength {
                name: c.name(),
                expected: "exactly 2 matrices",
                got: len,
            });
        }
        return Ok(GroupSpec::cyclic(2).expect("Z2 is valid"));
    }
    if c.is_littlewood() {
        if !len.is_power_of_two() || len < 2 {
            return Err(IneqError::TupleLength {
                name: c.name(),
                expected: "a power of two (2^n matrices)",
                got: len,
            });
        }
        let m = len.trailing_zeros() as usize;
        return Ok(GroupSpec::new(vec![2u32; m]).expect("Z2^n is valid"));
    }
    Ok(GroupSpec::cyclic(len as u32)?)
}

fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

/// Checks the exponent against the published range of the corollary.
fn validate_exponent(c: Corollary, p: f64) -> Result<(), IneqError> {
    let err = |range: &'static str| IneqError::ExponentOutOfRange {
        check: c.name(),
        p,
        range,
    };
    match c {
        Corollary::ZnPpLeft | Corollary::ZnPpRight | Corollary::CmcLeft | Corollary::CmcRight => {
            if p > 0.0 {
                Ok(())
            } else {
                Err(err("p > 0"))
            }
        }
        Corollary::ZnPq | Corollary::Littlewood2 | Corollary::CmcPq => {
            if p == 1.0 {
                Err(IneqError::ConjugateUndefined)
            } else if p > 1.0 && p <= 2.0 {
                Ok(())
            } else {
                Err(err("1 < p <= 2"))
            }
        }
        Corollary::ZnPq2
        | Corollary::Littlewood1
        | Corollary::Littlewood3
        | Corollary::CmcQp => {
            if p >= 2.0 {
                Ok(())
            } else {
                Err(err("p >= 2"))
            }
        }
    }
}

/// The transformed tuple `C_i = sum_j T_ij A_j` over the rows of the
/// character table (for `Z_2^n` these are exactly the Littlewood signs).
fn transformed_sums(spec: &GroupSpec, tuple: &[CMatrix]) -> Vec<CMatrix> {
    let table = spec.character_table();
    let d = tuple[0].nrows();
    (0..tuple.len())
        .map(|i| {
            let mut acc = CMatrix::zeros(d, d);
            for (j, a) in tuple.iter().enumerate() {
                let w = table[(i, j)];
                acc += a.map(|z| z * w);
            }
            acc
        })
        .collect()
}

fn assert_cross_check(
    name: &'static str,
    side: &'static str,
    got: f64,
    expected: f64,
    p: f64,
) -> Result<(), IneqError> {
    if (got - expected).abs() > tol::report(expected, Some(p)) {
        return Err(IneqError::CrossCheck {
            name,
            side,
            got,
            expected,
        });
    }
    Ok(())
}

/// Evaluates a published corollary on an operator tuple and cross-checks it
/// against its normalized theorem counterpart.
pub fn check_corollary(
    c: Corollary,
    tuple: &[CMatrix],
    p: f64,
) -> Result<InequalityReport, IneqError> {
    let dim = validate_tuple(c.name(), tuple)?;
    validate_exponent(c, p)?;
    let spec = tuple_group(c, tuple.len())?;
    let n = spec.order() as f64;
    let transformed = transformed_sums(&spec, tuple);

    let mut sum_a_p = 0.0;
    let mut sum_a_q = 0.0;
    let mut sum_c_p = 0.0;
    let mut sum_c_q = 0.0;
    let needs_q = matches!(
        c,
        Corollary::ZnPq
            | Corollary::ZnPq2
            | Corollary::Littlewood2
            | Corollary::Littlewood3
            | Corollary::CmcQp
            | Corollary::CmcPq
    );
    let q = if needs_q { conjugate(p) } else { f64::NAN };
    for a in tuple {
        let pw = schatten_power_sum(a, p)?;
        sum_a_p += pw;
        if needs_q {
            sum_a_q += pw.powf(q / p);
        }
    }
    for cmat in &transformed {
        let pw = schatten_power_sum(cmat, p)?;
        sum_c_p += pw;
        if needs_q {
            sum_c_q += pw.powf(q / p);
        }
    }

    // The two-sided p-p family reverses orientation below p = 2.
    let pp_direction = if p >= 2.0 { Direction::Le } else { Direction::Ge };

    let field = OperatorField::new(spec.clone(), tuple.to_vec())?;
    let (lhs, rhs, direction, thm_scaled): (f64, f64, Direction, (f64, f64)) = match c {
        Corollary::ZnPpRight | Corollary::Littlewood1 | Corollary::CmcRight => {
            let thm = check_pp(&field, p)?;
            let scale = n.powf(p);
            (
                sum_c_p,
                n.powf(p - 1.0) * sum_a_p,
                if c == Corollary::Littlewood1 {
                    Direction::Le
                } else {
                    pp_direction
                },
                (scale * thm.lhs, scale * thm.rhs),
            )
        }
        Corollary::ZnPpLeft | Corollary::CmcLeft => {
            // The left inequality is the right one applied to the transformed
            // tuple: its normalized coefficients recover the original tuple.
            let dual = OperatorField::new(spec.clone(), transformed.clone())?;
            let thm = check_pp(&dual, p)?;
            (
                n * sum_a_p,
                sum_c_p,
                pp_direction,
                (n * thm.lhs, n * thm.rhs),
            )
        }
        Corollary::ZnPq | Corollary::Littlewood2 => {
            let thm = check_pq(&field, p)?;
            let scale = n.powf(q);
            (
                sum_c_q,
                n * sum_a_p.powf(q / p),
                Direction::Le,
                (scale * thm.lhs, scale * thm.rhs),
            )
        }
        Corollary::ZnPq2 | Corollary::Littlewood3 | Corollary::CmcQp => {
            let thm = check_qp(&field, p)?;
            let scale = n.powf(p);
            (
                sum_c_p,
                n * sum_a_q.powf(p / q),
                Direction::Le,
                (scale * thm.lhs, scale * thm.rhs),
            )
        }
        Corollary::CmcPq => {
            // Historical constant 2^{q-1}: the left side scales by 2^q, the
            // right side by 2^{2q-2} (equal only at p = q = 2).
            let thm = check_pq(&field, p)?;
            (
                sum_c_q,
                (2.0f64).powf(q - 1.0) * sum_a_p.powf(q / p),
                Direction::Le,
                (
                    (2.0f64).powf(q) * thm.lhs,
                    (2.0f64).powf(2.0 * q - 2.0) * thm.rhs,
                ),
            )
        }
    };

    assert_cross_check(c.name(), "left side", lhs, thm_scaled.0, p)?;
    assert_cross_check(c.name(), "right side", rhs, thm_scaled.1, p)?;

    let mut params = ReportParams::new()
        .with_group(&spec.to_string())
        .with_dim(dim)
        .with_p(p);
    if needs_q {
        params = params.with_conjugate_pair(p);
    }
    Ok(InequalityReport::evaluate(
        c.name(),
        direction,
        lhs,
        rhs,
        tol::report(rhs, Some(p)),
        params,
        digest_matrices(&format!("tuple:{}", c.name()), tuple),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_matrix, random_tuple, rng_from_seed};

    #[test]
    fn names_round_trip() {
        for c in Corollary::ALL {
            assert_eq!(Corollary::parse(c.name()).unwrap(), c);
        }
        assert!(matches!(
            Corollary::parse("znqq"),
            Err(IneqError::UnknownCorollary(_))
        ));
    }

    #[test]
    fn znpp_right_equal_tuple_is_equality() {
        // All entries equal: only the trivial transform row survives and both
        // sides are n^p ||A||_p^p.
        let a = random_matrix(3, 3, &mut rng_from_seed(40));
        let tuple = vec![a; 5];
        let r = check_corollary(Corollary::ZnPpRight, &tuple, 4.0).unwrap();
        assert!(r.holds);
        assert!(r.margin.abs() <= r.tolerance, "margin {}", r.margin);
    }

    #[test]
    fn znpp_left_single_support_is_equality() {
        // One nonzero entry: every |C_k| equals |A| and both sides are
        // n ||A||_p^p.
        let d = 3;
        let mut tuple = vec![CMatrix::zeros(d, d); 5];
        tuple[2] = random_matrix(d, d, &mut rng_from_seed(41));
        let r = check_corollary(Corollary::ZnPpLeft, &tuple, 4.0).unwrap();
        assert!(r.holds);
        assert!(r.margin.abs() <= r.tolerance, "margin {}", r.margin);
    }

    #[test]
    fn znpp_holds_both_ways_with_reversal() {
        let mut rng = rng_from_seed(42);
        for n in [2usize, 3, 5] {
            let tuple = random_tuple(n, 2, &mut rng);
            for p in [0.5, 1.5, 2.0, 3.0] {
                for c in [Corollary::ZnPpLeft, Corollary::ZnPpRight] {
                    let r = check_corollary(c, &tuple, p).unwrap();
                    assert!(r.holds, "{c:?} p={p} n={n}: {r:?}");
                    let expect = if p >= 2.0 { Direction::Le } else { Direction::Ge };
                    assert_eq!(r.direction, expect);
                }
            }
        }
    }

    #[test]
    fn conjugate_exponent_corollaries_hold() {
        let mut rng = rng_from_seed(43);
        let tuple = random_tuple(3, 2, &mut rng);
        assert!(check_corollary(Corollary::ZnPq, &tuple, 1.5).unwrap().holds);
        assert!(check_corollary(Corollary::ZnPq2, &tuple, 3.0).unwrap().holds);
        let four = random_tuple(4, 2, &mut rng);
        for (c, p) in [
            (Corollary::Littlewood1, 3.0),
            (Corollary::Littlewood2, 1.5),
            (Corollary::Littlewood3, 3.0),
        ] {
            let r = check_corollary(c, &four, p).unwrap();
            assert!(r.holds, "{c:?}: {r:?}");
        }
    }

    #[test]
    fn cmc_right_matches_scaled_pp_report() {
        // De-normalization: the classical two-operator comparison is the
        // normalized p-p check scaled by 2^p on both sides.
        let mut rng = rng_from_seed(44);
        let f = random_matrix(2, 2, &mut rng);
        let g = random_matrix(2, 2, &mut rng);
        let p = 4.0;
        let field = OperatorField::new(
            GroupSpec::cyclic(2).unwrap(),
            vec![f.clone(), g.clone()],
        )
        .unwrap();
        let thm = check_pp(&field, p).unwrap();
        let cor = check_corollary(Corollary::CmcRight, &[f, g], p).unwrap();
        let scale = 2.0f64.powf(p);
        assert!((cor.lhs - scale * thm.lhs).abs() <= tol::report(cor.lhs, Some(p)));
        assert!((cor.rhs - scale * thm.rhs).abs() <= tol::report(cor.rhs, Some(p)));
        assert!(cor.holds);
    }

    #[test]
    fn cmc_pq_carries_weaker_historical_constant() {
        let mut rng = rng_from_seed(45);
        let f = random_matrix(2, 2, &mut rng);
        let g = random_matrix(2, 2, &mut rng);
        let p = 1.5;
        let q = p / (p - 1.0);
        let sharp = check_corollary(Corollary::ZnPq, &[f.clone(), g.clone()], p).unwrap();
        let classic = check_corollary(Corollary::CmcPq, &[f, g], p).unwrap();
        assert!(sharp.holds && classic.holds);
        // Same left side, right side differs by 2^{q-2}.
        assert!((sharp.lhs - classic.lhs).abs() < 1e-9 * (1.0 + sharp.lhs));
        let ratio = classic.rhs / sharp.rhs;
        assert!((ratio - 2.0f64.powf(q - 2.0)).abs() < 1e-9 * ratio);
    }

    #[test]
    fn quasinorm_regime_with_published_constants() {
        let mut rng = rng_from_seed(46);
        let tuple = random_tuple(3, 2, &mut rng);
        for p in [0.5, 1.0] {
            let r = check_corollary(Corollary::ZnPpRight, &tuple, p).unwrap();
            assert!(r.holds, "p={p}: {r:?}");
            assert_eq!(r.direction, Direction::Ge);
        }
    }

    #[test]
    fn domain_errors() {
        let tuple = random_tuple(3, 2, &mut rng_from_seed(47));
        assert!(matches!(
            check_corollary(Corollary::CmcLeft, &tuple, 3.0),
            Err(IneqError::TupleLength { .. })
        ));
        assert!(matches!(
            check_corollary(Corollary::Littlewood1, &tuple, 3.0),
            Err(IneqError::TupleLength { .. })
        ));
        assert!(matches!(
            check_corollary(Corollary::ZnPq, &tuple, 1.0),
            Err(IneqError::ConjugateUndefined)
        ));
        assert!(matches!(
            check_corollary(Corollary::ZnPq2, &tuple, 1.5),
            Err(IneqError::ExponentOutOfRange { .. })
        ));
        let ragged = vec![CMatrix::zeros(2, 2), CMatrix::zeros(3, 3)];
        assert!(matches!(
            check_corollary(Corollary::ZnPpRight, &ragged, 3.0),
            Err(IneqError::TupleDims)
        ));
    }
}
