//! Central tolerance policy.
//!
//! Every comparison threshold in the library is defined here so that checkers
//! and tests agree on what "equal" and "holds" mean at f64 precision.

/// Character values must sit on the unit circle to within this bound.
pub const UNIT_CIRCLE: f64 = 1e-12;

/// Residual bound for identities that are exact in exact arithmetic and go
/// through at most a handful of floating-point operations per term
/// (orthogonality sums, scalar Parseval, spectral reconstruction of the
/// identity function).
pub const EXACT: f64 = 1e-12;

/// Scale factor for the operator Parseval residual and other SVD-backed
/// identity checks: decompositions of small dense matrices keep ~5 guard
/// digits, so 1e-10 of the natural scale is attainable and strict.
pub const IDENTITY: f64 = 1e-10;

/// Default relative tolerance carried by inequality reports.
pub const REPORT_REL: f64 = 1e-9;

/// Relaxed relative tolerance for Schatten quasinorms (0 < p < 1): powering
/// tiny singular values amplifies their relative error.
pub const QUASINORM_REL: f64 = 1e-7;

/// Eigenvalue slack when deciding positive semidefiniteness numerically.
pub const PSD_EIG: f64 = 1e-9;

/// Scale-aware absolute tolerance: `rel * (1 + |scale|)`.
pub fn scaled(rel: f64, scale: f64) -> f64 {
    rel * (1.0 + scale.abs())
}

/// The report tolerance for a checker with right-hand side `rhs`:
/// `REPORT_REL * (1 + |rhs|)`, relaxed to `QUASINORM_REL` when the Schatten
/// exponent is below 1.
pub fn report(rhs: f64, p: Option<f64>) -> f64 {
    let rel = match p {
        Some(p) if p < 1.0 => QUASINORM_REL,
        _ => REPORT_REL,
    };
    scaled(rel, rhs)
}
