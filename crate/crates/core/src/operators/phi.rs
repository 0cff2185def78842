//! Scalar functions `phi: [0, inf) -> [0, inf)` with a declared shape.
//!
//! The direction of every function-based inequality in this library is chosen
//! from the declared shape, never inferred: convexity inference from samples
//! is unreliable near flat regions. The declaration is spot-checked at
//! construction with a deterministic midpoint test.

use super::OperatorError;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

/// Declared shape of a scalar function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionShape {
    /// Convex with `phi(0) = 0` (necessarily nondecreasing).
    ConvexZero,
    /// Concave with `phi(0) = 0` and `phi(t) -> inf`; reverses inequalities.
    ConcaveZeroInf,
}

impl FunctionShape {
    pub fn label(self) -> &'static str {
        match self {
            FunctionShape::ConvexZero => "convex",
            FunctionShape::ConcaveZeroInf => "concave",
        }
    }

    /// The inequality orientation this shape produces: convex functions give
    /// `lhs <= rhs`, concave functions reverse it.
    pub fn direction(self) -> crate::report::Direction {
        match self {
            FunctionShape::ConvexZero => crate::report::Direction::Le,
            FunctionShape::ConcaveZeroInf => crate::report::Direction::Ge,
        }
    }
}

/// A scalar function together with its declared shape and a display tag.
#[derive(Clone)]
pub struct ScalarFunction {
    name: String,
    shape: FunctionShape,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("name", &self.name)
            .field("shape", &self.shape)
            .finish()
    }
}

impl ScalarFunction {
    /// Wraps a callable with a declared shape, verifying `phi(0) = 0` and
    /// spot-checking the declaration with a midpoint test on deterministic
    /// pseudo-random pairs.
    pub fn new(
        name: impl Into<String>,
        shape: FunctionShape,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, OperatorError> {
        let name = name.into();
        let at_zero = f(0.0);
        if at_zero.abs() > 1e-12 {
            return Err(OperatorError::NotZeroAtZero {
                name,
                value: at_zero,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5CA1_AB1E);
        for _ in 0..64 {
            let x: f64 = rng.gen_range(0.0..8.0);
            let y: f64 = rng.gen_range(0.0..8.0);
            let mid = f(0.5 * (x + y));
            let chord = 0.5 * (f(x) + f(y));
            let slack = 1e-9 * (1.0 + f(x).abs() + f(y).abs());
            let ok = match shape {
                FunctionShape::ConvexZero => mid <= chord + slack,
                FunctionShape::ConcaveZeroInf => mid + slack >= chord,
            };
            if !ok {
                return Err(OperatorError::ShapeViolation {
                    name,
                    shape: shape.label(),
                    at: 0.5 * (x + y),
                });
            }
        }
        Ok(ScalarFunction {
            name,
            shape,
            f: Arc::new(f),
        })
    }

    /// The power function `t -> t^e` (`e > 0`): convex for `e >= 1`, concave
    /// with `phi(inf) = inf` for `0 < e < 1`.
    pub fn power(exponent: f64) -> Result<Self, OperatorError> {
        if !exponent.is_finite() || exponent <= 0.0 {
            return Err(OperatorError::InvalidExponent(exponent));
        }
        let shape = if exponent >= 1.0 {
            FunctionShape::ConvexZero
        } else {
            FunctionShape::ConcaveZeroInf
        };
        ScalarFunction::new(format!("power:{exponent}"), shape, move |t: f64| {
            t.powf(exponent)
        })
    }

    pub fn identity() -> Self {
        ScalarFunction::new("identity", FunctionShape::ConvexZero, |t| t)
            .expect("identity passes its own spot check")
    }

    pub fn square() -> Self {
        ScalarFunction::new("square", FunctionShape::ConvexZero, |t| t * t)
            .expect("square passes its own spot check")
    }

    pub fn sqrt() -> Self {
        ScalarFunction::new("sqrt", FunctionShape::ConcaveZeroInf, |t: f64| {
            t.max(0.0).sqrt()
        })
        .expect("sqrt passes its own spot check")
    }

    /// Parses the CLI tags `power:<exp>`, `sqrt`, `square`, `identity`.
    pub fn parse(tag: &str) -> Result<Self, OperatorError> {
        match tag {
            "sqrt" => Ok(Self::sqrt()),
            "square" => Ok(Self::square()),
            "identity" => Ok(Self::identity()),
            _ => {
                let exp = tag
                    .strip_prefix("power:")
                    .and_then(|e| e.parse::<f64>().ok())
                    .ok_or(OperatorError::InvalidExponent(f64::NAN))?;
                Self::power(exp)
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn shape(&self) -> FunctionShape {
        self.shape
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_shapes() {
        assert_eq!(
            ScalarFunction::power(2.0).unwrap().shape(),
            FunctionShape::ConvexZero
        );
        assert_eq!(
            ScalarFunction::power(0.5).unwrap().shape(),
            FunctionShape::ConcaveZeroInf
        );
        assert!(ScalarFunction::power(0.0).is_err());
        assert!(ScalarFunction::power(-1.0).is_err());
    }

    #[test]
    fn misdeclared_shape_is_rejected() {
        let err = ScalarFunction::new("sqrt-as-convex", FunctionShape::ConvexZero, |t: f64| {
            t.sqrt()
        });
        assert!(matches!(err, Err(OperatorError::ShapeViolation { .. })));
        let err = ScalarFunction::new("square-as-concave", FunctionShape::ConcaveZeroInf, |t| {
            t * t
        });
        assert!(matches!(err, Err(OperatorError::ShapeViolation { .. })));
    }

    #[test]
    fn nonzero_at_zero_is_rejected() {
        let err = ScalarFunction::new("shifted", FunctionShape::ConvexZero, |t| t + 1.0);
        assert!(matches!(err, Err(OperatorError::NotZeroAtZero { .. })));
    }

    #[test]
    fn parse_tags() {
        assert_eq!(ScalarFunction::parse("sqrt").unwrap().name(), "sqrt");
        assert_eq!(
            ScalarFunction::parse("power:1.5").unwrap().name(),
            "power:1.5"
        );
        assert!(ScalarFunction::parse("cosh").is_err());
    }

    #[test]
    fn linear_passes_both_declarations() {
        assert!(ScalarFunction::new("id", FunctionShape::ConvexZero, |t| t).is_ok());
        assert!(ScalarFunction::new("id", FunctionShape::ConcaveZeroInf, |t| t).is_ok());
    }
}
