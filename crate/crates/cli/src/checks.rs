//! Check specifications parsed from `--check` strings.

use anyhow::{anyhow, bail, Context, Result};
use schatten_harmonics::fourier::{parseval_residuals, OperatorField};
use schatten_harmonics::inequalities::{
    check_alpha, check_pp, check_pq, check_qp, check_uin_convex, AlphaWeights,
};
use schatten_harmonics::operators::{singular_values, NormKind, ScalarFunction};
use schatten_harmonics::report::{Direction, InequalityReport, ReportParams};
use schatten_harmonics::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Parseval,
    Pp,
    Pq,
    Qp,
    Alpha,
    Uin,
}

/// One `--check NAME[@p]` entry.
#[derive(Debug, Clone)]
pub struct CheckSpec {
    pub kind: CheckKind,
    pub p: Option<f64>,
}

/// Resolved per-run context shared by every check.
pub struct CheckContext {
    pub default_p: Option<f64>,
    pub phi: ScalarFunction,
    pub alpha: Option<AlphaWeights>,
}

impl CheckSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (name, p) = match text.split_once('@') {
            Some((name, p)) => (
                name,
                Some(
                    p.parse::<f64>()
                        .with_context(|| format!("bad exponent in --check {text:?}"))?,
                ),
            ),
            None => (text, None),
        };
        let kind = match name {
            "parseval" => CheckKind::Parseval,
            "pp" => CheckKind::Pp,
            "pq" => CheckKind::Pq,
            "qp" => CheckKind::Qp,
            "alpha" => CheckKind::Alpha,
            "uin" => CheckKind::Uin,
            _ => bail!(
                "unknown check {name:?}; expected parseval, pp, pq, qp, alpha or uin"
            ),
        };
        Ok(CheckSpec { kind, p })
    }

    pub fn label(&self) -> String {
        let name = match self.kind {
            CheckKind::Parseval => "parseval",
            CheckKind::Pp => "pp",
            CheckKind::Pq => "pq",
            CheckKind::Qp => "qp",
            CheckKind::Alpha => "alpha",
            CheckKind::Uin => "uin",
        };
        match self.p {
            Some(p) => format!("{name}@{p}"),
            None => name.to_string(),
        }
    }

    fn exponent(&self, ctx: &CheckContext) -> Result<f64> {
        self.p
            .or(ctx.default_p)
            .ok_or_else(|| anyhow!("check {} needs an exponent: use --p or {}@<p>", self.label(), self.label()))
    }

    /// Runs the check, returning one report per asserted statement.
    pub fn run(&self, field: &OperatorField, ctx: &CheckContext) -> Result<Vec<InequalityReport>> {
        match self.kind {
            CheckKind::Parseval => parseval_reports(field),
            CheckKind::Pp => Ok(vec![check_pp(field, self.exponent(ctx)?)?]),
            CheckKind::Pq => Ok(vec![check_pq(field, self.exponent(ctx)?)?]),
            CheckKind::Qp => Ok(vec![check_qp(field, self.exponent(ctx)?)?]),
            CheckKind::Alpha => {
                let p = self.exponent(ctx)?;
                let alpha = match &ctx.alpha {
                    Some(a) => a.clone(),
                    None => AlphaWeights::uniform(field.group().order()),
                };
                Ok(vec![check_alpha(field, p, &alpha)?])
            }
            CheckKind::Uin => Ok(vec![check_uin_convex(
                field,
                &ctx.phi,
                NormKind::Schatten(1.0),
            )?]),
        }
    }
}

/// The Parseval identity as two report lines, one per residual norm. The
/// operator-norm bound is `1e-10 (1 + max ||A||_op^2)`; the trace residual is
/// bounded by `dim` times that.
fn parseval_reports(field: &OperatorField) -> Result<Vec<InequalityReport>> {
    let residuals = parseval_residuals(field)?;
    let mut scale = 0.0f64;
    for a in field.values() {
        scale = scale.max(singular_values(a)?.operator_norm().powi(2));
    }
    let bound = tol::IDENTITY * (1.0 + scale);
    let params = ReportParams::new()
        .with_group(&field.group().to_string())
        .with_dim(field.dim());
    let digest = field.digest();
    Ok(vec![
        InequalityReport::evaluate(
            "parseval",
            Direction::Le,
            residuals.operator,
            bound,
            0.0,
            params.clone().with_norm("operator"),
            digest.clone(),
        ),
        InequalityReport::evaluate(
            "parseval-trace",
            Direction::Le,
            residuals.trace,
            bound * field.dim() as f64,
            0.0,
            params.with_norm("schatten:1"),
            digest,
        ),
    ])
}

/// Parses and validates the check list, applying defaults.
pub fn parse_checks(raw: &[String], default: &str) -> Result<Vec<CheckSpec>> {
    if raw.is_empty() {
        return Ok(vec![CheckSpec::parse(default)?]);
    }
    raw.iter().map(|s| CheckSpec::parse(s)).collect()
}

/// Enforces the manifest invariant that an explicit `--q` matches `p/(p-1)`.
pub fn validate_conjugate(p: Option<f64>, q: Option<f64>) -> Result<()> {
    if let (Some(p), Some(q)) = (p, q) {
        if p <= 1.0 {
            bail!("--q given but p = {p} has no finite conjugate exponent");
        }
        let expect = p / (p - 1.0);
        if (q - expect).abs() > 1e-9 * (1.0 + expect) {
            bail!("--q {q} is inconsistent with p/(p-1) = {expect}");
        }
    }
    Ok(())
}
