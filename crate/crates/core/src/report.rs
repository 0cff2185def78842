//! Inequality reports: the common result record produced by every checker,
//! its JSON/CSV serialization, and input digests for provenance.

use crate::operators::CMatrix;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Claimed orientation of an inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Claim `lhs <= rhs`.
    Le,
    /// Claim `lhs >= rhs`.
    Ge,
}

impl Direction {
    pub fn holds(self, lhs: f64, rhs: f64, tolerance: f64) -> bool {
        match self {
            Direction::Le => lhs <= rhs + tolerance,
            Direction::Ge => lhs >= rhs - tolerance,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Direction::Le => Direction::Ge,
            Direction::Ge => Direction::Le,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Le => "<=",
            Direction::Ge => ">=",
        }
    }
}

/// Parameters a report was produced with; unused fields stay empty.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct ReportParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub norm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim: Option<usize>,
    /// Weight vector as exact `numerator/denominator` strings.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<Vec<String>>,
}

impl ReportParams {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    /// Records `p` together with its conjugate exponent `q = p/(p-1)`;
    /// only meaningful for `p > 1`.
    pub fn with_conjugate_pair(mut self, p: f64) -> Self {
        debug_assert!(p > 1.0, "conjugate exponent needs p > 1");
        self.p = Some(p);
        self.q = Some(p / (p - 1.0));
        self
    }

    pub fn with_phi(mut self, phi: &str) -> Self {
        self.phi = Some(phi.to_string());
        self
    }

    pub fn with_norm(mut self, norm: &str) -> Self {
        self.norm = Some(norm.to_string());
        self
    }

    pub fn with_group(mut self, group: &str) -> Self {
        self.group = Some(group.to_string());
        self
    }

    pub fn with_dim(mut self, dim: usize) -> Self {
        self.dim = Some(dim);
        self
    }

    pub fn with_alpha(mut self, alpha: Vec<String>) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_r_s(mut self, r: f64, s: f64) -> Self {
        self.r = Some(r);
        self.s = Some(s);
        self
    }
}

/// Outcome of one inequality evaluation.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InequalityReport {
    pub name: String,
    pub direction: Direction,
    pub lhs: f64,
    pub rhs: f64,
    /// Signed margin `rhs - lhs`.
    pub margin: f64,
    pub holds: bool,
    pub tolerance: f64,
    pub params: ReportParams,
    pub input_digest: String,
}

impl InequalityReport {
    pub const CSV_HEADER: &'static str = "name,p,group,dim,margin,holds";

    pub fn evaluate(
        name: impl Into<String>,
        direction: Direction,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
        params: ReportParams,
        input_digest: String,
    ) -> Self {
        InequalityReport {
            name: name.into(),
            direction,
            lhs,
            rhs,
            margin: rhs - lhs,
            holds: direction.holds(lhs, rhs, tolerance),
            tolerance,
            params,
            input_digest,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.name,
            self.params.p.map_or(String::new(), |p| p.to_string()),
            self.params.group.clone().unwrap_or_default(),
            self.params.dim.map_or(String::new(), |d| d.to_string()),
            self.margin,
            self.holds
        )
    }
}

/// SHA-256 digest of a labelled list of matrices, as lowercase hex. The
/// digest covers the label, each matrix's shape and every entry bit-exactly.
pub fn digest_matrices(label: &str, matrices: &[CMatrix]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(label.as_bytes());
    hasher.update([0u8]);
    for m in matrices {
        hasher.update((m.nrows() as u64).to_le_bytes());
        hasher.update((m.ncols() as u64).to_le_bytes());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let z = m[(i, j)];
                hasher.update(z.re.to_le_bytes());
                hasher.update(z.im.to_le_bytes());
            }
        }
    }
    hex::encode(hasher.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn holds_matches_direction_and_tolerance() {
        assert!(Direction::Le.holds(1.0, 1.0, 0.0));
        assert!(Direction::Le.holds(1.0 + 1e-12, 1.0, 1e-9));
        assert!(!Direction::Le.holds(2.0, 1.0, 1e-9));
        assert!(Direction::Ge.holds(2.0, 1.0, 0.0));
        assert!(!Direction::Ge.holds(1.0, 2.0, 1e-9));
    }

    #[test]
    fn report_margin_is_signed() {
        let r = InequalityReport::evaluate(
            "demo",
            Direction::Le,
            1.0,
            3.0,
            1e-9,
            ReportParams::new().with_p(4.0),
            "d".into(),
        );
        assert_eq!(r.margin, 2.0);
        assert!(r.holds);
        let json = r.to_json();
        assert!(json.contains("\"direction\":\"le\""));
        assert!(json.contains("\"p\":4.0"));
    }

    #[test]
    fn conjugate_pair_invariant() {
        let params = ReportParams::new().with_conjugate_pair(4.0);
        let (p, q) = (params.p.unwrap(), params.q.unwrap());
        assert!((q - p / (p - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn digest_sensitive_to_entries_and_label() {
        let a = CMatrix::identity(2, 2);
        let mut b = a.clone();
        b[(0, 0)] = Complex64::new(1.0 + 1e-15, 0.0);
        assert_ne!(
            digest_matrices("x", std::slice::from_ref(&a)),
            digest_matrices("x", &[b])
        );
        assert_ne!(
            digest_matrices("x", std::slice::from_ref(&a)),
            digest_matrices("y", &[a])
        );
    }
}
