//! Randomized sharpness probe and conjecture fuzzer.
//!
//! The search maximizes the oriented ratio `bounded side / bounding side` of
//! a target inequality over matrix fields: restarts begin at the known
//! equality candidates (constant and single-character fields) and then at
//! random fields, each followed by entrywise-Gaussian hill climbing with an
//! adaptive step size. Sharpness shows up as ratios approaching 1 from
//! below; a ratio above `1 + tol` flags a numerical counterexample candidate
//! (never a proof) and is persisted with full provenance.
//!
//! Everything is seeded: one restart owns one ChaCha stream derived from the
//! config seed, so identical configs reproduce identical results bit for
//! bit. A wall-clock budget, when set, may truncate the search early; the
//! result is then flagged and determinism holds only for un-truncated runs.

mod store;

pub use store::{WitnessRecord, WitnessStore};

use crate::fourier::{fourier_coefficients, FourierError, OperatorField};
use crate::groups::GroupSpec;
use crate::inequalities::{check_pp, check_pq, check_qp, equality_witness, IneqError, WitnessKind};
use crate::io::IoError;
use crate::operators::schatten_power_sum;
use crate::report::Direction;
use crate::sample::{random_field, rng_from_seed, standard_complex, subseed, ChaCha8Rng};
use crate::tol;
use serde::{Deserialize, Serialize};
use std::time::Instant;
use thiserror::Error;

/// Results with a ratio within this distance of 1 (or above) are worth
/// persisting as sharpness witnesses.
pub const PERSIST_NEAR_ONE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum ExplorerError {
    #[error("invalid search config: {0}")]
    Config(String),
    #[error(
        "parameters violate the probe constraints (need s <= p <= r and \
         r/(r-1) <= s <= r): p = {p}, r = {r}, s = {s}"
    )]
    BoasConstraints { p: f64, r: f64, s: f64 },
    #[error("target {target} cannot be driven by this entry point ({hint})")]
    WrongEntryPoint {
        target: String,
        hint: &'static str,
    },
    #[error(transparent)]
    Ineq(#[from] IneqError),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("witness store: {0}")]
    Store(String),
}

/// The inequality a search drives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "checker", rename_all = "kebab-case")]
pub enum Target {
    /// Same-exponent check, both regimes of `p`.
    Pp { p: f64 },
    /// Conjugate-exponent check for `1 < p <= 2`.
    Pq { p: f64 },
    /// Conjugate-exponent check for `p >= 2`.
    Qp { p: f64 },
    /// The conjectured interpolation family
    /// `(sum_k ||B_k||_p^r)^{1/r} <= (int ||A||_p^s dmu)^{1/s}`.
    BoasKoskela { p: f64, r: f64, s: f64 },
}

impl Target {
    pub fn label(&self) -> String {
        match self {
            Target::Pp { p } => format!("pp@{p}"),
            Target::Pq { p } => format!("pq@{p}"),
            Target::Qp { p } => format!("qp@{p}"),
            Target::BoasKoskela { p, r, s } => format!("boas-koskela@p{p},r{r},s{s}"),
        }
    }

    /// Relative tolerance scale used for the violation threshold.
    pub fn tolerance_rel(&self) -> f64 {
        match self {
            Target::Pp { p } if *p < 1.0 => tol::QUASINORM_REL,
            _ => tol::REPORT_REL,
        }
    }

    fn validate(&self) -> Result<(), ExplorerError> {
        match *self {
            Target::Pp { p } => {
                if p > 0.0 {
                    Ok(())
                } else {
                    Err(ExplorerError::Config(format!("pp needs p > 0, got {p}")))
                }
            }
            Target::Pq { p } => {
                if p > 1.0 && p <= 2.0 {
                    Ok(())
                } else {
                    Err(ExplorerError::Config(format!(
                        "pq needs 1 < p <= 2, got {p}"
                    )))
                }
            }
            Target::Qp { p } => {
                if p >= 2.0 {
                    Ok(())
                } else {
                    Err(ExplorerError::Config(format!("qp needs p >= 2, got {p}")))
                }
            }
            Target::BoasKoskela { p, r, s } => {
                let conj_ok = r > 1.0 && r / (r - 1.0) <= s;
                if s <= p && p <= r && conj_ok && s <= r {
                    Ok(())
                } else {
                    Err(ExplorerError::BoasConstraints { p, r, s })
                }
            }
        }
    }
}

/// Everything a search run depends on; two equal configs reproduce the same
/// result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub target: Target,
    pub group: GroupSpec,
    pub dim: usize,
    /// Hill-climbing iterations per restart.
    pub trials: u64,
    pub restarts: u32,
    pub perturbation_scale: f64,
    pub seed: u64,
    /// Optional wall-clock budget in seconds.
    pub budget_secs: Option<f64>,
}

impl SearchConfig {
    fn validate(&self) -> Result<(), ExplorerError> {
        self.target.validate()?;
        if self.trials == 0 {
            return Err(ExplorerError::Config("trials must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(ExplorerError::Config("restarts must be at least 1".into()));
        }
        if !self.perturbation_scale.is_finite() || self.perturbation_scale <= 0.0 {
            return Err(ExplorerError::Config(
                "perturbation scale must be positive".into(),
            ));
        }
        if self.dim == 0 {
            return Err(ExplorerError::Config("dim must be at least 1".into()));
        }
        Ok(())
    }
}

/// Serializable form of [`SearchConfig`] with the group as a string; used by
/// the witness store.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SearchConfigJson {
    pub target: Target,
    pub group: String,
    pub dim: usize,
    pub trials: u64,
    pub restarts: u32,
    pub perturbation_scale: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget_secs: Option<f64>,
}

impl From<&SearchConfig> for SearchConfigJson {
    fn from(cfg: &SearchConfig) -> Self {
        SearchConfigJson {
            target: cfg.target,
            group: cfg.group.to_string(),
            dim: cfg.dim,
            trials: cfg.trials,
            restarts: cfg.restarts,
            perturbation_scale: cfg.perturbation_scale,
            seed: cfg.seed,
            budget_secs: cfg.budget_secs,
        }
    }
}

impl SearchConfigJson {
    pub fn resolve(&self, cap: u64) -> Result<SearchConfig, ExplorerError> {
        let group = GroupSpec::parse(&self.group, cap)
            .map_err(|e| ExplorerError::Config(e.to_string()))?;
        Ok(SearchConfig {
            target: self.target,
            group,
            dim: self.dim,
            trials: self.trials,
            restarts: self.restarts,
            perturbation_scale: self.perturbation_scale,
            seed: self.seed,
            budget_secs: self.budget_secs,
        })
    }
}

/// One oriented evaluation of the target on a field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioEval {
    /// `bounded side / bounding side`; sharp means approaching 1 from below.
    pub ratio: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub direction: Direction,
}

/// Outcome of a search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_ratio: f64,
    pub witness: OperatorField,
    /// Global-best improvements as `(evaluation index, ratio)`.
    pub trace: Vec<(u64, f64)>,
    /// True when the best ratio exceeded `1 + tol` (a counterexample
    /// candidate, subject to independent re-checking; never a proof).
    pub violated: bool,
    /// True when the wall-clock budget truncated the search.
    pub budget_exhausted: bool,
}

fn oriented_ratio(lhs: f64, rhs: f64, direction: Direction) -> f64 {
    let (bounded, bounding) = match direction {
        Direction::Le => (lhs, rhs),
        Direction::Ge => (rhs, lhs),
    };
    if bounding <= f64::MIN_POSITIVE {
        if bounded <= f64::MIN_POSITIVE {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        bounded / bounding
    }
}

/// Both sides of the conjectured `(p, r, s)` comparison.
pub fn boas_koskela_sides(
    field: &OperatorField,
    p: f64,
    r: f64,
    s: f64,
) -> Result<(f64, f64), ExplorerError> {
    let coeffs = fourier_coefficients(field);
    let mut lhs = 0.0;
    for b in coeffs.values() {
        lhs += schatten_power_sum(b, p)
            .map_err(IneqError::from)?
            .powf(r / p);
    }
    let lhs = lhs.powf(1.0 / r);
    let mut mean = 0.0;
    for a in field.values() {
        mean += schatten_power_sum(a, p)
            .map_err(IneqError::from)?
            .powf(s / p);
    }
    mean /= field.group().order() as f64;
    Ok((lhs, mean.powf(1.0 / s)))
}

/// Evaluates the target checker on a field and orients the ratio so that
/// proved inequalities give values at most 1.
pub fn evaluate_ratio(target: &Target, field: &OperatorField) -> Result<RatioEval, ExplorerError> {
    let (lhs, rhs, direction) = match *target {
        Target::Pp { p } => {
            let r = check_pp(field, p)?;
            (r.lhs, r.rhs, r.direction)
        }
        Target::Pq { p } => {
            let r = check_pq(field, p)?;
            (r.lhs, r.rhs, r.direction)
        }
        Target::Qp { p } => {
            let r = check_qp(field, p)?;
            (r.lhs, r.rhs, r.direction)
        }
        Target::BoasKoskela { p, r, s } => {
            let (lhs, rhs) = boas_koskela_sides(field, p, r, s)?;
            (lhs, rhs, Direction::Le)
        }
    };
    Ok(RatioEval {
        ratio: oriented_ratio(lhs, rhs, direction),
        lhs,
        rhs,
        direction,
    })
}

/// Entrywise complex Gaussian perturbation of magnitude `scale`;
/// deterministic under a fixed generator state.
pub fn perturb(field: &OperatorField, scale: f64, rng: &mut ChaCha8Rng) -> OperatorField {
    field
        .map_values(|m| m.map(|z| z + standard_complex(rng) * scale))
        .expect("perturbation preserves shape and finiteness")
}

/// Starting fields for a restart index: the known equality candidates first,
/// then independent random fields.
fn restart_start(cfg: &SearchConfig, restart: u32, rng: &mut ChaCha8Rng) -> OperatorField {
    match restart {
        0 => equality_witness(WitnessKind::ConstantField, &cfg.group, cfg.dim)
            .expect("constant witness is valid for any group"),
        1 => equality_witness(WitnessKind::SingleCharacter, &cfg.group, cfg.dim)
            .expect("single-character witness is valid for any group"),
        _ => random_field(&cfg.group, cfg.dim, rng),
    }
}

/// Runs the randomized sharpness search for the configured target.
///
/// When a store is given, any result with ratio within `1e-6` of 1 (or
/// above) is persisted with its config and witness field.
pub fn sharpness_search(
    cfg: &SearchConfig,
    store: Option<&WitnessStore>,
) -> Result<SearchResult, ExplorerError> {
    cfg.validate()?;
    let started = Instant::now();
    let mut budget_exhausted = false;

    let mut best_ratio = f64::NEG_INFINITY;
    let mut best_field: Option<OperatorField> = None;
    let mut trace: Vec<(u64, f64)> = Vec::new();
    let mut evaluations: u64 = 0;

    'restarts: for restart in 0..cfg.restarts {
        let mut rng = rng_from_seed(subseed(cfg.seed, restart as u64));
        let mut current = restart_start(cfg, restart, &mut rng);
        let mut current_ratio = evaluate_ratio(&cfg.target, &current)?.ratio;
        evaluations += 1;
        if current_ratio > best_ratio {
            best_ratio = current_ratio;
            best_field = Some(current.clone());
            trace.push((evaluations, current_ratio));
        }

        let mut sigma = cfg.perturbation_scale;
        for _ in 0..cfg.trials {
            if let Some(budget) = cfg.budget_secs {
                if started.elapsed().as_secs_f64() > budget {
                    budget_exhausted = true;
                    break 'restarts;
                }
            }
            let candidate = perturb(&current, sigma, &mut rng);
            let ratio = evaluate_ratio(&cfg.target, &candidate)?.ratio;
            evaluations += 1;
            if ratio > current_ratio {
                current = candidate;
                current_ratio = ratio;
                sigma = (sigma * 1.2).min(cfg.perturbation_scale);
                if ratio > best_ratio {
                    best_ratio = ratio;
                    best_field = Some(current.clone());
                    trace.push((evaluations, ratio));
                }
            } else {
                sigma = (sigma * 0.97).max(cfg.perturbation_scale * 1e-9);
            }
        }
    }

    let witness = best_field.expect("at least one restart ran");
    // Soundness: the reported ratio is re-derived from the stored witness.
    let best_ratio = evaluate_ratio(&cfg.target, &witness)?.ratio;
    let violated = best_ratio > 1.0 + cfg.target.tolerance_rel();
    let result = SearchResult {
        best_ratio,
        witness,
        trace,
        violated,
        budget_exhausted,
    };

    if let Some(store) = store {
        if result.violated || result.best_ratio >= 1.0 - PERSIST_NEAR_ONE {
            store.persist(&WitnessRecord::new(cfg, &result))?;
        }
    }
    Ok(result)
}

/// Probe for the conjectured `(p, r, s)` family; validates the parameter
/// constraints and runs the same search machinery.
pub fn boas_koskela_probe(
    cfg: &SearchConfig,
    store: Option<&WitnessStore>,
) -> Result<SearchResult, ExplorerError> {
    match cfg.target {
        Target::BoasKoskela { .. } => sharpness_search(cfg, store),
        other => Err(ExplorerError::WrongEntryPoint {
            target: other.label(),
            hint: "use sharpness_search for proved-theorem targets",
        }),
    }
}
