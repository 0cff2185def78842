//! Implementations of the CLI subcommands.

use crate::checks::{parse_checks, validate_conjugate, CheckContext, CheckSpec};
use crate::output::Sink;
use crate::{resolve_cap, CommonArgs, EXIT_OK, EXIT_VIOLATION};
use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;
use schatten_harmonics::explorer::{
    boas_koskela_probe, evaluate_ratio, sharpness_search, SearchConfig, SearchResult, Target,
    WitnessRecord, WitnessStore, PERSIST_NEAR_ONE,
};
use schatten_harmonics::fourier::OperatorField;
use schatten_harmonics::groups::parse_group;
use schatten_harmonics::inequalities::AlphaWeights;
use schatten_harmonics::io::{field_from_json, field_to_json, FieldJson};
use schatten_harmonics::operators::ScalarFunction;
use schatten_harmonics::sample::{random_field, rng_from_seed};
use serde_json::json;
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Loads the field from `--input`, or generates one from
/// `--group/--dim/--seed`. Returns the field with its group label as given.
fn load_or_generate(
    common: &CommonArgs,
    input: &Option<PathBuf>,
    seed: Option<u64>,
    cap: u64,
) -> Result<(OperatorField, String)> {
    if let Some(path) = input {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let json: FieldJson = serde_json::from_str(&text)
            .with_context(|| format!("cannot parse {}", path.display()))?;
        let field = field_from_json(&json, cap)?;
        return Ok((field, json.group));
    }
    let group_str = common
        .group
        .as_deref()
        .ok_or_else(|| anyhow!("need --input or --group"))?;
    let dim = common.dim.ok_or_else(|| anyhow!("need --dim to generate a field"))?;
    let seed = seed.ok_or_else(|| anyhow!("need --seed to generate a field"))?;
    let parsed = parse_group(group_str, cap)?;
    let field = random_field(parsed.spec(), dim, &mut rng_from_seed(seed));
    Ok((field, parsed.label()))
}

fn check_context(common: &CommonArgs) -> Result<CheckContext> {
    let phi = match common.phi.as_deref() {
        Some(tag) => ScalarFunction::parse(tag)?,
        None => ScalarFunction::square(),
    };
    let alpha = match &common.alpha {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let pairs: Vec<(u64, u64)> = serde_json::from_str(&text)
                .with_context(|| "alpha file must be a JSON array of [num, den] pairs")?;
            Some(AlphaWeights::from_pairs(&pairs)?)
        }
        None => None,
    };
    Ok(CheckContext {
        default_p: common.p,
        phi,
        alpha,
    })
}

pub fn verify(
    common: CommonArgs,
    input: Option<PathBuf>,
    checks: Vec<String>,
    seed: Option<u64>,
    emit_field: Option<PathBuf>,
) -> Result<u8> {
    let cap = resolve_cap(common.cap)?;
    validate_conjugate(common.p, common.q)?;
    let (field, label) = load_or_generate(&common, &input, seed, cap)?;
    let specs = parse_checks(&checks, "parseval")?;
    let ctx = check_context(&common)?;

    if let Some(path) = &emit_field {
        let text = serde_json::to_string_pretty(&field_to_json(&field, Some(&label)))?;
        std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }

    let mut sink = Sink::new(common.output.clone(), common.format)?;
    let mut all_hold = true;
    for spec in &specs {
        for report in spec.run(&field, &ctx)? {
            all_hold &= report.holds;
            sink.report(&report)?;
        }
    }
    sink.flush()?;
    Ok(if all_hold { EXIT_OK } else { EXIT_VIOLATION })
}

#[derive(Default, Clone, Copy)]
struct CheckStats {
    count: u64,
    violations: u64,
    min_margin: Option<f64>,
}

pub fn fuzz(common: CommonArgs, trials: u64, seed: u64, checks: Vec<String>) -> Result<u8> {
    let cap = resolve_cap(common.cap)?;
    validate_conjugate(common.p, common.q)?;
    let group_str = common
        .group
        .as_deref()
        .ok_or_else(|| anyhow!("fuzz needs --group"))?;
    let dim = common.dim.ok_or_else(|| anyhow!("fuzz needs --dim"))?;
    let parsed = parse_group(group_str, cap)?;
    let specs = parse_checks(&checks, "pp@3")?;
    let ctx = check_context(&common)?;

    let mut sink = Sink::new(common.output.clone(), common.format)?;
    let mut rng = rng_from_seed(seed);
    let mut stats: BTreeMap<String, CheckStats> = BTreeMap::new();
    for spec in &specs {
        stats.insert(spec.label(), CheckStats::default());
    }

    for _ in 0..trials {
        let field = random_field(parsed.spec(), dim, &mut rng);
        for spec in &specs {
            for report in spec.run(&field, &ctx)? {
                let entry = stats.entry(spec.label()).or_default();
                entry.count += 1;
                if !report.holds {
                    entry.violations += 1;
                }
                entry.min_margin = Some(match entry.min_margin {
                    Some(m) => m.min(report.margin),
                    None => report.margin,
                });
                sink.report(&report)?;
            }
        }
    }

    let checks_json: serde_json::Map<String, serde_json::Value> = stats
        .iter()
        .map(|(label, s)| {
            (
                label.clone(),
                json!({
                    "count": s.count,
                    "violations": s.violations,
                    "min_margin": s.min_margin,
                }),
            )
        })
        .collect();
    let violations: u64 = stats.values().map(|s| s.violations).sum();
    sink.json_line(&json!({
        "type": "summary",
        "command": "fuzz",
        "group": parsed.label(),
        "dim": dim,
        "trials": trials,
        "seed": seed,
        "violations": violations,
        "checks": checks_json,
    }))?;
    sink.flush()?;
    Ok(if violations == 0 { EXIT_OK } else { EXIT_VIOLATION })
}

fn parse_target(text: &str, common: &CommonArgs) -> Result<Target> {
    if text == "boas" || text == "boas-koskela" {
        let (p, r, s) = match (common.p, common.r, common.s) {
            (Some(p), Some(r), Some(s)) => (p, r, s),
            _ => bail!("the interpolation probe needs --p, --r and --s"),
        };
        return Ok(Target::BoasKoskela { p, r, s });
    }
    let spec = CheckSpec::parse(text)?;
    let p = spec
        .p
        .or(common.p)
        .ok_or_else(|| anyhow!("target {text:?} needs an exponent (use {text}@<p> or --p)"))?;
    match spec.kind {
        crate::checks::CheckKind::Pp => Ok(Target::Pp { p }),
        crate::checks::CheckKind::Pq => Ok(Target::Pq { p }),
        crate::checks::CheckKind::Qp => Ok(Target::Qp { p }),
        _ => bail!("target must be pp, pq, qp or boas"),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn sharpness(
    common: CommonArgs,
    target: String,
    trials: u64,
    restarts: u32,
    scale: f64,
    seed: u64,
    witness_dir: PathBuf,
    budget_secs: Option<f64>,
) -> Result<u8> {
    let cap = resolve_cap(common.cap)?;
    let group_str = common
        .group
        .as_deref()
        .ok_or_else(|| anyhow!("sharpness needs --group"))?;
    let dim = common.dim.ok_or_else(|| anyhow!("sharpness needs --dim"))?;
    let parsed = parse_group(group_str, cap)?;
    let target = parse_target(&target, &common)?;

    let cfg = SearchConfig {
        target,
        group: parsed.spec().clone(),
        dim,
        trials,
        restarts,
        perturbation_scale: scale,
        seed,
        budget_secs,
    };
    let result: SearchResult = match target {
        Target::BoasKoskela { .. } => boas_koskela_probe(&cfg, None)?,
        _ => sharpness_search(&cfg, None)?,
    };

    let witness_path = if result.violated || result.best_ratio >= 1.0 - PERSIST_NEAR_ONE {
        let store = WitnessStore::open(&witness_dir)?;
        Some(store.persist(&WitnessRecord::new(&cfg, &result))?)
    } else {
        None
    };

    let mut sink = Sink::new(common.output.clone(), common.format)?;
    sink.json_line(&json!({
        "type": "sharpness",
        "target": target.label(),
        "group": parsed.label(),
        "dim": dim,
        "trials": trials,
        "restarts": restarts,
        "seed": seed,
        "best_ratio": result.best_ratio,
        "violated": result.violated,
        "budget_exhausted": result.budget_exhausted,
        "improvements": result.trace.len(),
        "witness_path": witness_path.as_ref().map(|p| p.display().to_string()),
    }))?;
    sink.flush()?;
    Ok(if result.violated { EXIT_VIOLATION } else { EXIT_OK })
}

fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        x.to_string()
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_real(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{}{}i", fmt_real(z.re), sign, fmt_real(z.im.abs()))
    }
}

pub fn chartable(common: CommonArgs) -> Result<u8> {
    let cap = resolve_cap(common.cap)?;
    let group_str = common
        .group
        .as_deref()
        .ok_or_else(|| anyhow!("chartable needs --group"))?;
    let parsed = parse_group(group_str, cap)?;
    let table = parsed.spec().character_table();
    let mut sink = Sink::new(common.output.clone(), common.format)?;
    for i in 0..table.nrows() {
        let row: Vec<String> = (0..table.ncols())
            .map(|j| fmt_complex(table[(i, j)]))
            .collect();
        sink.line(&row.join(","))?;
    }
    sink.flush()?;
    Ok(EXIT_OK)
}

pub fn witness(common: CommonArgs, input: PathBuf) -> Result<u8> {
    let cap = resolve_cap(common.cap)?;
    let files: Vec<PathBuf> = if input.is_dir() {
        WitnessStore::open(&input)?.list()?
    } else {
        vec![input]
    };
    if files.is_empty() {
        bail!("no witness files found");
    }

    let mut sink = Sink::new(common.output.clone(), common.format)?;
    let mut all_ok = true;
    for path in files {
        let record = WitnessStore::load(&path)?;
        let cfg = record.config.resolve(cap)?;
        let field = record.witness_field(cap)?;
        let recomputed = evaluate_ratio(&cfg.target, &field)?.ratio;
        let reproduced =
            (recomputed - record.best_ratio).abs() <= 1e-9 * (1.0 + recomputed.abs());
        let violated = recomputed > 1.0 + cfg.target.tolerance_rel();
        all_ok &= reproduced && !violated;
        sink.json_line(&json!({
            "type": "witness",
            "path": path.display().to_string(),
            "target": cfg.target.label(),
            "stored_ratio": record.best_ratio,
            "recomputed_ratio": recomputed,
            "reproduced": reproduced,
            "violated": violated,
        }))?;
    }
    sink.flush()?;
    Ok(if all_ok { EXIT_OK } else { EXIT_VIOLATION })
}
