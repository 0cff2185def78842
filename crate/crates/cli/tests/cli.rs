//! Process-level tests of the CLI contract: exit codes, output formats,
//! determinism and the witness round trip.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_schatten-harmonics");

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/z2_field.json")
}

fn run_in(dir: &Path, args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).current_dir(dir).env_remove("SCHATTEN_HARMONICS_CAP");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(Path::new(env!("CARGO_MANIFEST_DIR")), args, &[])
}

fn stdout_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("stdout is JSONL"))
        .collect()
}

#[test]
fn verify_bundled_field_holds() {
    let input = fixture();
    let out = run(&[
        "verify",
        "--input",
        input.to_str().unwrap(),
        "--check",
        "pp@4",
        "--check",
        "parseval",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 3); // pp + two parseval residual lines
    for line in &lines {
        assert_eq!(line["type"], "report");
        assert_eq!(line["holds"], true);
    }
}

#[test]
fn verify_random_field_at_two_is_tight() {
    let out = run(&[
        "verify", "--group", "Z3", "--dim", "2", "--seed", "5", "--check", "pp@2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let lines = stdout_lines(&out);
    let margin = lines[0]["margin"].as_f64().unwrap();
    let rhs = lines[0]["rhs"].as_f64().unwrap();
    assert!(margin.abs() <= 1e-9 * (1.0 + rhs));
}

#[test]
fn malformed_field_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{this is not json").unwrap();
    let out = run(&["verify", "--input", path.to_str().unwrap(), "--check", "pp@4"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn usage_errors_exit_two() {
    // Missing seed for a generated field.
    let out = run(&["verify", "--group", "Z3", "--dim", "2", "--check", "pp@4"]);
    assert_eq!(out.status.code(), Some(2));
    // Inconsistent conjugate pair.
    let out = run(&[
        "verify", "--group", "Z3", "--dim", "2", "--seed", "1", "--check", "pp@4", "--p", "4",
        "--q", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown check name.
    let out = run(&[
        "verify", "--group", "Z3", "--dim", "2", "--seed", "1", "--check", "frobnicate",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Missing probe exponents.
    let out = run(&[
        "sharpness", "--target", "boas", "--group", "Z2", "--dim", "2", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn chartable_z2_is_the_sign_matrix() {
    let out = run(&["chartable", "--group", "Z2^1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1,1\n1,-1\n");
}

#[test]
fn chartable_z4_has_exact_quarter_turns() {
    let out = run(&["chartable", "--group", "Z4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0], "1,1,1,1");
    assert_eq!(rows[1], "1,0+1i,-1,0-1i");
    assert_eq!(rows[2], "1,-1,1,-1");
    assert_eq!(rows[3], "1,0-1i,-1,0+1i");
}

#[test]
fn chartable_cap_violation_exits_two() {
    let out = run(&["chartable", "--group", "Z2^7"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn cap_resolution_flag_beats_env() {
    let dir = tempfile::tempdir().unwrap();
    // Env cap forbids Z16.
    let out = run_in(
        dir.path(),
        &["chartable", "--group", "Z16"],
        &[("SCHATTEN_HARMONICS_CAP", "8")],
    );
    assert_eq!(out.status.code(), Some(2));
    // Explicit flag overrides the env var.
    let out = run_in(
        dir.path(),
        &["chartable", "--group", "Z16", "--cap", "16"],
        &[("SCHATTEN_HARMONICS_CAP", "8")],
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn fuzz_streams_reports_then_summary_deterministically() {
    let args = [
        "fuzz", "--group", "Z3", "--dim", "2", "--trials", "20", "--seed", "7", "--check",
        "pp@3", "--check", "pq@1.5", "--check", "qp@3",
    ];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 20 * 3 + 1);
    for line in &lines[..lines.len() - 1] {
        assert_eq!(line["type"], "report");
        assert_eq!(line["holds"], true);
    }
    let summary = &lines[lines.len() - 1];
    assert_eq!(summary["type"], "summary");
    assert_eq!(summary["violations"], 0);
    assert!(summary["checks"]["pp@3"]["min_margin"].as_f64().is_some());

    // Bit-identical rerun.
    let again = run(&args);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn fuzz_quasinorm_regime_holds() {
    let out = run(&[
        "fuzz", "--group", "Z3", "--dim", "2", "--trials", "20", "--seed", "11", "--check",
        "pp@0.5",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
}

#[test]
fn fuzz_zero_trials_emits_empty_summary() {
    let out = run(&[
        "fuzz", "--group", "Z2", "--dim", "2", "--trials", "0", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["type"], "summary");
    assert_eq!(lines[0]["violations"], 0);
}

#[test]
fn fuzz_requires_seed() {
    let out = run(&["fuzz", "--group", "Z2", "--dim", "2", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_format_emits_header_and_rows() {
    let out = run(&[
        "verify", "--group", "Z3", "--dim", "2", "--seed", "5", "--check", "pp@3",
        "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,p,group,dim,margin,holds"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("pp,3,Z3,2,"), "{row}");
    assert!(row.ends_with(",true"));
}

#[test]
fn alpha_check_with_weight_file() {
    let dir = tempfile::tempdir().unwrap();
    let weights = dir.path().join("alpha.json");
    std::fs::write(&weights, "[[1,2],[1,4],[1,4]]").unwrap();
    let out = run(&[
        "verify", "--group", "Z3", "--dim", "2", "--seed", "3", "--check", "alpha@3",
        "--alpha", weights.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    // Weights that do not sum to 1 are a usage error.
    std::fs::write(&weights, "[[1,2],[1,4],[1,8]]").unwrap();
    let out = run(&[
        "verify", "--group", "Z3", "--dim", "2", "--seed", "3", "--check", "alpha@3",
        "--alpha", weights.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn emitted_field_round_trips_to_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let saved = dir.path().join("field.json");
    let first = run(&[
        "verify", "--group", "Z3", "--dim", "2", "--seed", "9", "--check", "pp@3",
        "--emit-field", saved.to_str().unwrap(),
    ]);
    assert_eq!(first.status.code(), Some(0));
    let second = run(&[
        "verify", "--input", saved.to_str().unwrap(), "--check", "pp@3",
    ]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "round trip must not change reports");
}

#[test]
fn sharpness_persists_witness_and_recheck_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("witnesses");
    let out = run(&[
        "sharpness", "--target", "pp@4", "--group", "Z2", "--dim", "2", "--trials", "50",
        "--restarts", "2", "--seed", "3", "--witness-dir", store.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let lines = stdout_lines(&out);
    let best = lines[0]["best_ratio"].as_f64().unwrap();
    assert!(best >= 1.0 - 1e-6, "constant start reaches equality: {best}");
    assert_eq!(lines[0]["violated"], false);
    let path = lines[0]["witness_path"].as_str().expect("witness stored");

    // The stored witness reproduces.
    let out = run(&["witness", "--input", store.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["reproduced"], true);
    assert_eq!(lines[0]["violated"], false);

    // Tampering with the stored ratio is caught and exits 1.
    let text = std::fs::read_to_string(path).unwrap();
    let mut record: serde_json::Value = serde_json::from_str(&text).unwrap();
    record["best_ratio"] = serde_json::json!(0.5);
    std::fs::write(path, serde_json::to_string_pretty(&record).unwrap()).unwrap();
    let out = run(&["witness", "--input", path]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["reproduced"], false);
}

#[test]
fn sharpness_probe_on_reducible_triple() {
    let out = run(&[
        "sharpness", "--target", "boas", "--group", "Z2", "--dim", "2", "--p", "2", "--r",
        "2", "--s", "2", "--trials", "40", "--restarts", "2", "--seed", "5",
        "--witness-dir", tempfile::tempdir().unwrap().path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let lines = stdout_lines(&out);
    let ratio = lines[0]["best_ratio"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() <= 1e-7, "ratio {ratio}");
}

#[test]
fn circle_group_field_verifies() {
    let out = run(&[
        "verify", "--group", "T@8", "--dim", "2", "--seed", "4", "--check", "parseval",
        "--check", "qp@3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let lines = stdout_lines(&out);
    assert!(lines.iter().all(|l| l["holds"] == true));
}
