//! Command-line driver: field verification, seeded fuzzing, sharpness
//! search, character-table export and witness re-checking.
//!
//! Exit codes: 0 on success, 1 when any check reports `holds = false` (or a
//! witness fails to reproduce), 2 on usage, parse or configuration errors.

mod checks;
mod commands;
mod output;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment variable overriding the default group-order cap.
pub const CAP_ENV: &str = "SCHATTEN_HARMONICS_CAP";

#[derive(Parser)]
#[command(
    name = "schatten-harmonics",
    version,
    about = "Numerical checks for Schatten-norm inequalities of operator fields \
             on finite abelian groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
pub struct CommonArgs {
    /// Group spec such as Z6, Z2^3, Z2xZ4 or T@64.
    #[arg(long)]
    pub group: Option<String>,
    /// Matrix dimension of the field values.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Schatten exponent used by checks without an inline @p.
    #[arg(long)]
    pub p: Option<f64>,
    /// Conjugate exponent; when given it must equal p/(p-1).
    #[arg(long)]
    pub q: Option<f64>,
    /// Outer exponent of the interpolation probe.
    #[arg(long)]
    pub r: Option<f64>,
    /// Integral exponent of the interpolation probe.
    #[arg(long)]
    pub s: Option<f64>,
    /// Scalar function tag: power:<exp>, sqrt, square or identity.
    #[arg(long)]
    pub phi: Option<String>,
    /// Path to a JSON file of rational weights [[num, den], ...].
    #[arg(long)]
    pub alpha: Option<PathBuf>,
    /// Output file (defaults to stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Group-order cap; overrides SCHATTEN_HARMONICS_CAP and the default 64.
    #[arg(long)]
    pub cap: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks against a field file or a seeded random field.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Field file to verify; omit to generate one from --group/--dim/--seed.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Checks to run: parseval, pp[@p], pq[@p], qp[@p], alpha[@p], uin.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// Seed for the generated field when no --input is given.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the verified field to this path (lets runs be replayed).
        #[arg(long)]
        emit_field: Option<PathBuf>,
    },
    /// Stream seeded random trials through the checkers as JSON lines.
    Fuzz {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, required = true)]
        trials: u64,
        #[arg(long, required = true)]
        seed: u64,
        /// Checks to run per trial (default pp@3).
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// Randomized sharpness search / conjecture probe.
    Sharpness {
        #[command(flatten)]
        common: CommonArgs,
        /// Target: pp[@p], pq[@p], qp[@p] or boas (with --p/--r/--s).
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 4)]
        restarts: u32,
        /// Entrywise Gaussian step size for the hill climb.
        #[arg(long, default_value_t = 0.25)]
        scale: f64,
        #[arg(long, required = true)]
        seed: u64,
        /// Directory of the append-only witness store.
        #[arg(long, default_value = "witnesses")]
        witness_dir: PathBuf,
        /// Optional wall-clock budget in seconds.
        #[arg(long)]
        budget_secs: Option<f64>,
    },
    /// Export a group's character table as CSV (rows are characters).
    Chartable {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Re-verify stored witness files against their embedded configs.
    Witness {
        #[command(flatten)]
        common: CommonArgs,
        /// Witness file or directory of witness files.
        #[arg(long)]
        input: PathBuf,
    },
}

/// Resolves the group-order cap: flag, then environment, then default.
pub fn resolve_cap(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| anyhow::anyhow!("{CAP_ENV} must be an integer, got {text:?}")),
        Err(_) => Ok(schatten_harmonics::DEFAULT_ORDER_CAP),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify {
            common,
            input,
            checks,
            seed,
            emit_field,
        } => commands::verify(common, input, checks, seed, emit_field),
        Command::Fuzz {
            common,
            trials,
            seed,
            checks,
        } => commands::fuzz(common, trials, seed, checks),
        Command::Sharpness {
            common,
            target,
            trials,
            restarts,
            scale,
            seed,
            witness_dir,
            budget_secs,
        } => commands::sharpness(
            common,
            target,
            trials,
            restarts,
            scale,
            seed,
            witness_dir,
            budget_secs,
        ),
        Command::Chartable { common } => commands::chartable(common),
        Command::Witness { common, input } => commands::witness(common, input),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
