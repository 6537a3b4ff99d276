//! `slopecert`: parameter sweeps with deterministic JSON reports, and
//! re-checking of stored step certificates.
//!
//! Exit codes: 0 every check passed, 1 a mathematical check failed, 2 usage
//! or configuration error.

#![forbid(unsafe_code)]

use clap::{Args, Parser, Subcommand};
use slopecert_core::suite::{self, certificates_from_json, recheck_all, IntRange, SweepConfig, Target};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "slopecert", version, about = "Verify combinatorial, Hecke and step certificates for crystalline reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite and write its report.
    Verify(Box<VerifyArgs>),
    /// Re-verify every certificate stored in a report or certificate file.
    Recheck {
        path: PathBuf,
    },
}

/// Flags override `SLOPECERT_*` environment variables, which override the
/// config file, which overrides the defaults.
#[derive(Args)]
struct VerifyArgs {
    /// identities, lemmas, matrices, steps or all.
    target: String,
    /// JSON file with any subset of the configuration fields.
    #[arg(long, env = "SLOPECERT_CONFIG")]
    config: Option<PathBuf>,
    /// Comma-separated primes.
    #[arg(long, alias = "p", env = "SLOPECERT_PRIMES", value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// ν range, `lo..hi` or a single value.
    #[arg(long, env = "SLOPECERT_NU")]
    nu: Option<String>,
    /// s range.
    #[arg(long, env = "SLOPECERT_S")]
    s: Option<String>,
    /// α range.
    #[arg(long, env = "SLOPECERT_ALPHA")]
    alpha: Option<String>,
    /// β range.
    #[arg(long, env = "SLOPECERT_BETA")]
    beta: Option<String>,
    /// Comma-separated exponents m.
    #[arg(long, env = "SLOPECERT_M", value_delimiter = ',')]
    m: Option<Vec<u32>>,
    /// Comma-separated units ι.
    #[arg(long, env = "SLOPECERT_IOTA", value_delimiter = ',', allow_hyphen_values = true)]
    iota: Option<Vec<i64>>,
    /// Precision M of step certificates.
    #[arg(long, env = "SLOPECERT_PRECISION")]
    precision: Option<u32>,
    /// Upper bound for u in the identity sweeps.
    #[arg(long, env = "SLOPECERT_MAX_U")]
    max_u: Option<i64>,
    /// Random θ-criterion instances per prime.
    #[arg(long, env = "SLOPECERT_THETA_SAMPLES")]
    theta_samples: Option<usize>,
    /// Worker threads (0 = all cores).
    #[arg(long, env = "SLOPECERT_JOBS")]
    jobs: Option<usize>,
    /// Seed for random sampling.
    #[arg(long, env = "SLOPECERT_SEED")]
    seed: Option<u64>,
    /// Report path; stdout if absent.
    #[arg(long, env = "SLOPECERT_OUT")]
    out: Option<PathBuf>,
    /// Accept ranges outside the theorem's regime.
    #[arg(long, env = "SLOPECERT_ALLOW_DEGENERATE")]
    allow_degenerate: bool,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("slopecert: {msg}");
    ExitCode::from(2)
}

fn range(text: &Option<String>) -> Result<Option<IntRange>, String> {
    text.as_deref().map(|t| t.parse::<IntRange>().map_err(|e| e.to_string())).transpose()
}

fn effective_config(args: &VerifyArgs) -> Result<SweepConfig, String> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => SweepConfig::default(),
    };
    if let Some(v) = &args.primes {
        cfg.primes = v.clone();
    }
    if let Some(r) = range(&args.nu)? {
        cfg.nu = Some(r);
    }
    if let Some(r) = range(&args.s)? {
        cfg.s = Some(r);
    }
    if let Some(r) = range(&args.alpha)? {
        cfg.alpha = Some(r);
    }
    if let Some(r) = range(&args.beta)? {
        cfg.beta = Some(r);
    }
    if let Some(v) = &args.m {
        cfg.m = v.clone();
    }
    if let Some(v) = &args.iota {
        cfg.iota = v.clone();
    }
    if args.precision.is_some() {
        cfg.precision = args.precision;
    }
    cfg.max_u = args.max_u.unwrap_or(cfg.max_u);
    cfg.theta_samples = args.theta_samples.unwrap_or(cfg.theta_samples);
    cfg.jobs = args.jobs.unwrap_or(cfg.jobs);
    cfg.seed = args.seed.unwrap_or(cfg.seed);
    cfg.allow_degenerate |= args.allow_degenerate;
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn verify(args: VerifyArgs) -> ExitCode {
    let target: Target = match args.target.parse() {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let cfg = match effective_config(&args) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let report = match suite::run(target, &cfg) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let json = report.to_json();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                return usage(format!("{}: {e}", path.display()));
            }
        }
        None => print!("{json}"),
    }
    let s = report.summary;
    eprintln!(
        "{target}: {} checks, {} passed, {} failed, {} excluded, {} certificates",
        s.checks,
        s.passed,
        s.failed,
        s.excluded,
        report.certificates.len()
    );
    for f in &report.failures {
        eprintln!("FAIL {} [{}]: {}", f.check, f.parameters, f.detail);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn recheck(path: PathBuf) -> ExitCode {
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return usage(format!("{}: {e}", path.display())),
    };
    if serde_json::from_str::<serde_json::Value>(&text).is_err() {
        return usage(format!("{}: not a JSON document", path.display()));
    }
    let certs = match certificates_from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("recheck: {e}");
            return ExitCode::from(1);
        }
    };
    match recheck_all(&certs) {
        Ok(n) => {
            eprintln!("recheck: {n} certificates verified");
            ExitCode::SUCCESS
        }
        Err((i, e)) => {
            eprintln!("recheck: certificate {i} ({}): {e}", certs[i].params.label());
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Verify(args) => verify(*args),
        Command::Recheck { path } => recheck(path),
    }
}
