//! The `walker` command line: `report`, `classify` and `verify`.
//!
//! Exit status is 0 when a command ran, 1 for configuration or argument
//! errors, and 2 when `verify` finds an unflagged deviation. Classification
//! verdicts never change the exit status.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::audit::{run_audit, AuditConfig, RowStatus, FORMULA_TOL, SECOND_BIANCHI_TOL};
use crate::classify::{classify, PlanError};
use crate::config::{ConfigError, MetricConfig};
use crate::oracle::{MetricJetField, OracleCurvature};
use crate::report::{MetricEcho, PointTables, Report};
use crate::walker_metric::DIM;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_DEVIATION: i32 = 2;

pub const MAX_DEGREE: u32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("invalid sample plan: {0}")]
    Plan(#[from] PlanError),
    #[error("invalid argument `{name}`: {reason}")]
    Argument { name: &'static str, reason: String },
}

#[derive(Debug, Parser)]
#[command(name = "walker", version, about = "Curvature of restricted four-dimensional Walker metrics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every curvature object at one point.
    Report {
        #[arg(long)]
        metric: PathBuf,
        /// Comma-separated coordinates x1,x2,x3,x4 (default: origin).
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Option<[f64; DIM]>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run every classification check over a sample of points.
    Classify {
        #[arg(long)]
        metric: PathBuf,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compare the closed-form lists with first-principles curvature on random metrics.
    Verify {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = MAX_DEGREE)]
        degree: u32,
        /// Use the flat metric in every trial.
        #[arg(long)]
        flat: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn parse_point(s: &str) -> Result<[f64; DIM], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != DIM {
        return Err(format!("expected {DIM} comma-separated numbers, got {}", parts.len()));
    }
    let mut p = [0.0; DIM];
    for (slot, text) in p.iter_mut().zip(parts) {
        let v: f64 = text.parse().map_err(|_| format!("`{text}` is not a number"))?;
        if !v.is_finite() {
            return Err(format!("`{text}` is not finite"));
        }
        *slot = v;
    }
    Ok(p)
}

fn load_metric(path: &Path) -> Result<(MetricConfig, crate::walker_metric::WalkerMetric), CliError> {
    let cfg = MetricConfig::load(path)?;
    let m = cfg.metric()?;
    Ok((cfg, m))
}

pub fn cmd_report(path: &Path, point: Option<[f64; DIM]>) -> Result<Report, CliError> {
    let (_, m) = load_metric(path)?;
    let point = point.unwrap_or([0.0; DIM]);
    let tables = PointTables::at(&m, point);
    let mut warnings = Vec::new();
    for (name, gap) in &tables.oracle_gap {
        if *gap > FORMULA_TOL {
            warnings.push(format!("closed-form {name} differs from the first-principles value by {gap:.3e}"));
        }
    }
    let oracle = OracleCurvature::compute(&MetricJetField::new(&m.at(point)));
    let bianchi = oracle.nabla_r.second_bianchi_defect();
    if bianchi > SECOND_BIANCHI_TOL {
        warnings.push(format!("second Bianchi identity defect {bianchi:.3e}"));
    }
    Ok(Report {
        command: "report".into(),
        metric: Some(MetricEcho::of(&m)),
        points: vec![tables],
        classification: None,
        audit: None,
        warnings,
    })
}

pub fn cmd_classify(
    path: &Path,
    count: Option<usize>,
    seed: Option<u64>,
    tol: Option<f64>,
) -> Result<Report, CliError> {
    let (cfg, m) = load_metric(path)?;
    let mut plan = cfg.sample.clone();
    if let Some(c) = count {
        plan.count = c;
    }
    if let Some(s) = seed {
        plan.seed = s;
    }
    if let Some(t) = tol {
        plan.tolerance = t;
    }
    let report = classify(&m, &plan)?;
    let mut warnings = report.warnings.clone();
    for e in &report.entries {
        warnings.extend(e.warnings.iter().map(|w| format!("{}: {w}", e.condition)));
    }
    Ok(Report {
        command: "classify".into(),
        metric: Some(MetricEcho::of(&m)),
        points: Vec::new(),
        classification: Some(report),
        audit: None,
        warnings,
    })
}

pub fn cmd_verify(trials: usize, seed: u64, degree: u32, flat: bool) -> Result<Report, CliError> {
    if trials == 0 {
        return Err(CliError::Argument { name: "trials", reason: "must be at least 1".into() });
    }
    if degree > MAX_DEGREE {
        return Err(CliError::Argument { name: "degree", reason: format!("must be at most {MAX_DEGREE}") });
    }
    let cfg = AuditConfig { trials, seed, degree, force_flat: flat, ..AuditConfig::default() };
    let audit = run_audit(&cfg);
    let warnings = audit
        .rows
        .iter()
        .filter(|r| r.max_deviation > r.tolerance)
        .map(|r| {
            let kind = if r.status == RowStatus::Flagged { "flagged, not failing" } else { "deviates" };
            format!("{} {kind}: {:.3e} > {:e}", r.name, r.max_deviation, r.tolerance)
        })
        .collect();
    Ok(Report {
        command: "verify".into(),
        metric: None,
        points: Vec::new(),
        classification: None,
        audit: Some(audit),
        warnings,
    })
}

/// Exit status for a report that was produced successfully.
pub fn exit_code(report: &Report) -> i32 {
    match &report.audit {
        Some(a) if !a.passed => EXIT_DEVIATION,
        _ => EXIT_OK,
    }
}

pub fn execute(cli: Cli) -> Result<(Report, Format), CliError> {
    match cli.command {
        Command::Report { metric, point, format } => Ok((cmd_report(&metric, point)?, format)),
        Command::Classify { metric, count, seed, tol, format } => {
            Ok((cmd_classify(&metric, count, seed, tol)?, format))
        }
        Command::Verify { trials, seed, degree, flat, format } => Ok((cmd_verify(trials, seed, degree, flat)?, format)),
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli) {
        Ok((report, format)) => {
            let text = match format {
                Format::Text => report.to_text(),
                Format::Structured => report.to_structured(),
            };
            let _ = out.write_all(text.as_bytes());
            exit_code(&report)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CONFIG
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_parsing() {
        assert_eq!(parse_point("1, -2,0.5,3").unwrap(), [1.0, -2.0, 0.5, 3.0]);
        assert!(parse_point("1,2,3").is_err());
        assert!(parse_point("1,2,x,3").is_err());
        assert!(parse_point("1,2,inf,3").is_err());
    }

    #[test]
    fn verify_argument_validation() {
        assert!(matches!(cmd_verify(0, 1, 3, false), Err(CliError::Argument { name: "trials", .. })));
        assert!(matches!(cmd_verify(1, 1, 4, false), Err(CliError::Argument { name: "degree", .. })));
    }

    #[test]
    fn flat_verify_is_all_zero() {
        let r = cmd_verify(1, 7, 3, true).unwrap();
        let a = r.audit.as_ref().unwrap();
        assert!(a.rows.iter().all(|row| row.max_deviation == 0.0));
        assert_eq!(exit_code(&r), EXIT_OK);
    }

    #[test]
    fn usage_errors_exit_one() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["walker", "report"], &mut o, &mut e), EXIT_CONFIG);
        assert_eq!(run(["walker", "verify", "--trials", "0"], &mut o, &mut e), EXIT_CONFIG);
        assert_eq!(run(["walker", "--help"], &mut o, &mut e), EXIT_OK);
    }

    #[test]
    fn missing_file_is_config_error() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(["walker", "classify", "--metric", "/nonexistent/metric.toml"], &mut o, &mut e);
        assert_eq!(code, EXIT_CONFIG);
        assert!(String::from_utf8(e).unwrap().contains("cannot read"));
    }
}
