//! The `selfdec` command line.
//!
//! Exit codes: 0 when every requested check passes, 1 when a verification
//! or self-test fails, 2 on usage errors.

mod selftest;

pub use selftest::{run_checks, Check};

use crate::catalog::{
    all_tokens, describe, identity_case_with, DistributionId, IdentityId, ParamOverrides,
};
use crate::verify::{all_passed, to_csv, to_json, to_text, verify_all, Suite};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable that raises the per-integral evaluation budget.
pub const EVAL_BUDGET_VAR: &str = "SELFDEC_EVAL_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "selfdec",
    version,
    about = "Self-decomposable distribution catalog and identity verifier"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List distribution and identity ids.
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Describe a distribution or an identity.
    Show {
        target: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Parameter overrides, `k=v[,k=v...]`.
        #[arg(long)]
        params: Option<String>,
    },
    /// Verify one identity, or `all`.
    Verify {
        target: String,
        #[arg(long)]
        tol: Option<f64>,
        /// Comma-separated t values replacing the default grid.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Parameter overrides, `k=v[,k=v...]`.
        #[arg(long)]
        params: Option<String>,
        /// Report wall time as 0 so that output is reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
    },
    /// Run the special-function and quadrature invariant checks.
    Selftest {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    List,
    Show,
    Verify,
    Selftest,
}

/// A parsed and validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: CommandKind,
    pub target: Option<String>,
    pub tol: Option<f64>,
    pub grid: Option<Vec<f64>>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub params: ParamOverrides,
    pub timing: bool,
    pub eval_budget: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

fn parse_params(s: &str) -> Result<ParamOverrides, UsageError> {
    let mut out = ParamOverrides::new();
    for item in s.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| UsageError(format!("malformed parameter '{item}', expected k=v")))?;
        let value: f64 = v.trim().parse().map_err(|_| {
            UsageError(format!(
                "parameter '{}' has a non-numeric value '{v}'",
                k.trim()
            ))
        })?;
        out.insert(k.trim().to_string(), value);
    }
    Ok(out)
}

fn parse_grid(s: &str) -> Result<Vec<f64>, UsageError> {
    let grid = s
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .ok()
                .filter(|t| t.is_finite())
                .ok_or_else(|| {
                    UsageError(format!("grid value '{}' is not a finite number", v.trim()))
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if grid.is_empty() {
        return Err(UsageError("grid is empty".into()));
    }
    Ok(grid)
}

fn parse_budget(value: Option<OsString>) -> Result<Option<usize>, UsageError> {
    let Some(v) = value else { return Ok(None) };
    let s = v.to_string_lossy();
    s.trim()
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
        .map(Some)
        .ok_or_else(|| {
            UsageError(format!(
                "{EVAL_BUDGET_VAR} must be a positive integer, got '{s}'"
            ))
        })
}

impl CliConfig {
    fn from_cli(cli: Cli, budget: Option<OsString>) -> Result<CliConfig, UsageError> {
        let eval_budget = parse_budget(budget)?;
        let base = CliConfig {
            command: CommandKind::List,
            target: None,
            tol: None,
            grid: None,
            format: Format::Text,
            out: None,
            params: ParamOverrides::new(),
            timing: true,
            eval_budget,
        };
        let cfg = match cli.command {
            Command::List { format } => CliConfig { format, ..base },
            Command::Selftest { format } => CliConfig {
                command: CommandKind::Selftest,
                format,
                ..base
            },
            Command::Show {
                target,
                format,
                params,
            } => CliConfig {
                command: CommandKind::Show,
                target: Some(target),
                format,
                params: params
                    .as_deref()
                    .map(parse_params)
                    .transpose()?
                    .unwrap_or_default(),
                ..base
            },
            Command::Verify {
                target,
                tol,
                grid,
                format,
                out,
                params,
                no_timing,
            } => {
                if let Some(t) = tol {
                    if !(t > 0.0 && t.is_finite()) {
                        return Err(UsageError(format!("--tol must be positive, got {t}")));
                    }
                }
                CliConfig {
                    command: CommandKind::Verify,
                    target: Some(target),
                    tol,
                    grid: grid.as_deref().map(parse_grid).transpose()?,
                    format,
                    out,
                    params: params
                        .as_deref()
                        .map(parse_params)
                        .transpose()?
                        .unwrap_or_default(),
                    timing: !no_timing,
                    ..base
                }
            }
        };
        if cfg.format == Format::Csv && cfg.command != CommandKind::Verify {
            return Err(UsageError("csv output is only available for verify".into()));
        }
        Ok(cfg)
    }
}

fn unknown_target(target: &str) -> UsageError {
    UsageError(format!(
        "unknown id '{target}'; valid ids: {}",
        all_tokens().join(", ")
    ))
}

#[derive(Serialize)]
struct Listing {
    distributions: Vec<&'static str>,
    identities: Vec<&'static str>,
}

fn cmd_list(cfg: &CliConfig) -> (i32, String) {
    let listing = Listing {
        distributions: DistributionId::ALL.iter().map(|d| d.token()).collect(),
        identities: IdentityId::ALL.iter().map(|i| i.token()).collect(),
    };
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&listing).expect("listing serializes"),
        _ => {
            let mut s = String::from("distributions:\n");
            for d in DistributionId::ALL {
                s.push_str(&format!("  {d}\n"));
            }
            s.push_str("identities:\n");
            for i in IdentityId::ALL {
                s.push_str(&format!("  {:<6} {}\n", i.token(), i.tag()));
            }
            s.pop();
            s
        }
    };
    (EXIT_OK, text)
}

fn cmd_show(cfg: &CliConfig) -> Result<(i32, String), UsageError> {
    let target = cfg.target.as_deref().unwrap_or_default();
    let d = describe(target, &cfg.params).map_err(|e| match e {
        crate::catalog::CatalogError::UnknownId(t) => unknown_target(&t),
        other => UsageError(other.to_string()),
    })?;
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&d).expect("descriptor serializes"),
        _ => d.to_text(),
    };
    Ok((EXIT_OK, text))
}

fn build_suite(cfg: &CliConfig) -> Result<Suite, UsageError> {
    let target = cfg.target.as_deref().unwrap_or_default();
    let mut suite = if target == "all" {
        let known: Vec<&str> = IdentityId::ALL
            .iter()
            .flat_map(|&id| crate::catalog::identity_case(id).parameters)
            .map(|p| p.name)
            .collect();
        if let Some(k) = cfg.params.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(UsageError(format!(
                "no identity has a parameter '{k}' (valid: {})",
                {
                    let mut names = known.clone();
                    names.sort();
                    names.dedup();
                    names.join(", ")
                }
            )));
        }
        Suite::standard_with(&cfg.params).map_err(|e| UsageError(e.to_string()))?
    } else {
        let id: IdentityId = target.parse().map_err(|_| unknown_target(target))?;
        let case = identity_case_with(id, &cfg.params).map_err(|e| UsageError(e.to_string()))?;
        let mut s = Suite::standard();
        s.cases = vec![case];
        s
    };
    if let Some(tol) = cfg.tol {
        suite.tolerance = tol;
        suite.tolerance_overrides.clear();
    }
    if let Some(grid) = &cfg.grid {
        suite.t_grid = grid.clone();
        suite.mirror_complex = false;
    }
    if let Some(budget) = cfg.eval_budget {
        suite.quadrature.max_evaluations = suite.quadrature.max_evaluations.max(budget);
    }
    suite.timing = cfg.timing;
    suite.validate().map_err(|e| UsageError(e.to_string()))?;
    Ok(suite)
}

fn cmd_verify(cfg: &CliConfig) -> Result<(i32, String), UsageError> {
    let suite = build_suite(cfg)?;
    let reports = verify_all(&suite).map_err(|e| UsageError(e.to_string()))?;
    let text = match cfg.format {
        Format::Json => to_json(&reports),
        Format::Csv => to_csv(&reports),
        Format::Text => to_text(&reports),
    };
    let code = if all_passed(&reports) {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    Ok((code, text))
}

fn cmd_selftest(cfg: &CliConfig) -> (i32, String) {
    let checks = run_checks();
    let code = if checks.iter().all(|c| c.passed) {
        EXIT_OK
    } else {
        EXIT_FAILED
    };
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&checks).expect("checks serialize"),
        _ => checks
            .iter()
            .map(|c| {
                format!(
                    "{} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    (code, text)
}

/// Executes a validated configuration, writing output to `stdout` or to
/// the `--out` file.
pub fn execute(cfg: &CliConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = match cfg.command {
        CommandKind::List => Ok(cmd_list(cfg)),
        CommandKind::Show => cmd_show(cfg),
        CommandKind::Verify => cmd_verify(cfg),
        CommandKind::Selftest => Ok(cmd_selftest(cfg)),
    };
    let (code, mut text) = match result {
        Ok(v) => v,
        Err(UsageError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    code
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    budget: Option<OsString>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match CliConfig::from_cli(cli, budget) {
        Ok(cfg) => execute(&cfg, stdout, stderr),
        Err(UsageError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Entry point used by the binary: process arguments, real stdio and the
/// evaluation-budget variable.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        std::env::var_os(EVAL_BUDGET_VAR),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}
