//! Command-line front end: `eval`, `check`, `sweep` and `pq`.
//!
//! [`run`] is the whole program minus process exit, so tests can drive it
//! in-process with captured output.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kapteyn_core::catalog::{find_identity, Identity, Params};
use kapteyn_core::summation::{eval_series, EvalReport, SeriesSpec};
use kapteyn_core::{AccuracyBudget, Error};

mod commands;
mod table;

pub use table::{fmt_float, Cell, Table};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const NO_CONVERGENCE: i32 = 2;
}

#[derive(Debug, Parser)]
#[command(
    name = "kapteyn",
    version,
    about = "Evaluate and verify Kapteyn series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one series, from the catalog or a JSON spec.
    Eval(EvalArgs),
    /// Compare both sides of catalog identities at their default parameters.
    Check(CheckArgs),
    /// Write the data behind one of the figures as CSV.
    Sweep(SweepArgs),
    /// Print the numerator polynomial P_q of K2(z, q).
    Pq(PqArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Relative tolerance, strictly between 1e-15 and 1e-2.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_terms: usize,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    pub identity: Option<String>,
    /// JSON series spec.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Identity parameter as name=value; repeatable.
    #[arg(long = "param", value_parser = parse_param)]
    pub params: Vec<(String, f64)>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Restrict to one identity.
    #[arg(long)]
    pub id: Option<String>,
    /// Override a default parameter (needs --id); repeatable.
    #[arg(long = "param", value_parser = parse_param, requires = "id")]
    pub params: Vec<(String, f64)>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub figure: u32,
    /// Sweep parameter as name=value; figures 1 and 2 accept x.
    #[arg(long = "param", value_parser = parse_param)]
    pub params: Vec<(String, f64)>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct PqArgs {
    #[arg(long)]
    pub q: i64,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("parameter `{}` is not a number: `{v}`", k.trim()))?;
    Ok((k.trim().to_string(), v))
}

/// Where the series of an `eval` comes from.
#[derive(Debug)]
pub enum Source {
    Identity(&'static Identity, Params),
    Spec(Box<SeriesSpec>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcommandKind {
    Eval,
    Check,
    Sweep,
    Pq,
}

/// Validated settings shared by every subcommand.
#[derive(Debug)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub source: Option<Source>,
    pub budget: AccuracyBudget,
    pub out: Option<PathBuf>,
    pub format: Format,
}

/// A failure carrying the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted { .. } | Error::NonFinite(_) => exit::NO_CONVERGENCE,
            _ => exit::USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl RunConfig {
    fn new(
        subcommand: SubcommandKind,
        common: &CommonArgs,
        default_format: Format,
    ) -> Result<Self, Failure> {
        if !(common.tol > 1e-15 && common.tol < 1e-2) {
            return Err(Failure::usage(format!(
                "--tol must lie strictly between 1e-15 and 1e-2, got {}",
                common.tol
            )));
        }
        let budget = AccuracyBudget::new(common.tol, common.max_terms)?;
        Ok(Self {
            subcommand,
            source: None,
            budget,
            out: common.out.clone(),
            format: common.format.unwrap_or(default_format),
        })
    }

    pub fn from_eval(args: &EvalArgs) -> Result<Self, Failure> {
        let mut cfg = Self::new(SubcommandKind::Eval, &args.common, Format::Text)?;
        cfg.source = Some(match (&args.identity, &args.spec) {
            (Some(id), _) => {
                let identity = find_identity(id)?;
                let p = identity.resolve_params(&args.params.iter().cloned().collect())?;
                Source::Identity(identity, p)
            }
            (None, Some(path)) => {
                if !args.params.is_empty() {
                    return Err(Failure::usage("--param applies to --identity only"));
                }
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
                let spec: SeriesSpec = serde_json::from_str(&text)
                    .map_err(|e| Failure::usage(format!("invalid series spec: {e}")))?;
                spec.validate()?;
                Source::Spec(Box::new(spec))
            }
            (None, None) => return Err(Failure::usage("one of --identity or --spec is required")),
        });
        Ok(cfg)
    }
}

impl Source {
    pub fn evaluate(&self, budget: &AccuracyBudget) -> Result<EvalReport, Error> {
        match self {
            Source::Identity(identity, p) => identity.eval_series(p, budget),
            Source::Spec(spec) => eval_series(spec, budget),
        }
    }
}

/// Parse `args` (including the program name) and run the command.
/// Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(out, "{rendered}");
                return exit::OK;
            }
            let _ = write!(err, "{rendered}");
            return exit::USAGE;
        }
    };
    match commands::dispatch(&cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
