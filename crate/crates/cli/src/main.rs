mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "qleaf", version, about = "Leaves of SU(2)*, U_q(su(2)) representations and lattice path integrals")]
struct Cli {
    /// Report wall_ms as null so that identical flags give identical output.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one representation and dump its matrices.
    Rep(RepArgs),
    /// Run verification suites and print a report.
    Verify(VerifyArgs),
    /// Compare a lattice matrix element against its operator.
    Pathint(PathintArgs),
    /// Sample a leaf and tabulate its coordinates and brackets.
    Leaf(LeafArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Double,
    Extended,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct RepArgs {
    #[arg(long)]
    pub spin: f64,
    #[arg(long)]
    pub hbar: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, value_enum, default_value = "extended")]
    pub precision: Precision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Poisson,
    Rmatrix,
    Algebra,
    Rll,
    Reflection,
    Casimir,
    Limit,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = 0.5)]
    pub spin: f64,
    #[arg(long, default_value_t = 0.5)]
    pub hbar: f64,
    /// Use the unweighted trace L11 + L22 for the Casimir (expected to fail).
    #[arg(long)]
    pub naive_trace: bool,
    #[arg(long, value_enum, default_value = "extended")]
    pub precision: Precision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Insert {
    #[value(name = "a")]
    #[serde(rename = "a")]
    A,
    #[value(name = "chi+")]
    #[serde(rename = "chi+")]
    ChiPlus,
    #[value(name = "chi-")]
    #[serde(rename = "chi-")]
    ChiMinus,
    #[value(name = "H")]
    #[serde(rename = "H")]
    H,
    #[value(name = "X+")]
    #[serde(rename = "X+")]
    XPlus,
    #[value(name = "X-")]
    #[serde(rename = "X-")]
    XMinus,
    #[value(name = "gauss-L+")]
    #[serde(rename = "gauss-L+")]
    GaussLPlus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelArg {
    Fejer,
    Dirichlet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MidpointArg {
    Phi,
    J,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct PathintArgs {
    #[arg(long, default_value_t = 0.5)]
    pub spin: f64,
    #[arg(long, default_value_t = 1.386294)]
    pub hbar: f64,
    #[arg(long, value_enum)]
    pub insert: Insert,
    /// Where the leaf function is evaluated along a step (ignored for gauss-L+).
    #[arg(long, value_enum, default_value = "phi")]
    pub midpoint: MidpointArg,
    #[arg(long, default_value_t = 2000)]
    pub nj: usize,
    #[arg(long, default_value_t = 200)]
    pub windings: usize,
    #[arg(long, default_value_t = 512)]
    pub nphi: usize,
    #[arg(long, value_enum, default_value = "fejer")]
    pub kernel: KernelArg,
    /// Maximum relative error; defaults to 1e-2 (2e-2 for a and gauss-L+).
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct LeafArgs {
    #[arg(long)]
    pub radius: f64,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Bad input (exit 2) versus a failure while computing (exit 1).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(anyhow::Error),
}

macro_rules! internal {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Internal(e.into())
            }
        }
    )*};
}

internal!(
    anyhow::Error,
    std::io::Error,
    csv::Error,
    serde_json::Error,
    qleaf_core::leaf::LeafError,
    qleaf_core::numkit::NumError,
    qleaf_core::pathint::PathError,
    qleaf_core::repq::RepqError,
    qleaf_core::rmatrix::RMatrixError
);

fn init_logging() {
    let level = match std::env::var("QLEAF_LOG").as_deref() {
        Ok("quiet") => log::LevelFilter::Off,
        Ok("info") => log::LevelFilter::Info,
        Ok("debug") => log::LevelFilter::Debug,
        _ => log::LevelFilter::Warn,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();
}

fn main() -> ExitCode {
    init_logging();
    let cli = Cli::parse();
    let timing = !cli.no_timing;
    let outcome = match &cli.command {
        Command::Rep(a) => commands::rep(a, timing),
        Command::Verify(a) => commands::verify(a, timing),
        Command::Pathint(a) => commands::pathint(a, timing),
        Command::Leaf(a) => commands::leaf(a, timing),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
