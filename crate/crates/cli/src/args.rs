use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::ReportFormat;

pub const SEED_ENV: &str = "SPECTRAL_PERTURB_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "spectral-perturb",
    version,
    about = "Subspace perturbation bounds: evaluate, reproduce, stress-test"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every bound for a population/sample matrix pair.
    Bound(BoundArgs),
    /// Reproduce the closed-form sharpness examples.
    Sharpness(SharpnessArgs),
    /// Run a seeded Monte Carlo campaign.
    Montecarlo(MonteCarloArgs),
    /// Run the property suites and report pass/fail per property.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Report path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symmetric,
    SvdRight,
    SvdLeft,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Population matrix (CSV rows or JSON).
    pub pop_file: PathBuf,
    /// Sample matrix (CSV rows or JSON).
    pub samp_file: PathBuf,
    /// First index of the block (1-based).
    #[arg(long)]
    pub r: usize,
    /// Last index of the block (1-based, inclusive).
    #[arg(long)]
    pub s: usize,
    #[arg(long, value_enum, default_value_t = Mode::Symmetric)]
    pub mode: Mode,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Diag,
    Rotation,
}

#[derive(Debug, Args)]
pub struct SharpnessArgs {
    #[arg(long, value_enum)]
    pub example: Example,
    /// Dimension (diag example only).
    #[arg(long, default_value_t = 4)]
    pub p: usize,
    /// Block size (diag example only).
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub epsilon: f64,
    /// Also write population.{csv,json} and sample.{csv,json} to this directory.
    #[arg(long)]
    pub emit_matrices: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ensemble {
    Spiked,
    Rectangular,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    #[arg(long, value_enum, default_value_t = Ensemble::Spiked)]
    pub ensemble: Ensemble,
    #[arg(long, default_value_t = 20)]
    pub p: usize,
    /// Column count (rectangular ensemble).
    #[arg(long)]
    pub q: Option<usize>,
    /// Comma-separated nonincreasing values, padded with the last one.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "5,1",
        allow_negative_numbers = true
    )]
    pub spectrum: Vec<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub noise: f64,
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    #[arg(long, env = SEED_ENV, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Worker threads; the report does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Identities,
    Bounds,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 200)]
    pub trials: u64,
    #[arg(long, env = SEED_ENV, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}
