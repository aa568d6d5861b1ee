//! Command-line surface. Every command that produces randomness takes a
//! `--seed`, so identical invocations produce byte-identical files.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "degflow",
    version,
    about = "Degree distributions of growing networks: density evolution, \
             simulation, and power-law fits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evolve the degree distribution exactly and write it out
    Compute(ComputeArgs),
    /// Grow networks edge by edge and write the empirical distribution
    Simulate(SimulateArgs),
    /// Fit a power law to one or more distribution files
    Fit(FitArgs),
    /// Cross-validate density evolution against simulation
    Compare(CompareArgs),
    /// Emit reference tables (segment plans, multi-horizon fits)
    Tables(TablesArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    /// Constant growth: every arrival brings m links
    #[value(alias = "constant")]
    Ba,
    /// Accelerating growth, m·⌊i^θ⌋ links for arrival i
    Power,
    /// Accelerating growth, m·⌊ln i⌋ links for arrival i
    #[value(alias = "logarithmic")]
    Log,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Growth-model flags shared by every command that builds a network.
#[derive(Args)]
pub struct ModelArgs {
    /// Growth family
    #[arg(long, value_enum)]
    pub model: ModelKind,

    /// Links per arrival (scale factor for the accelerating families)
    #[arg(long, default_value_t = 1)]
    pub m: u64,

    /// Acceleration exponent in [0, 1); required for --model power
    #[arg(long, required_if_eq("model", "power"))]
    pub theta: Option<f64>,

    /// Seed-graph size (defaults to max(m+1, 3))
    #[arg(long)]
    pub m0: Option<u64>,
}

/// Output destination and shape, shared by the distribution-producing
/// commands.
#[derive(Args)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output path; stdout when omitted. Relative paths land in
    /// $DEGFLOW_OUT_DIR when that is set.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Emit plot-ready log10k,log10p columns instead of k,p (CSV only)
    #[arg(long)]
    pub loglog: bool,
}

#[derive(Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Horizon: number of arrival steps
    #[arg(long)]
    pub t: u64,

    /// First tracked arrival (default chosen per family)
    #[arg(long = "S")]
    pub start: Option<u64>,

    /// Probability-mass budget the evolution may drop per tracked node
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Horizon: number of arrival steps
    #[arg(long)]
    pub t: u64,

    /// First counted arrival (default chosen per family)
    #[arg(long = "S")]
    pub start: Option<u64>,

    /// Base seed for the replication streams
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Number of independent replications to pool
    #[arg(long, default_value_t = 20)]
    pub reps: u32,

    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct FitArgs {
    /// Distribution file to fit; repeat for a fit table. CSV (`k,p`) and
    /// JSON files from compute/simulate are both accepted.
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,

    /// Lower fit bound (default: tail window for JSON inputs, full data
    /// extent for bare CSV)
    #[arg(long)]
    pub k_min: Option<u64>,

    /// Upper fit bound
    #[arg(long)]
    pub k_max: Option<u64>,

    /// Output path; stdout when omitted (always JSON)
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Horizon: number of arrival steps
    #[arg(long)]
    pub t: u64,

    /// First tracked arrival (default chosen per family)
    #[arg(long = "S")]
    pub start: Option<u64>,

    /// Truncation budget for the density-evolution side
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,

    /// Base seed for the replication streams
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Number of independent replications
    #[arg(long, default_value_t = 20)]
    pub reps: u32,

    /// Largest degree to report
    #[arg(long, default_value_t = 30)]
    pub max_k: u64,

    /// Output path; stdout when omitted (always JSON)
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct TablesArgs {
    #[command(subcommand)]
    pub table: TableKind,
}

#[derive(Subcommand)]
pub enum TableKind {
    /// Initial-degree segmentation of the arrival axis
    Segments(SegmentsArgs),
    /// Tail fits across several horizons, with the amplitude-drift exponent
    Fits(FitsArgs),
}

#[derive(Args)]
pub struct SegmentsArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Horizon the plan must cover
    #[arg(long)]
    pub t: u64,

    /// First tracked arrival (default chosen per family)
    #[arg(long = "S")]
    pub start: Option<u64>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output path; stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct FitsArgs {
    #[command(flatten)]
    pub model: ModelArgs,

    /// Horizon; repeat the flag for every table row
    #[arg(long, required = true)]
    pub t: Vec<u64>,

    /// First tracked arrival (default chosen per family)
    #[arg(long = "S")]
    pub start: Option<u64>,

    /// Probability-mass budget per tracked node
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,

    /// Output format (the drift exponent z is only carried by JSON)
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Output path; stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
}
