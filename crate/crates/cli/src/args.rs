use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::table::Format;

/// Exact and sampled trace moments of truncated heavy-tailed Wigner matrices,
/// witness walk families and divergence bounds.
#[derive(Debug, Parser)]
#[command(name = "wigner-lab", version)]
pub struct Cli {
    /// JSON file with default values for any flag (snake_case keys).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Master seed; every random draw derives from it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the result here (atomically) instead of standard output.
    #[arg(long, short, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact trace moments from the walk-sum expansion.
    ExactMoments(ExactMomentsArgs),
    /// Monte Carlo estimate of a trace moment.
    Mc(McArgs),
    /// Build, validate and count a witness walk family.
    Witness(WitnessArgs),
    /// Evaluate the normalized lower bound over a grid of ln n.
    Sweep(SweepArgs),
    /// Catalan and bounded-degree tree counts with their lower estimates.
    Combinatorics(CombinatoricsArgs),
    /// Run the acceptance criteria.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileChoice {
    /// Every even moment equal to one.
    Ones,
    /// Moments of the truncated heavy-tailed law.
    HeavyTail,
}

#[derive(Debug, Args)]
pub struct ExactMomentsArgs {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub s_max: Option<usize>,
    #[arg(long, value_enum)]
    pub profile: Option<ProfileChoice>,
    /// Truncation level as an exact rational such as `4` or `7/2`.
    #[arg(long)]
    pub u: Option<String>,
    /// Truncation exponent; sets the level from n when no level is given.
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawChoice {
    HeavyTail,
    Rademacher,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Truncation exponent (default 0.1).
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Sample without truncation.
    #[arg(long)]
    pub no_truncation: bool,
    #[arg(long, value_enum)]
    pub law: Option<LawChoice>,
    /// Split trials across this many worker threads.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Also write one sampled matrix drawn from the seed.
    #[arg(long, value_name = "FILE")]
    pub dump_matrix: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceChoice {
    Min,
    Far,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub s_pp: Option<usize>,
    #[arg(long)]
    pub d0: Option<usize>,
    /// Number of principal (core) edges.
    #[arg(long)]
    pub big_d: Option<usize>,
    #[arg(long)]
    pub nu2: Option<usize>,
    /// Number of Y-part trips.
    #[arg(long)]
    pub l: Option<usize>,
    /// Extra completion ascents beyond 5 s''.
    #[arg(long)]
    pub extra: Option<usize>,
    #[arg(long, value_enum)]
    pub distance: Option<DistanceChoice>,
    /// Write the generated walks here.
    #[arg(long, value_name = "FILE")]
    pub dump: Option<PathBuf>,
    /// Summarize every tuple s'' <= s-pp-max, D <= big-d-max, nu2 <= nu2-max, D <= L <= D + l-span.
    #[arg(long)]
    pub grid: bool,
    #[arg(long)]
    pub s_pp_max: Option<usize>,
    #[arg(long)]
    pub big_d_max: Option<usize>,
    #[arg(long)]
    pub nu2_max: Option<usize>,
    #[arg(long)]
    pub l_span: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub epsilon_prime: Option<f64>,
    #[arg(long)]
    pub ln_start: Option<f64>,
    #[arg(long)]
    pub ln_stop: Option<f64>,
    #[arg(long)]
    pub ln_step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CombinatoricsArgs {
    #[arg(long)]
    pub s_max: Option<usize>,
    /// Children bound for the bounded-degree counts.
    #[arg(long)]
    pub d0: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    CatalanOffByOne,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Run only these criteria (comma-separated ids).
    #[arg(long, value_delimiter = ',')]
    pub only: Option<Vec<u8>>,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}
