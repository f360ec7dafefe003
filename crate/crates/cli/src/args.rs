use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "traceforge", version, about = "Randomized verification of matrix trace inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List registered checks.
    List(ListArgs),
    /// Run checks and report whether each meets its expected status.
    Run(RunArgs),
    /// Search for a counterexample to one of the searchable checks.
    Search(SearchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Args, Debug)]
pub struct ListArgs {
    /// Show only checks whose name or statement contains this substring.
    pub filter: Option<String>,
    /// `json` prints the matching ids as a JSON array.
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
}

/// Overrides shared by `run` and `search`.
#[derive(Args, Debug)]
pub struct Common {
    /// Per-factor dimensions, replacing the default configurations.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    /// Root seed; every trial seed is derived from it.
    #[arg(long, env = "TRACEFORGE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Evaluation budget for counterexample searches.
    #[arg(long, default_value_t = traceforge_verify::DEFAULT_SEARCH_BUDGET)]
    pub budget: usize,
    /// Output path; the report is written atomically. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for trials.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Report entropies in bits instead of nats.
    #[arg(long)]
    pub bits: bool,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Check ids to run.
    pub ids: Vec<String>,
    /// Run every registered check.
    #[arg(long, conflicts_with_all = ["ids", "checks"])]
    pub all: bool,
    /// Comma-separated check ids.
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Trials per dimension configuration.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Slack tolerance for inequality checks.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    pub id: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}
