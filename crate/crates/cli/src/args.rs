//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use llmprint_core::ensemble::Strategy;

#[derive(Debug, Parser)]
#[command(
    name = "llmprint",
    version,
    about = "Attribute texts to the LLM family that generated them",
    long_about = "Trains an ensemble of three diverse classifiers on balanced per-family \
                  corpora, evaluates it with cost-sensitive metrics, attributes new texts \
                  under majority or unanimous voting, scans texts from unseen generators, \
                  and validates the ensemble error statistics analytically and by simulation."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train the three classifiers on a labeled corpus.
    Train(TrainArgs),
    /// Evaluate trained models on a labeled test corpus, or replay a raw
    /// confusion-matrix fixture through the metrics layer.
    Evaluate(EvaluateArgs),
    /// Attribute unlabeled texts and export one decision record per text.
    Attribute(AttributeArgs),
    /// Scan unlabeled texts (e.g. from an unseen model) and report the
    /// label distribution with a chart.
    ScanUnseen(ScanArgs),
    /// Compare analytic and simulated ensemble vote-error rates.
    SimulateVotes(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Majority,
    Unanimous,
}

impl From<StrategyArg> for Strategy {
    fn from(value: StrategyArg) -> Strategy {
        match value {
            StrategyArg::Majority => Strategy::Majority,
            StrategyArg::Unanimous => Strategy::Unanimous,
        }
    }
}

/// Flags shared by commands that write into a run directory.
#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Parent directory for run outputs (default from config: "runs").
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run directory name; a unique timestamped name is generated when
    /// omitted.
    #[arg(long)]
    pub run_name: Option<String>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// TOML run configuration; flags below override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Labeled training corpus (JSONL or CSV with id, text, label).
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Comma-separated label set, in matrix order.
    #[arg(long)]
    pub labels: Option<String>,
    /// Balanced training examples per class for each classifier.
    #[arg(long)]
    pub per_class: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Train share when holding out a test split (only used when the config
    /// has no test corpus).
    #[arg(long)]
    pub split_ratio: Option<f64>,
    /// Draw pairwise-disjoint training subsets instead of independent ones.
    #[arg(long)]
    pub disjoint_subsets: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// The three trained model files (naive Bayes, softmax, centroid).
    #[arg(long, num_args = 3)]
    pub models: Option<Vec<PathBuf>>,
    /// Labeled test corpus.
    #[arg(long)]
    pub test: Option<PathBuf>,
    /// Raw confusion-matrix fixture (JSON with labels, counts, and an
    /// optional no_agreement vector) evaluated without any models.
    #[arg(long, conflicts_with_all = ["models", "test"])]
    pub fixture: Option<PathBuf>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Drop abstained texts from every metric denominator.
    #[arg(long)]
    pub exclusion_mode: Option<bool>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AttributeArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, num_args = 3, required = true)]
    pub models: Vec<PathBuf>,
    /// Unlabeled texts (JSONL or CSV with id, text).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, num_args = 3, required = true)]
    pub models: Vec<PathBuf>,
    /// Unlabeled texts (JSONL or CSV with id, text).
    #[arg(long)]
    pub input: PathBuf,
    /// Voting strategy (unanimous unless overridden).
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Per-classifier error probabilities, comma-separated grid.
    #[arg(long = "error-rate", default_value = "0.1")]
    pub error_rates: String,
    /// Pairwise error correlations, comma-separated grid.
    #[arg(long, default_value = "0.0")]
    pub rho: String,
    /// Ensemble size L (odd for majority analysis).
    #[arg(long, default_value_t = 3)]
    pub ensemble_size: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}
