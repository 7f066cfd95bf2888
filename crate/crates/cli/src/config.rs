//! Run configuration: one human-editable TOML document, every field
//! overridable from the command line (the command line wins).

use std::path::{Path, PathBuf};

use llmprint_core::corpus::CorpusFormat;
use llmprint_core::ensemble::Strategy;
use llmprint_core::{LabelSet, NaiveBayesConfig, SoftmaxConfig};
use serde::Deserialize;

use crate::errors::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "defaults::labels")]
    pub labels: Vec<String>,
    #[serde(default = "defaults::seed")]
    pub seed: u64,
    #[serde(default = "defaults::output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "defaults::exclusion_mode")]
    pub exclusion_mode: bool,
    #[serde(default = "defaults::strategy")]
    pub strategy: Strategy,
    #[serde(default = "defaults::beta")]
    pub beta: f64,
    #[serde(default)]
    pub corpus: CorpusSection,
    #[serde(default)]
    pub naive_bayes: NaiveBayesSection,
    #[serde(default)]
    pub softmax: SoftmaxSection,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct CorpusSection {
    pub train_path: Option<PathBuf>,
    pub test_path: Option<PathBuf>,
    /// File format; inferred from the extension when absent.
    pub format: Option<CorpusFormat>,
    #[serde(default = "defaults::split_ratio")]
    pub split_ratio: f64,
    /// Balanced training examples drawn per class for each classifier.
    #[serde(default)]
    pub per_class: usize,
    /// Force the three training subsets to be pairwise disjoint.
    #[serde(default)]
    pub disjoint_subsets: bool,
}

// Per-field defaults, so a config may override any subset of a section.

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NaiveBayesSection {
    #[serde(default = "defaults::nb_alpha")]
    pub alpha: f64,
    #[serde(default = "defaults::nb_ngram")]
    pub ngram: usize,
    #[serde(default = "defaults::nb_min_df")]
    pub min_df: u32,
}

impl Default for NaiveBayesSection {
    fn default() -> Self {
        NaiveBayesSection {
            alpha: defaults::nb_alpha(),
            ngram: defaults::nb_ngram(),
            min_df: defaults::nb_min_df(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SoftmaxSection {
    #[serde(default = "defaults::sm_learning_rate")]
    pub learning_rate: f64,
    #[serde(default = "defaults::sm_epochs")]
    pub epochs: usize,
    #[serde(default = "defaults::sm_l2")]
    pub l2: f64,
    #[serde(default = "defaults::sm_min_df")]
    pub min_df: u32,
}

impl Default for SoftmaxSection {
    fn default() -> Self {
        SoftmaxSection {
            learning_rate: defaults::sm_learning_rate(),
            epochs: defaults::sm_epochs(),
            l2: defaults::sm_l2(),
            min_df: defaults::sm_min_df(),
        }
    }
}

mod defaults {
    use std::path::PathBuf;

    use llmprint_core::ensemble::Strategy;
    use llmprint_core::{NaiveBayesConfig, SoftmaxConfig};

    pub fn nb_alpha() -> f64 {
        NaiveBayesConfig::default().alpha
    }

    pub fn nb_ngram() -> usize {
        NaiveBayesConfig::default().ngram
    }

    pub fn nb_min_df() -> u32 {
        NaiveBayesConfig::default().min_df
    }

    pub fn sm_learning_rate() -> f64 {
        SoftmaxConfig::default().learning_rate
    }

    pub fn sm_epochs() -> usize {
        SoftmaxConfig::default().epochs
    }

    pub fn sm_l2() -> f64 {
        SoftmaxConfig::default().l2
    }

    pub fn sm_min_df() -> u32 {
        SoftmaxConfig::default().min_df
    }

    pub fn labels() -> Vec<String> {
        vec![
            "Claude".into(),
            "Gemini".into(),
            "Llama".into(),
            "OpenAI".into(),
        ]
    }

    pub fn seed() -> u64 {
        42
    }

    pub fn output_dir() -> PathBuf {
        PathBuf::from("runs")
    }

    pub fn exclusion_mode() -> bool {
        true
    }

    pub fn strategy() -> Strategy {
        Strategy::Unanimous
    }

    pub fn beta() -> f64 {
        0.5
    }

    pub fn split_ratio() -> f64 {
        0.8
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            labels: defaults::labels(),
            seed: defaults::seed(),
            output_dir: defaults::output_dir(),
            exclusion_mode: defaults::exclusion_mode(),
            strategy: defaults::strategy(),
            beta: defaults::beta(),
            corpus: CorpusSection::default(),
            naive_bayes: NaiveBayesSection::default(),
            softmax: SoftmaxSection::default(),
        }
    }
}

impl RunConfig {
    /// Load from a TOML file, or defaults when no file is given.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(RunConfig::default()),
            Some(path) => {
                let raw = std::fs::read_to_string(path).map_err(|e| {
                    CliError::config(format!("cannot read config {}: {e}", path.display()))
                })?;
                toml::from_str(&raw).map_err(|e| {
                    CliError::config(format!("invalid config {}: {e}", path.display()))
                })
            }
        }
    }

    pub fn label_set(&self) -> Result<LabelSet, CliError> {
        LabelSet::new(self.labels.clone()).map_err(CliError::from)
    }

    pub fn naive_bayes_config(&self) -> NaiveBayesConfig {
        NaiveBayesConfig {
            alpha: self.naive_bayes.alpha,
            ngram: self.naive_bayes.ngram,
            min_df: self.naive_bayes.min_df,
        }
    }

    pub fn softmax_config(&self) -> SoftmaxConfig {
        SoftmaxConfig {
            learning_rate: self.softmax.learning_rate,
            epochs: self.softmax.epochs,
            l2: self.softmax.l2,
            min_df: self.softmax.min_df,
        }
    }
}

/// Resolve a corpus format: explicit config first, extension otherwise.
pub fn resolve_format(config: &CorpusSection, path: &Path) -> CorpusFormat {
    config.format.unwrap_or_else(|| CorpusFormat::from_path(path))
}
