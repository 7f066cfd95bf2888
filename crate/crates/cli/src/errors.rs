//! CLI error categories and their exit codes.
//!
//! Exit code 0 is success; 2 is a configuration problem (bad config file,
//! invalid flags, missing referenced paths), 3 a data problem (malformed or
//! mismatched corpora, fixtures, label sets), 4 a runtime failure (training,
//! prediction, model files, output IO). Every failure also emits one
//! machine-readable JSON record on stderr.

use std::fmt;

use llmprint_core::{ClassifierError, CorpusError, EnsembleError, MetricsError, ModelIoError};
use llmprint_core::votelab::VoteLabError;
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Config,
    Data,
    Runtime,
}

impl Category {
    pub fn exit_code(self) -> i32 {
        match self {
            Category::Config => 2,
            Category::Data => 3,
            Category::Runtime => 4,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Category::Config => "config",
            Category::Data => "data",
            Category::Runtime => "runtime",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub category: Category,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError {
            category: Category::Config,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        CliError {
            category: Category::Data,
            message: message.into(),
        }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        CliError {
            category: Category::Runtime,
            message: message.into(),
        }
    }

    /// One-line JSON error record for scripting callers.
    pub fn record(&self) -> String {
        json!({
            "error": {
                "category": self.category.name(),
                "message": self.message,
            }
        })
        .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} error: {}", self.category.name(), self.message)
    }
}

impl std::error::Error for CliError {}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        let category = match &e {
            CorpusError::InvalidLabelSet(_) => Category::Config,
            CorpusError::Io(_) => Category::Runtime,
            _ => Category::Data,
        };
        CliError {
            category,
            message: e.to_string(),
        }
    }
}

impl From<ClassifierError> for CliError {
    fn from(e: ClassifierError) -> Self {
        CliError::runtime(e.to_string())
    }
}

impl From<ModelIoError> for CliError {
    fn from(e: ModelIoError) -> Self {
        CliError::runtime(e.to_string())
    }
}

impl From<EnsembleError> for CliError {
    fn from(e: EnsembleError) -> Self {
        CliError::runtime(e.to_string())
    }
}

impl From<MetricsError> for CliError {
    fn from(e: MetricsError) -> Self {
        let category = match &e {
            MetricsError::NonPositiveBeta { .. } => Category::Config,
            MetricsError::Ensemble(_) => Category::Runtime,
            _ => Category::Data,
        };
        CliError {
            category,
            message: e.to_string(),
        }
    }
}

impl From<VoteLabError> for CliError {
    fn from(e: VoteLabError) -> Self {
        CliError::config(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::runtime(format!("io error: {e}"))
    }
}
