//! Subcommand implementations and shared output plumbing.

pub mod attribute;
pub mod evaluate;
pub mod scan;
pub mod simulate;
pub mod train;

use std::path::{Path, PathBuf};

use llmprint_core::classifiers::{load_model, ClassifierModel};

use crate::args::OutputArgs;
use crate::errors::CliError;

/// Create the run directory (models/, reports/, charts/) for this
/// invocation. Generated names are unique per invocation; an explicit
/// `--run-name` reuses its directory.
pub fn make_run_dir(output_dir: &Path, output: &OutputArgs) -> Result<PathBuf, CliError> {
    let parent = output.out.as_deref().unwrap_or(output_dir);
    let name = match &output.run_name {
        Some(name) => name.clone(),
        None => {
            let stamp = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or_default();
            format!("run-{stamp}-{}", std::process::id())
        }
    };
    let dir = parent.join(name);
    for sub in ["models", "reports", "charts"] {
        std::fs::create_dir_all(dir.join(sub))?;
    }
    Ok(dir)
}

/// Load the three member models and check they share one label set.
pub fn load_models(paths: &[PathBuf]) -> Result<Vec<ClassifierModel>, CliError> {
    let models: Vec<ClassifierModel> = paths
        .iter()
        .map(|p| {
            load_model(p).map_err(|e| CliError::runtime(format!("{}: {e}", p.display())))
        })
        .collect::<Result<_, _>>()?;
    if let Some(first) = models.first() {
        if models.iter().any(|m| m.labels != first.labels) {
            return Err(CliError::data(
                "models were trained on different label sets".to_string(),
            ));
        }
    }
    Ok(models)
}

pub fn write_text(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)?;
    Ok(())
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let body = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::runtime(format!("serialization failed: {e}")))?;
    std::fs::write(path, body)?;
    Ok(())
}
