//! `llmprint train`: balanced subsets, three classifiers, three model files,
//! and a training report with data fingerprints.

use std::path::Path;

use llmprint_core::classifiers::{save_model, ClassifierKind, ClassifierModel};
use llmprint_core::corpus::{
    corpus_fingerprint, ingest_corpus, per_classifier_subsets, split, LabeledText,
};
use llmprint_core::rng::derive_seed;
use llmprint_core::{accuracy, train_naive_bayes, train_nearest_centroid, train_softmax_regression};
use serde_json::json;

use crate::args::TrainArgs;
use crate::config::{resolve_format, RunConfig};
use crate::errors::CliError;

use super::{make_run_dir, write_json};

pub fn kind_slug(kind: ClassifierKind) -> &'static str {
    match kind {
        ClassifierKind::NaiveBayes => "naive_bayes",
        ClassifierKind::SoftmaxRegression => "softmax_regression",
        ClassifierKind::NearestCentroid => "nearest_centroid",
    }
}

pub fn run(args: TrainArgs) -> Result<(), CliError> {
    let mut config = RunConfig::load(args.config.as_deref())?;
    if let Some(corpus) = args.corpus {
        config.corpus.train_path = Some(corpus);
    }
    if let Some(labels) = args.labels {
        config.labels = labels.split(',').map(|s| s.trim().to_string()).collect();
    }
    if let Some(per_class) = args.per_class {
        config.corpus.per_class = per_class;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(ratio) = args.split_ratio {
        config.corpus.split_ratio = ratio;
    }
    if args.disjoint_subsets {
        config.corpus.disjoint_subsets = true;
    }

    let labels = config.label_set()?;
    let train_path = config
        .corpus
        .train_path
        .clone()
        .ok_or_else(|| CliError::config("corpus.train_path (or --corpus) is required"))?;
    if !train_path.exists() {
        return Err(CliError::config(format!(
            "corpus path {} does not exist",
            train_path.display()
        )));
    }
    if config.corpus.per_class == 0 {
        return Err(CliError::config(
            "corpus.per_class (or --per-class) must be positive",
        ));
    }

    let format = resolve_format(&config.corpus, &train_path);
    let corpus = ingest_corpus(&train_path, format, &labels)?;

    let run_dir = make_run_dir(&config.output_dir, &args.output)?;

    // With an external test corpus configured, train on everything given;
    // otherwise hold out a stratified split for later evaluation.
    let (train_set, heldout): (Vec<LabeledText>, Option<Vec<LabeledText>>) =
        if config.corpus.test_path.is_some() {
            (corpus, None)
        } else {
            let parts = split(&corpus, config.corpus.split_ratio, config.seed)?;
            (parts.train, Some(parts.test))
        };
    let heldout_path = match &heldout {
        Some(texts) => {
            let path = run_dir.join("heldout.jsonl");
            let mut body = String::new();
            for record in texts {
                body.push_str(
                    &serde_json::to_string(&json!({
                        "id": record.id,
                        "text": record.text,
                        "label": labels.name(record.label),
                    }))
                    .map_err(|e| CliError::runtime(e.to_string()))?,
                );
                body.push('\n');
            }
            std::fs::write(&path, body)?;
            Some(path)
        }
        None => None,
    };

    let subsets = per_classifier_subsets(
        &train_set,
        &labels,
        3,
        config.corpus.per_class,
        config.seed,
        config.corpus.disjoint_subsets,
    )?;

    let models = [
        train_naive_bayes(
            &labels,
            &subsets[0],
            &config.naive_bayes_config(),
            derive_seed(config.seed, 1),
        )?,
        train_softmax_regression(
            &labels,
            &subsets[1],
            &config.softmax_config(),
            derive_seed(config.seed, 2),
        )?,
        train_nearest_centroid(&labels, &subsets[2], derive_seed(config.seed, 3))?,
    ];

    let mut model_entries = Vec::new();
    for (model, subset) in models.iter().zip(&subsets) {
        let path = save_into(&run_dir, model)?;
        let train_accuracy = accuracy(model, subset)?;
        println!(
            "trained {:<20} -> {} (training accuracy {:.4})",
            kind_slug(model.kind),
            path.display(),
            train_accuracy
        );
        model_entries.push(json!({
            "kind": kind_slug(model.kind),
            "path": path,
            "training_accuracy": train_accuracy,
            "subset_fingerprint": format!("{:016x}", corpus_fingerprint(subset)),
        }));
    }

    let report = json!({
        "seed": config.seed,
        "labels": labels.names(),
        "per_class": config.corpus.per_class,
        "disjoint_subsets": config.corpus.disjoint_subsets,
        "corpus_path": train_path,
        "corpus_records": train_set.len(),
        "corpus_fingerprint": format!("{:016x}", corpus_fingerprint(&train_set)),
        "heldout_path": heldout_path,
        "models": model_entries,
    });
    let report_path = run_dir.join("reports/training.json");
    write_json(&report_path, &report)?;
    println!("training report -> {}", report_path.display());
    Ok(())
}

fn save_into(
    run_dir: &Path,
    model: &ClassifierModel,
) -> Result<std::path::PathBuf, CliError> {
    let path = run_dir
        .join("models")
        .join(format!("{}.llmp", kind_slug(model.kind)));
    save_model(model, &path)?;
    Ok(path)
}
