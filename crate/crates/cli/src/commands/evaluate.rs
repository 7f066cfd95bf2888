//! `llmprint evaluate`: per-classifier and ensemble reports on a labeled
//! test corpus, or a metrics replay of a raw confusion-matrix fixture.

use std::path::Path;

use llmprint_core::corpus::{ingest_corpus, Document, FamilyLabel};
use llmprint_core::ensemble::{attribute_corpus, Strategy};
use llmprint_core::metrics::{
    build_confusion, build_confusion_from_predictions, report, ConfusionMatrix,
};
use llmprint_core::render_table;
use llmprint_core::LabelSet;
use serde::Deserialize;
use serde_json::json;

use crate::args::EvaluateArgs;
use crate::config::{resolve_format, RunConfig};
use crate::errors::CliError;

use super::{load_models, make_run_dir, write_json, write_text};
use super::train::kind_slug;

/// Raw counts accepted by `--fixture`: reference tables are replayable
/// through the metrics layer without any corpus or models.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Fixture {
    labels: Vec<String>,
    counts: Vec<Vec<u64>>,
    #[serde(default)]
    no_agreement: Option<Vec<u64>>,
}

pub fn run(args: EvaluateArgs) -> Result<(), CliError> {
    let config = RunConfig::load(args.config.as_deref())?;
    let beta = args.beta.unwrap_or(config.beta);
    let exclusion_mode = args.exclusion_mode.unwrap_or(config.exclusion_mode);
    let run_dir = make_run_dir(&config.output_dir, &args.output)?;

    if let Some(fixture_path) = &args.fixture {
        return run_fixture(fixture_path, beta, exclusion_mode, &run_dir);
    }

    let model_paths = args
        .models
        .as_ref()
        .ok_or_else(|| CliError::config("either --models or --fixture is required"))?;
    let test_path = args
        .test
        .as_ref()
        .ok_or_else(|| CliError::config("--test is required when evaluating models"))?;
    if !test_path.exists() {
        return Err(CliError::config(format!(
            "test corpus {} does not exist",
            test_path.display()
        )));
    }

    let models = load_models(model_paths)?;
    let labels = models[0].labels.clone();
    let format = resolve_format(&config.corpus, test_path);
    let test = ingest_corpus(test_path, format, &labels)?;
    if test.is_empty() {
        return Err(CliError::data("test corpus is empty"));
    }
    let truths: Vec<FamilyLabel> = test.iter().map(|r| r.label).collect();

    // Individual classifier reports.
    for model in &models {
        let predictions: Vec<FamilyLabel> = test
            .iter()
            .map(|r| {
                model
                    .predict(&r.text)
                    .map(|p| p.label)
                    .map_err(CliError::from)
            })
            .collect::<Result<_, _>>()?;
        let cm = build_confusion_from_predictions(&labels, &truths, &predictions)?;
        emit_report(&run_dir, kind_slug(model.kind), &cm, beta, exclusion_mode, false)?;
    }

    // Both ensembles, with the abstention column for the unanimous one.
    let model_refs: Vec<&_> = models.iter().collect();
    let docs: Vec<Document> = test
        .iter()
        .map(|r| Document {
            id: r.id.clone(),
            text: r.text.clone(),
        })
        .collect();
    for strategy in [Strategy::Majority, Strategy::Unanimous] {
        let decisions = attribute_corpus(&model_refs, &docs, strategy)?;
        let cm = build_confusion(&labels, &truths, &decisions)?;
        let name = match strategy {
            Strategy::Majority => "ensemble_majority",
            Strategy::Unanimous => "ensemble_unanimous",
        };
        emit_report(&run_dir, name, &cm, beta, exclusion_mode, true)?;
    }
    Ok(())
}

fn run_fixture(
    path: &Path,
    beta: f64,
    exclusion_mode: bool,
    run_dir: &Path,
) -> Result<(), CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read fixture {}: {e}", path.display())))?;
    let fixture: Fixture = serde_json::from_str(&raw)
        .map_err(|e| CliError::data(format!("invalid fixture {}: {e}", path.display())))?;
    let labels = LabelSet::new(fixture.labels)?;
    let cm = ConfusionMatrix::from_counts(labels, fixture.counts, fixture.no_agreement)?;
    emit_report(run_dir, "fixture", &cm, beta, exclusion_mode, true)?;
    Ok(())
}

fn emit_report(
    run_dir: &Path,
    name: &str,
    cm: &ConfusionMatrix,
    beta: f64,
    exclusion_mode: bool,
    print: bool,
) -> Result<(), CliError> {
    let rep = report(cm, beta, exclusion_mode)?;
    let table = render_table(cm, &rep);
    write_text(&run_dir.join(format!("reports/{name}.txt")), &table)?;
    write_json(
        &run_dir.join(format!("reports/{name}.json")),
        &json!({ "matrix": cm, "report": rep }),
    )?;
    if print {
        println!("== {name} ==");
        println!("{table}");
    }
    Ok(())
}
