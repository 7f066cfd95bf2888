//! `llmprint attribute`: one decision record per input text.

use llmprint_core::corpus::ingest_documents;
use llmprint_core::ensemble::{attribute_corpus, decision_records, Outcome, Strategy};

use crate::args::AttributeArgs;
use crate::config::{resolve_format, RunConfig};
use crate::errors::CliError;

use super::{load_models, make_run_dir};

pub fn run(args: AttributeArgs) -> Result<(), CliError> {
    let config = RunConfig::load(args.config.as_deref())?;
    let strategy: Strategy = args.strategy.map(Into::into).unwrap_or(config.strategy);
    if !args.input.exists() {
        return Err(CliError::config(format!(
            "input {} does not exist",
            args.input.display()
        )));
    }

    let models = load_models(&args.models)?;
    let labels = models[0].labels.clone();
    let format = resolve_format(&config.corpus, &args.input);
    let docs = ingest_documents(&args.input, format)?;

    let model_refs: Vec<&_> = models.iter().collect();
    let decisions = attribute_corpus(&model_refs, &docs, strategy)?;
    let records = decision_records(&labels, &docs, &decisions);

    let run_dir = make_run_dir(&config.output_dir, &args.output)?;
    let path = run_dir.join("decisions.jsonl");
    let mut body = String::new();
    for record in &records {
        body.push_str(
            &serde_json::to_string(record).map_err(|e| CliError::runtime(e.to_string()))?,
        );
        body.push('\n');
    }
    std::fs::write(&path, body)?;

    let mut label_counts = vec![0usize; labels.len()];
    let mut abstained = 0usize;
    for decision in &decisions {
        match decision.outcome {
            Outcome::Label(l) => label_counts[l.index()] += 1,
            Outcome::NoAgreement => abstained += 1,
        }
    }
    println!(
        "attributed {} texts ({strategy:?} voting) -> {}",
        docs.len(),
        path.display()
    );
    for (name, count) in labels.names().iter().zip(&label_counts) {
        println!("  {name:<16} {count}");
    }
    if strategy == Strategy::Unanimous {
        println!("  {:<16} {abstained}", "no-agreement");
    }
    Ok(())
}
