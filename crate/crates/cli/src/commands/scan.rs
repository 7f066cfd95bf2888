//! `llmprint scan-unseen`: label-distribution report and chart for texts
//! that may come from a generator the ensemble never saw.

use llmprint_core::corpus::ingest_documents;
use llmprint_core::ensemble::Strategy;
use llmprint_core::metrics::scan_unseen;
use llmprint_core::{render_scan_svg, render_scan_text};

use crate::args::ScanArgs;
use crate::config::{resolve_format, RunConfig};
use crate::errors::CliError;

use super::{load_models, make_run_dir, write_json, write_text};

pub fn run(args: ScanArgs) -> Result<(), CliError> {
    let config = RunConfig::load(args.config.as_deref())?;
    let strategy: Strategy = args
        .strategy
        .map(Into::into)
        .unwrap_or(Strategy::Unanimous);
    if !args.input.exists() {
        return Err(CliError::config(format!(
            "input {} does not exist",
            args.input.display()
        )));
    }

    let models = load_models(&args.models)?;
    let format = resolve_format(&config.corpus, &args.input);
    let docs = ingest_documents(&args.input, format)?;

    let model_refs: Vec<&_> = models.iter().collect();
    let scan = scan_unseen(&model_refs, &docs, strategy)?;

    let run_dir = make_run_dir(&config.output_dir, &args.output)?;
    write_json(&run_dir.join("reports/scan.json"), &scan)?;
    write_text(&run_dir.join("charts/scan.svg"), &render_scan_svg(&scan))?;
    print!("{}", render_scan_text(&scan));
    println!(
        "report -> {} ; chart -> {}",
        run_dir.join("reports/scan.json").display(),
        run_dir.join("charts/scan.svg").display()
    );
    Ok(())
}
