//! `llmprint`: train, evaluate, attribute, scan, and simulate from the
//! command line. See `llmprint --help` for the subcommands.

mod args;
mod commands;
mod config;
mod errors;

use clap::Parser;

use args::{Cli, Command};
use errors::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Train(args) => commands::train::run(args),
        Command::Evaluate(args) => commands::evaluate::run(args),
        Command::Attribute(args) => commands::attribute::run(args),
        Command::ScanUnseen(args) => commands::scan::run(args),
        Command::SimulateVotes(args) => commands::simulate::run(args),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = run(cli) {
        eprintln!("{error}");
        // Machine-readable record as the last stderr line.
        eprintln!("{}", error.record());
        std::process::exit(error.category.exit_code());
    }
}
