//! `llmprint simulate-votes`: analytic vs simulated ensemble error rates
//! over a (p, rho) grid.

use llmprint_core::votelab::{
    majority_error_analytic, simulate_votes, unanimous_error_analytic, VoteModel,
};

use crate::args::SimulateArgs;
use crate::errors::CliError;

fn parse_grid(name: &'static str, raw: &str) -> Result<Vec<f64>, CliError> {
    raw.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| CliError::config(format!("invalid {name} value {part:?}: {e}")))
        })
        .collect()
}

pub fn run(args: SimulateArgs) -> Result<(), CliError> {
    let error_rates = parse_grid("error-rate", &args.error_rates)?;
    let rhos = parse_grid("rho", &args.rho)?;

    println!(
        "{:>6}  {:>5}  {:>3}  {:>14}  {:>15}  {:>13}  {:>14}  {:>10}",
        "p", "rho", "L", "majority(anal)", "unanimous(anal)", "majority(sim)", "unanimous(sim)", "agreement"
    );
    let mut outside_regime = false;
    for &p in &error_rates {
        let majority_analytic = majority_error_analytic(p, args.ensemble_size)?;
        let unanimous_analytic = unanimous_error_analytic(p, args.ensemble_size)?;
        for &rho in &rhos {
            let model = VoteModel {
                ensemble_size: args.ensemble_size,
                error_rate: p,
                correlation: rho,
                trials: args.trials,
                seed: args.seed,
            };
            outside_regime |= !model.effective_regime();
            let sim = simulate_votes(&model)?;
            println!(
                "{:>6.3}  {:>5.2}  {:>3}  {:>14.6}  {:>15.6}  {:>13.6}  {:>14.6}  {:>10.6}",
                p,
                rho,
                args.ensemble_size,
                majority_analytic,
                unanimous_analytic,
                sim.majority_error_rate,
                sim.unanimous_error_rate,
                sim.agreement_rate
            );
        }
    }
    println!(
        "({} trials per row, seed {}; analytic columns assume independent errors)",
        args.trials, args.seed
    );
    if outside_regime {
        println!("note: some rows have p >= 0.5, outside the regime where ensembling helps");
    }
    Ok(())
}
