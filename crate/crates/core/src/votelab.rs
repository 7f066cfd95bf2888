//! Analytic and Monte-Carlo validation of ensemble error statistics.
//!
//! For L classifiers that each err with probability p < 0.5, a majority vote
//! errs with the binomial tail probability that more than L/2 members err,
//! and a unanimous vote errs only when all L do — p^L under independence, an
//! exponential improvement. Real classifiers have correlated errors, so the
//! simulator exposes a correlation knob: with probability `rho` a trial draws
//! one shared uniform that all members compare against p (they err together
//! or not at all), and otherwise every member draws independently. The
//! pairwise error correlation under this mixture is exactly `rho`.

use serde::Serialize;

use crate::rng::{derive_seed, SeededRng};

/// Errors from the vote lab.
#[derive(Debug, thiserror::Error)]
pub enum VoteLabError {
    #[error("majority analysis needs an odd ensemble size, got {size}")]
    EvenEnsembleSize { size: usize },
    #[error("invalid parameter {name}={value}")]
    InvalidParameters { name: &'static str, value: f64 },
}

/// Parameters of one simulated ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VoteModel {
    /// Ensemble size L.
    pub ensemble_size: usize,
    /// Per-classifier error probability p; p < 0.5 is the regime where
    /// ensembling helps.
    pub error_rate: f64,
    /// Pairwise error correlation in [0, 1]; 0 means independent errors.
    pub correlation: f64,
    pub trials: u64,
    pub seed: u64,
}

impl VoteModel {
    /// Whether this model sits in the regime where voting helps: every
    /// member must err less often than chance.
    pub fn effective_regime(&self) -> bool {
        self.error_rate < 0.5
    }
}

/// Empirical rates from [`simulate_votes`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationOutcome {
    pub majority_error_rate: f64,
    pub unanimous_error_rate: f64,
    /// Fraction of trials where all members agreed (all erred or none did).
    pub agreement_rate: f64,
}

fn check_probability(name: &'static str, value: f64) -> Result<(), VoteLabError> {
    if !(0.0..=1.0).contains(&value) || value.is_nan() {
        return Err(VoteLabError::InvalidParameters { name, value });
    }
    Ok(())
}

/// Binomial coefficient in floating point; exact for the small L used here.
fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut result = 1.0;
    for i in 0..k {
        result = result * (n - i) as f64 / (i + 1) as f64;
    }
    result
}

/// Probability that a majority vote of L independent classifiers errs:
/// the upper binomial tail `sum_{k=ceil(L/2)}^{L} C(L,k) p^k (1-p)^(L-k)`.
/// L must be odd and at least 3.
pub fn majority_error_analytic(p: f64, ensemble_size: usize) -> Result<f64, VoteLabError> {
    check_probability("p", p)?;
    if ensemble_size.is_multiple_of(2) {
        return Err(VoteLabError::EvenEnsembleSize {
            size: ensemble_size,
        });
    }
    if ensemble_size < 3 {
        return Err(VoteLabError::InvalidParameters {
            name: "ensemble_size",
            value: ensemble_size as f64,
        });
    }
    let l = ensemble_size;
    let mut tail = 0.0;
    for k in (l / 2 + 1)..=l {
        tail += binomial(l, k) * p.powi(k as i32) * (1.0 - p).powi((l - k) as i32);
    }
    Ok(tail)
}

/// Probability that a unanimous vote of L independent classifiers errs: p^L.
pub fn unanimous_error_analytic(p: f64, ensemble_size: usize) -> Result<f64, VoteLabError> {
    check_probability("p", p)?;
    if ensemble_size < 2 {
        return Err(VoteLabError::InvalidParameters {
            name: "ensemble_size",
            value: ensemble_size as f64,
        });
    }
    Ok(p.powi(ensemble_size as i32))
}

/// Trials per derived-seed chunk; results merge by summation, so chunked
/// streams could run on parallel workers without changing the outcome.
const CHUNK: u64 = 65_536;

/// Draw correlated error indicators and return empirical ensemble rates.
/// Deterministic under the model's seed.
pub fn simulate_votes(model: &VoteModel) -> Result<SimulationOutcome, VoteLabError> {
    check_probability("p", model.error_rate)?;
    check_probability("rho", model.correlation)?;
    if model.trials == 0 {
        return Err(VoteLabError::InvalidParameters {
            name: "trials",
            value: 0.0,
        });
    }
    if model.ensemble_size < 2 {
        return Err(VoteLabError::InvalidParameters {
            name: "ensemble_size",
            value: model.ensemble_size as f64,
        });
    }
    let l = model.ensemble_size;
    let p = model.error_rate;
    let rho = model.correlation;

    let mut majority_errors = 0u64;
    let mut unanimous_errors = 0u64;
    let mut agreements = 0u64;
    let mut remaining = model.trials;
    let mut chunk_index = 0u64;
    while remaining > 0 {
        let n = remaining.min(CHUNK);
        let mut rng = SeededRng::new(derive_seed(model.seed, chunk_index));
        for _ in 0..n {
            // One-factor Bernoulli copula with a shared regime switch: with
            // probability rho the whole trial compares a single common
            // uniform against p, otherwise each member draws its own.
            let shared_regime = rng.next_f64() < rho;
            let mut errors = 0usize;
            if shared_regime {
                if rng.next_f64() < p {
                    errors = l;
                }
            } else {
                for _ in 0..l {
                    if rng.next_f64() < p {
                        errors += 1;
                    }
                }
            }
            if errors * 2 > l {
                majority_errors += 1;
            }
            if errors == l {
                unanimous_errors += 1;
            }
            if errors == 0 || errors == l {
                agreements += 1;
            }
        }
        remaining -= n;
        chunk_index += 1;
    }
    let trials = model.trials as f64;
    Ok(SimulationOutcome {
        majority_error_rate: majority_errors as f64 / trials,
        unanimous_error_rate: unanimous_errors as f64 / trials,
        agreement_rate: agreements as f64 / trials,
    })
}

/// Binomial standard error of an empirical rate estimate.
pub fn binomial_standard_error(rate: f64, trials: u64) -> f64 {
    (rate * (1.0 - rate) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn majority_error_hand_expanded() {
        // L=3, p=0.1: 3 * 0.01 * 0.9 + 0.001 = 0.028.
        let e = majority_error_analytic(0.1, 3).unwrap();
        assert!((e - 0.028).abs() < 1e-12);
    }

    #[test]
    fn majority_error_edge_values() {
        assert_eq!(majority_error_analytic(0.0, 3).unwrap(), 0.0);
        assert_eq!(majority_error_analytic(0.0, 7).unwrap(), 0.0);
        // Binomial symmetry at p = 1/2.
        assert!((majority_error_analytic(0.5, 3).unwrap() - 0.5).abs() < 1e-15);
        assert!((majority_error_analytic(0.5, 9).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn even_or_tiny_ensembles_are_rejected() {
        assert!(matches!(
            majority_error_analytic(0.1, 4),
            Err(VoteLabError::EvenEnsembleSize { size: 4 })
        ));
        assert!(matches!(
            majority_error_analytic(0.1, 1),
            Err(VoteLabError::InvalidParameters { .. })
        ));
    }

    #[test]
    fn unanimous_error_is_pth_power() {
        assert!((unanimous_error_analytic(0.1, 3).unwrap() - 0.001).abs() < 1e-15);
        assert_eq!(unanimous_error_analytic(0.0, 3).unwrap(), 0.0);
        assert_eq!(unanimous_error_analytic(1.0, 3).unwrap(), 1.0);
    }

    #[test]
    fn unanimous_never_exceeds_majority_error() {
        // Direct evaluation over a p grid of step 0.01, L = 3.
        for step in 0..=50 {
            let p = step as f64 * 0.01;
            let unanimous = unanimous_error_analytic(p, 3).unwrap();
            let majority = majority_error_analytic(p, 3).unwrap();
            assert!(
                unanimous <= majority + 1e-15,
                "p={p}: unanimous {unanimous} > majority {majority}"
            );
        }
    }

    #[test]
    fn independent_simulation_matches_analytic_rates() {
        let model = VoteModel {
            ensemble_size: 3,
            error_rate: 0.1,
            correlation: 0.0,
            trials: 1_000_000,
            seed: 2024,
        };
        let sim = simulate_votes(&model).unwrap();
        let maj = majority_error_analytic(0.1, 3).unwrap();
        let una = unanimous_error_analytic(0.1, 3).unwrap();
        let maj_se = binomial_standard_error(maj, model.trials);
        let una_se = binomial_standard_error(una, model.trials);
        assert!(
            (sim.majority_error_rate - maj).abs() < 3.0 * maj_se,
            "majority {} vs {maj} (3se {})",
            sim.majority_error_rate,
            3.0 * maj_se
        );
        assert!(
            (sim.unanimous_error_rate - una).abs() < 3.0 * una_se,
            "unanimous {} vs {una} (3se {})",
            sim.unanimous_error_rate,
            3.0 * una_se
        );
    }

    #[test]
    fn full_correlation_errs_together() {
        let model = VoteModel {
            ensemble_size: 3,
            error_rate: 0.1,
            correlation: 1.0,
            trials: 1_000_000,
            seed: 7,
        };
        let sim = simulate_votes(&model).unwrap();
        let se = binomial_standard_error(0.1, model.trials);
        assert!((sim.unanimous_error_rate - 0.1).abs() < 3.0 * se);
        assert!((sim.majority_error_rate - 0.1).abs() < 3.0 * se);
        // All classifiers share one draw, so every trial agrees.
        assert_eq!(sim.agreement_rate, 1.0);
    }

    #[test]
    fn zero_error_rate_never_errs() {
        let model = VoteModel {
            ensemble_size: 3,
            error_rate: 0.0,
            correlation: 0.3,
            trials: 100_000,
            seed: 5,
        };
        let sim = simulate_votes(&model).unwrap();
        assert_eq!(sim.majority_error_rate, 0.0);
        assert_eq!(sim.unanimous_error_rate, 0.0);
        assert_eq!(sim.agreement_rate, 1.0);
    }

    #[test]
    fn unanimous_error_grows_with_correlation() {
        let mut previous = -1.0;
        for rho in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let model = VoteModel {
                ensemble_size: 3,
                error_rate: 0.1,
                correlation: rho,
                trials: 1_000_000,
                seed: 99,
            };
            let sim = simulate_votes(&model).unwrap();
            assert!(
                sim.unanimous_error_rate >= previous,
                "rho={rho}: {} < {previous}",
                sim.unanimous_error_rate
            );
            previous = sim.unanimous_error_rate;
        }
    }

    #[test]
    fn simulation_is_deterministic_and_chunk_stable() {
        let model = VoteModel {
            ensemble_size: 5,
            error_rate: 0.2,
            correlation: 0.4,
            trials: 200_000,
            seed: 31,
        };
        assert_eq!(simulate_votes(&model).unwrap(), simulate_votes(&model).unwrap());
    }

    #[test]
    fn effective_regime_flags_sub_half_error() {
        let mut model = VoteModel {
            ensemble_size: 3,
            error_rate: 0.3,
            correlation: 0.0,
            trials: 1,
            seed: 0,
        };
        assert!(model.effective_regime());
        model.error_rate = 0.5;
        assert!(!model.effective_regime());
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        let base = VoteModel {
            ensemble_size: 3,
            error_rate: 0.1,
            correlation: 0.0,
            trials: 10,
            seed: 0,
        };
        assert!(simulate_votes(&VoteModel { error_rate: 1.5, ..base }).is_err());
        assert!(simulate_votes(&VoteModel { correlation: -0.1, ..base }).is_err());
        assert!(simulate_votes(&VoteModel { trials: 0, ..base }).is_err());
        assert!(simulate_votes(&VoteModel { ensemble_size: 1, ..base }).is_err());
    }
}
