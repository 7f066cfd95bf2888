//! Vote combination: majority and unanimous decisions with explicit
//! abstention.
//!
//! Unanimous voting emits a label only when every member classifier agrees,
//! and otherwise abstains with [`Outcome::NoAgreement`] — the conservative
//! strategy for cost-sensitive attribution where a wrong label costs more
//! than no label. Majority voting always emits a label; a full three-way
//! (or wider) tie falls back to the vote with the largest normalized score
//! margin, then to label-set order, so the result is deterministic and
//! independent of vote order.

use serde::{Deserialize, Serialize};

use crate::classifiers::{ClassifierError, ClassifierModel, ScoredPrediction};
use crate::corpus::{Document, FamilyLabel, LabelSet};

/// Errors from vote combination and corpus attribution.
#[derive(Debug, thiserror::Error)]
pub enum EnsembleError {
    #[error("{strategy:?} voting needs {requirement}, got {got} votes")]
    VoteCardinality {
        strategy: Strategy,
        requirement: &'static str,
        got: usize,
    },
    #[error("votes or models disagree on the label set")]
    LabelSetMismatch,
    #[error("prediction failed for text {id:?}: {source}")]
    Prediction {
        id: String,
        #[source]
        source: ClassifierError,
    },
}

/// Voting strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Majority,
    Unanimous,
}

/// Either an agreed family label or an explicit abstention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Label(FamilyLabel),
    NoAgreement,
}

impl Outcome {
    pub fn label(&self) -> Option<FamilyLabel> {
        match self {
            Outcome::Label(l) => Some(*l),
            Outcome::NoAgreement => None,
        }
    }
}

/// One combined decision, carrying the raw member votes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleDecision {
    pub outcome: Outcome,
    pub votes: Vec<ScoredPrediction>,
    pub strategy: Strategy,
}

fn check_votes(votes: &[ScoredPrediction], strategy: Strategy) -> Result<usize, EnsembleError> {
    let (min, requirement, odd) = match strategy {
        Strategy::Unanimous => (2, "at least 2 votes", false),
        Strategy::Majority => (3, "an odd number of votes, at least 3", true),
    };
    if votes.len() < min || (odd && votes.len().is_multiple_of(2)) {
        return Err(EnsembleError::VoteCardinality {
            strategy,
            requirement,
            got: votes.len(),
        });
    }
    let k = votes[0].scores.len();
    if k == 0 || votes.iter().any(|v| v.scores.len() != k) {
        return Err(EnsembleError::LabelSetMismatch);
    }
    if votes.iter().any(|v| v.label.index() >= k) {
        return Err(EnsembleError::LabelSetMismatch);
    }
    Ok(k)
}

/// A label when all votes agree, otherwise [`Outcome::NoAgreement`].
pub fn unanimous_vote(votes: &[ScoredPrediction]) -> Result<EnsembleDecision, EnsembleError> {
    check_votes(votes, Strategy::Unanimous)?;
    let first = votes[0].label;
    let outcome = if votes.iter().all(|v| v.label == first) {
        Outcome::Label(first)
    } else {
        Outcome::NoAgreement
    };
    Ok(EnsembleDecision {
        outcome,
        votes: votes.to_vec(),
        strategy: Strategy::Unanimous,
    })
}

/// Normalized margin between a vote's winning and runner-up scores.
///
/// Scores are shifted so the minimum is zero and scaled by their total; the
/// margin is then `(winner - runner_up) / sum(score - min)`. The shift makes
/// probability scores and cosine similarities comparable without changing
/// which label wins. All-equal scores give margin 0.
fn normalized_margin(scores: &[f64]) -> f64 {
    let min = scores.iter().cloned().fold(f64::INFINITY, f64::min);
    let total: f64 = scores.iter().map(|s| s - min).sum();
    if total <= 0.0 {
        return 0.0;
    }
    let winner = crate::classifiers::argmax_first(scores);
    let runner_up = scores
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != winner)
        .map(|(_, &s)| s)
        .fold(f64::NEG_INFINITY, f64::max);
    (scores[winner] - runner_up) / total
}

/// The modal label when one exists; otherwise the label of the most-confident
/// vote among the tied leaders (highest normalized margin, then label-set
/// order). Majority voting never abstains.
pub fn majority_vote(votes: &[ScoredPrediction]) -> Result<EnsembleDecision, EnsembleError> {
    let k = check_votes(votes, Strategy::Majority)?;
    let mut tally = vec![0usize; k];
    for vote in votes {
        tally[vote.label.index()] += 1;
    }
    let top = *tally.iter().max().expect("nonempty tally");
    let leaders: Vec<usize> = (0..k).filter(|&c| tally[c] == top).collect();
    let label = if leaders.len() == 1 {
        votes
            .iter()
            .map(|v| v.label)
            .find(|l| l.index() == leaders[0])
            .expect("leader has a vote")
    } else {
        // Tied plurality: strongest normalized margin wins; equal margins
        // fall back to label-set order. Both rules are order-independent.
        let mut best: Option<(f64, FamilyLabel)> = None;
        for vote in votes {
            if !leaders.contains(&vote.label.index()) {
                continue;
            }
            let margin = normalized_margin(&vote.scores);
            best = match best {
                None => Some((margin, vote.label)),
                Some((m, l)) => {
                    if margin > m || (margin == m && vote.label.index() < l.index()) {
                        Some((margin, vote.label))
                    } else {
                        Some((m, l))
                    }
                }
            };
        }
        best.expect("at least one leader vote").1
    };
    Ok(EnsembleDecision {
        outcome: Outcome::Label(label),
        votes: votes.to_vec(),
        strategy: Strategy::Majority,
    })
}

fn vote(votes: &[ScoredPrediction], strategy: Strategy) -> Result<EnsembleDecision, EnsembleError> {
    match strategy {
        Strategy::Unanimous => unanimous_vote(votes),
        Strategy::Majority => majority_vote(votes),
    }
}

/// Run every model over every document and combine the votes.
/// One decision per document, in input order.
pub fn attribute_corpus(
    models: &[&ClassifierModel],
    docs: &[Document],
    strategy: Strategy,
) -> Result<Vec<EnsembleDecision>, EnsembleError> {
    if models.is_empty() {
        return Err(EnsembleError::VoteCardinality {
            strategy,
            requirement: "at least one model",
            got: 0,
        });
    }
    let label_set = &models[0].labels;
    if models.iter().any(|m| &m.labels != label_set) {
        return Err(EnsembleError::LabelSetMismatch);
    }
    let mut decisions = Vec::with_capacity(docs.len());
    for doc in docs {
        let votes: Vec<ScoredPrediction> = models
            .iter()
            .map(|m| {
                m.predict(&doc.text).map_err(|source| EnsembleError::Prediction {
                    id: doc.id.clone(),
                    source,
                })
            })
            .collect::<Result<_, _>>()?;
        decisions.push(vote(&votes, strategy)?);
    }
    Ok(decisions)
}

/// Flat, serializable export form of one decision.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub id: String,
    pub strategy: Strategy,
    /// Label name, or `"no-agreement"`.
    pub outcome: String,
    pub votes: Vec<VoteRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VoteRecord {
    pub label: String,
    pub scores: Vec<f64>,
}

/// The abstention outcome as exported.
pub const NO_AGREEMENT_NAME: &str = "no-agreement";

/// Pair documents with their decisions for export.
pub fn decision_records(
    labels: &LabelSet,
    docs: &[Document],
    decisions: &[EnsembleDecision],
) -> Vec<DecisionRecord> {
    docs.iter()
        .zip(decisions)
        .map(|(doc, decision)| DecisionRecord {
            id: doc.id.clone(),
            strategy: decision.strategy,
            outcome: match decision.outcome {
                Outcome::Label(l) => labels.name(l).to_string(),
                Outcome::NoAgreement => NO_AGREEMENT_NAME.to_string(),
            },
            votes: decision
                .votes
                .iter()
                .map(|v| VoteRecord {
                    label: labels.name(v.label).to_string(),
                    scores: v.scores.clone(),
                })
                .collect(),
        })
        .collect()
}
