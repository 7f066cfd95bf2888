//! Cost-sensitive multiclass evaluation: confusion matrices, per-class and
//! macro precision/recall/F-beta/FPR, abstention accounting, and the
//! unseen-generator scanner.
//!
//! Conventions:
//!
//! * Matrix rows are true labels, columns are predicted labels, both in
//!   label-set order. Abstentions are tallied in a separate per-true-label
//!   vector, present only when the evaluated strategy can abstain.
//! * `exclusion_mode` drops abstained texts from every denominator (recall
//!   and the true-negative side of FPR). With it off, abstained texts count
//!   against recall and as true negatives for every other class.
//! * Zero denominators yield 0 with a `degenerate` flag instead of failing;
//!   degenerate matrices are routine in small tests.

use serde::Serialize;

use crate::classifiers::ClassifierModel;
use crate::corpus::{Document, FamilyLabel, LabelSet};
use crate::ensemble::{attribute_corpus, EnsembleDecision, EnsembleError, Outcome, Strategy};

/// Errors from metric computation.
#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("beta must be positive, got {beta}")]
    NonPositiveBeta { beta: f64 },
    #[error("matrix has no abstention data")]
    MissingAbstentionData,
    #[error("label index {index} outside the {size}-label set")]
    UnknownLabel { index: usize, size: usize },
    #[error("expected {expected} entries, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("no texts to scan")]
    EmptyCorpus,
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
}

/// A rate with a flag marking that its denominator was zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metric {
    pub value: f64,
    pub degenerate: bool,
}

impl Metric {
    fn ratio(numerator: f64, denominator: f64) -> Metric {
        if denominator == 0.0 {
            Metric {
                value: 0.0,
                degenerate: true,
            }
        } else {
            Metric {
                value: numerator / denominator,
                degenerate: false,
            }
        }
    }
}

/// `F_beta = (1 + beta^2) * P * R / (beta^2 * P + R)`; 0 when both P and R
/// are 0. `beta = 0.5` weights precision twice as heavily as recall.
pub fn f_beta(precision: f64, recall: f64, beta: f64) -> Result<f64, MetricsError> {
    if beta <= 0.0 {
        return Err(MetricsError::NonPositiveBeta { beta });
    }
    if precision == 0.0 && recall == 0.0 {
        return Ok(0.0);
    }
    let b2 = beta * beta;
    Ok((1.0 + b2) * precision * recall / (b2 * precision + recall))
}

/// A K x K confusion matrix (rows true, columns predicted) with an optional
/// per-true-label abstention vector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfusionMatrix {
    labels: LabelSet,
    counts: Vec<Vec<u64>>,
    no_agreement: Option<Vec<u64>>,
}

impl ConfusionMatrix {
    /// Build from raw counts, e.g. a reference table or a fixture file.
    pub fn from_counts(
        labels: LabelSet,
        counts: Vec<Vec<u64>>,
        no_agreement: Option<Vec<u64>>,
    ) -> Result<Self, MetricsError> {
        let k = labels.len();
        if counts.len() != k {
            return Err(MetricsError::ShapeMismatch {
                expected: k,
                got: counts.len(),
            });
        }
        for row in &counts {
            if row.len() != k {
                return Err(MetricsError::ShapeMismatch {
                    expected: k,
                    got: row.len(),
                });
            }
        }
        if let Some(na) = &no_agreement {
            if na.len() != k {
                return Err(MetricsError::ShapeMismatch {
                    expected: k,
                    got: na.len(),
                });
            }
        }
        Ok(ConfusionMatrix {
            labels,
            counts,
            no_agreement,
        })
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn count(&self, true_class: usize, predicted: usize) -> u64 {
        self.counts[true_class][predicted]
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn no_agreement(&self) -> Option<&[u64]> {
        self.no_agreement.as_deref()
    }

    /// Sum of labeled cells in row `i` (abstentions not included).
    pub fn row_sum(&self, i: usize) -> u64 {
        self.counts[i].iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> u64 {
        self.counts.iter().map(|row| row[j]).sum()
    }

    /// All texts evaluated, abstentions included.
    pub fn total(&self) -> u64 {
        let labeled: u64 = (0..self.labels.len()).map(|i| self.row_sum(i)).sum();
        labeled + self.no_agreement.as_ref().map_or(0, |na| na.iter().sum())
    }

    /// `precision_i = counts[i][i] / column_i sum`. Abstained texts are never
    /// predicted as any label, so exclusion mode cannot affect precision.
    pub fn precision(&self, i: usize) -> Metric {
        Metric::ratio(self.counts[i][i] as f64, self.col_sum(i) as f64)
    }

    /// `recall_i = counts[i][i] / class size`, where the class size counts
    /// abstained texts unless `exclusion_mode` drops them.
    pub fn recall(&self, i: usize, exclusion_mode: bool) -> Metric {
        let mut denom = self.row_sum(i);
        if !exclusion_mode {
            if let Some(na) = &self.no_agreement {
                denom += na[i];
            }
        }
        Metric::ratio(self.counts[i][i] as f64, denom as f64)
    }

    /// `FPR_i = FP_i / (FP_i + TN_i)`: the fraction of non-`i` texts wrongly
    /// attributed to class `i`. Abstained non-`i` texts count as true
    /// negatives unless `exclusion_mode` drops them.
    pub fn fpr(&self, i: usize, exclusion_mode: bool) -> Metric {
        let false_positives = self.col_sum(i) - self.counts[i][i];
        let mut negatives = 0u64;
        for (row, row_counts) in self.counts.iter().enumerate() {
            if row == i {
                continue;
            }
            negatives += row_counts.iter().sum::<u64>();
            if !exclusion_mode {
                if let Some(na) = &self.no_agreement {
                    negatives += na[row];
                }
            }
        }
        Metric::ratio(false_positives as f64, negatives as f64)
    }

    /// Complement of the false-positive rate, exact by construction.
    pub fn specificity(&self, i: usize, exclusion_mode: bool) -> f64 {
        1.0 - self.fpr(i, exclusion_mode).value
    }

    /// Arithmetic mean of per-class FPR over all K classes.
    pub fn macro_fpr(&self, exclusion_mode: bool) -> Metric {
        let per_class: Vec<Metric> = (0..self.labels.len())
            .map(|i| self.fpr(i, exclusion_mode))
            .collect();
        mean_metric(&per_class)
    }

    /// Arithmetic mean of per-class F-beta over all K classes.
    pub fn macro_f_beta(&self, beta: f64, exclusion_mode: bool) -> Result<Metric, MetricsError> {
        let mut per_class = Vec::with_capacity(self.labels.len());
        for i in 0..self.labels.len() {
            let p = self.precision(i);
            let r = self.recall(i, exclusion_mode);
            per_class.push(Metric {
                value: f_beta(p.value, r.value, beta)?,
                degenerate: p.degenerate || r.degenerate,
            });
        }
        Ok(mean_metric(&per_class))
    }

    /// Fraction of all evaluated texts (abstentions included) on which the
    /// ensemble reached no agreement.
    pub fn no_agreement_rate(&self) -> Result<f64, MetricsError> {
        let na = self
            .no_agreement
            .as_ref()
            .ok_or(MetricsError::MissingAbstentionData)?;
        let abstained: u64 = na.iter().sum();
        let total = self.total();
        if total == 0 {
            return Ok(0.0);
        }
        Ok(abstained as f64 / total as f64)
    }
}

fn mean_metric(per_class: &[Metric]) -> Metric {
    let k = per_class.len() as f64;
    Metric {
        value: per_class.iter().map(|m| m.value).sum::<f64>() / k,
        degenerate: per_class.iter().any(|m| m.degenerate),
    }
}

/// Tally ensemble decisions into a confusion matrix. The abstention vector is
/// attached when any decision comes from a strategy that can abstain (or did).
pub fn build_confusion(
    labels: &LabelSet,
    truths: &[FamilyLabel],
    decisions: &[EnsembleDecision],
) -> Result<ConfusionMatrix, MetricsError> {
    if truths.len() != decisions.len() {
        return Err(MetricsError::ShapeMismatch {
            expected: truths.len(),
            got: decisions.len(),
        });
    }
    let k = labels.len();
    let mut counts = vec![vec![0u64; k]; k];
    let mut no_agreement = vec![0u64; k];
    let mut can_abstain = false;
    for (truth, decision) in truths.iter().zip(decisions) {
        if truth.index() >= k {
            return Err(MetricsError::UnknownLabel {
                index: truth.index(),
                size: k,
            });
        }
        can_abstain |= decision.strategy == Strategy::Unanimous;
        match decision.outcome {
            Outcome::Label(pred) => {
                if pred.index() >= k {
                    return Err(MetricsError::UnknownLabel {
                        index: pred.index(),
                        size: k,
                    });
                }
                counts[truth.index()][pred.index()] += 1;
            }
            Outcome::NoAgreement => {
                can_abstain = true;
                no_agreement[truth.index()] += 1;
            }
        }
    }
    ConfusionMatrix::from_counts(labels.clone(), counts, can_abstain.then_some(no_agreement))
}

/// Tally plain per-classifier predictions (no abstention column).
pub fn build_confusion_from_predictions(
    labels: &LabelSet,
    truths: &[FamilyLabel],
    predictions: &[FamilyLabel],
) -> Result<ConfusionMatrix, MetricsError> {
    if truths.len() != predictions.len() {
        return Err(MetricsError::ShapeMismatch {
            expected: truths.len(),
            got: predictions.len(),
        });
    }
    let k = labels.len();
    let mut counts = vec![vec![0u64; k]; k];
    for (truth, pred) in truths.iter().zip(predictions) {
        if truth.index() >= k || pred.index() >= k {
            return Err(MetricsError::UnknownLabel {
                index: truth.index().max(pred.index()),
                size: k,
            });
        }
        counts[truth.index()][pred.index()] += 1;
    }
    ConfusionMatrix::from_counts(labels.clone(), counts, None)
}

/// Per-class slice of a [`MetricsReport`].
#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub label: String,
    pub precision: f64,
    pub recall: f64,
    pub f_beta: f64,
    pub fpr: f64,
    /// Set when any denominator behind these numbers was zero.
    pub degenerate: bool,
}

/// Everything derived from one confusion matrix.
#[derive(Debug, Clone, Serialize)]
pub struct MetricsReport {
    pub beta: f64,
    pub exclusion_mode: bool,
    pub per_class: Vec<ClassReport>,
    pub macro_f_beta: f64,
    pub macro_fpr: f64,
    /// Present only when the matrix carries abstention data.
    pub no_agreement_rate: Option<f64>,
    pub no_agreement_total: Option<u64>,
    pub total: u64,
}

/// Compute the full report for a matrix.
pub fn report(
    cm: &ConfusionMatrix,
    beta: f64,
    exclusion_mode: bool,
) -> Result<MetricsReport, MetricsError> {
    if beta <= 0.0 {
        return Err(MetricsError::NonPositiveBeta { beta });
    }
    let mut per_class = Vec::with_capacity(cm.labels().len());
    for i in 0..cm.labels().len() {
        let p = cm.precision(i);
        let r = cm.recall(i, exclusion_mode);
        let fpr = cm.fpr(i, exclusion_mode);
        let f = f_beta(p.value, r.value, beta)?;
        per_class.push(ClassReport {
            label: cm.labels().names()[i].clone(),
            precision: p.value,
            recall: r.value,
            f_beta: f,
            fpr: fpr.value,
            degenerate: p.degenerate || r.degenerate || fpr.degenerate,
        });
    }
    Ok(MetricsReport {
        beta,
        exclusion_mode,
        per_class,
        macro_f_beta: cm.macro_f_beta(beta, exclusion_mode)?.value,
        macro_fpr: cm.macro_fpr(exclusion_mode).value,
        no_agreement_rate: cm.no_agreement_rate().ok(),
        no_agreement_total: cm.no_agreement().map(|na| na.iter().sum()),
        total: cm.total(),
    })
}

/// Label distribution of an ensemble over unlabeled texts.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub strategy: Strategy,
    pub labels: Vec<String>,
    pub counts: Vec<u64>,
    pub fractions: Vec<f64>,
    pub no_agreement_count: u64,
    pub no_agreement_fraction: f64,
    pub total: u64,
}

/// Attribute unlabeled texts and report the per-label and no-agreement
/// fractions (they partition the corpus, so they sum to 1).
pub fn scan_unseen(
    models: &[&ClassifierModel],
    docs: &[Document],
    strategy: Strategy,
) -> Result<ScanReport, MetricsError> {
    if docs.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    let labels = models
        .first()
        .map(|m| m.labels.clone())
        .ok_or(MetricsError::Ensemble(EnsembleError::LabelSetMismatch))?;
    let decisions = attribute_corpus(models, docs, strategy)?;
    let k = labels.len();
    let mut counts = vec![0u64; k];
    let mut no_agreement_count = 0u64;
    for decision in &decisions {
        match decision.outcome {
            Outcome::Label(l) => counts[l.index()] += 1,
            Outcome::NoAgreement => no_agreement_count += 1,
        }
    }
    let total = docs.len() as u64;
    Ok(ScanReport {
        strategy,
        labels: labels.names().to_vec(),
        fractions: counts.iter().map(|&c| c as f64 / total as f64).collect(),
        counts,
        no_agreement_count,
        no_agreement_fraction: no_agreement_count as f64 / total as f64,
        total,
    })
}
