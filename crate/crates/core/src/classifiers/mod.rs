//! Three architecturally diverse multiclass classifiers behind one interface.
//!
//! * Multinomial naive Bayes over character n-gram counts,
//! * softmax (multinomial logistic) regression over word TF-IDF,
//! * nearest centroid by cosine similarity over stylometric profiles.
//!
//! Different inductive biases over different views keep the three error
//! patterns as uncorrelated as practical, which is what makes voting over
//! them worthwhile. All training is deterministic: the same inputs and seed
//! produce a bit-identical model.

mod centroid;
mod naive_bayes;
mod softmax;
mod store;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{FamilyLabel, LabelSet, LabeledText};
use crate::features::{
    extract_char_ngrams, extract_word_tfidf, stylometric_raw, FeatureError, Standardizer,
    ViewId, Vocabulary,
};

pub use centroid::{cosine_scores, train_nearest_centroid};
pub use naive_bayes::{train_naive_bayes, NaiveBayesConfig};
pub use softmax::{loss_and_gradient, train_softmax_regression, SoftmaxConfig};
pub use store::{load_model, save_model, ModelIoError, MODEL_FORMAT_VERSION};

/// Errors from classifier training and prediction.
#[derive(Debug, thiserror::Error)]
pub enum ClassifierError {
    #[error("class {label:?} has no training examples")]
    EmptyClass { label: String },
    #[error("smoothing alpha must be positive, got {alpha}")]
    NonPositiveAlpha { alpha: f64 },
    #[error("invalid hyperparameter {name}={value}")]
    InvalidHyperparameter { name: &'static str, value: f64 },
    #[error("training loss became non-finite")]
    DivergedLoss,
    #[error("text is empty")]
    EmptyText,
    #[error("model is missing fitted state ({0})")]
    UnfittedModel(&'static str),
    #[error(transparent)]
    Feature(#[from] FeatureError),
}

/// Which of the three classifier architectures a model is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassifierKind {
    NaiveBayes,
    SoftmaxRegression,
    NearestCentroid,
}

/// Provenance of a trained model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingMeta {
    pub seed: u64,
    pub per_class: usize,
    pub hyperparameters: BTreeMap<String, f64>,
}

/// Kind-specific trained parameters. Matrices are row-major `K x D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModelParams {
    NaiveBayes {
        log_priors: Vec<f64>,
        log_likelihoods: Vec<f64>,
    },
    Softmax {
        weights: Vec<f64>,
        bias: Vec<f64>,
        final_loss: f64,
    },
    NearestCentroid {
        centroids: Vec<f64>,
    },
}

/// A prediction with the full per-class score vector.
///
/// Scores are probabilities for naive Bayes and softmax regression, cosine
/// similarities for nearest centroid. The label is always the argmax, with
/// ties broken toward the first label in label-set order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredPrediction {
    pub label: FamilyLabel,
    pub scores: Vec<f64>,
}

/// A trained classifier: parameters plus everything needed to featurize an
/// incoming text the same way training did.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierModel {
    pub kind: ClassifierKind,
    pub labels: LabelSet,
    pub view: ViewId,
    pub vocab: Option<Vocabulary>,
    pub standardizer: Option<Standardizer>,
    pub params: ModelParams,
    pub meta: TrainingMeta,
}

/// Argmax with deterministic tie-breaking toward the smaller index.
pub(crate) fn argmax_first(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

/// Exponentiate-and-normalize log scores into probabilities (log-sum-exp).
pub(crate) fn softmax_probs(log_scores: &[f64]) -> Vec<f64> {
    let max = log_scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = log_scores.iter().map(|&s| (s - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / total).collect()
}

impl ClassifierModel {
    pub fn num_classes(&self) -> usize {
        self.labels.len()
    }

    /// Score a text under this model. The model applies its own view
    /// extraction internally, so callers only ever pass raw text.
    pub fn predict(&self, text: &str) -> Result<ScoredPrediction, ClassifierError> {
        if text.trim().is_empty() {
            return Err(ClassifierError::EmptyText);
        }
        let k = self.num_classes();
        let scores = match (&self.params, self.kind) {
            (
                ModelParams::NaiveBayes {
                    log_priors,
                    log_likelihoods,
                },
                ClassifierKind::NaiveBayes,
            ) => {
                let vocab = self.vocab()?;
                let fv = extract_char_ngrams(text, vocab)?;
                let v = vocab.len();
                let mut log_scores = log_priors.clone();
                for &(idx, count) in &fv.entries {
                    for (c, score) in log_scores.iter_mut().enumerate() {
                        *score += count * log_likelihoods[c * v + idx as usize];
                    }
                }
                softmax_probs(&log_scores)
            }
            (
                ModelParams::Softmax { weights, bias, .. },
                ClassifierKind::SoftmaxRegression,
            ) => {
                let vocab = self.vocab()?;
                let fv = extract_word_tfidf(text, vocab)?;
                let d = vocab.len();
                let mut logits = bias.clone();
                for &(idx, x) in &fv.entries {
                    for (c, logit) in logits.iter_mut().enumerate() {
                        *logit += weights[c * d + idx as usize] * x;
                    }
                }
                softmax_probs(&logits)
            }
            (
                ModelParams::NearestCentroid { centroids },
                ClassifierKind::NearestCentroid,
            ) => {
                let standardizer = self
                    .standardizer
                    .as_ref()
                    .ok_or(ClassifierError::UnfittedModel("standardizer"))?;
                let raw = stylometric_raw(text)?;
                let standardized = standardizer.apply(&raw);
                cosine_scores(centroids, k, &standardized)
            }
            _ => return Err(ClassifierError::UnfittedModel("parameter/kind mismatch")),
        };
        let label = self
            .labels
            .label(argmax_first(&scores))
            .expect("argmax within label set");
        Ok(ScoredPrediction { label, scores })
    }

    fn vocab(&self) -> Result<&Vocabulary, ClassifierError> {
        self.vocab
            .as_ref()
            .ok_or(ClassifierError::UnfittedModel("vocabulary"))
    }
}

/// Fraction of `texts` whose predicted label matches the true one.
pub fn accuracy(model: &ClassifierModel, texts: &[LabeledText]) -> Result<f64, ClassifierError> {
    if texts.is_empty() {
        return Ok(0.0);
    }
    let mut correct = 0usize;
    for rec in texts {
        if model.predict(&rec.text)?.label == rec.label {
            correct += 1;
        }
    }
    Ok(correct as f64 / texts.len() as f64)
}

/// Check that every class in `labels` appears in `train`; returns per-class
/// counts in label order.
pub(crate) fn class_counts(
    labels: &LabelSet,
    train: &[LabeledText],
) -> Result<Vec<usize>, ClassifierError> {
    let mut counts = vec![0usize; labels.len()];
    for rec in train {
        counts[rec.label.index()] += 1;
    }
    for (i, &count) in counts.iter().enumerate() {
        if count == 0 {
            return Err(ClassifierError::EmptyClass {
                label: labels.names()[i].clone(),
            });
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::LabelSet;

    pub(super) fn labeled(labels: &LabelSet, rows: &[(&str, &str)]) -> Vec<LabeledText> {
        rows.iter()
            .enumerate()
            .map(|(i, (text, label))| LabeledText {
                id: format!("t{i}"),
                text: text.to_string(),
                label: labels.index_of(label).unwrap(),
            })
            .collect()
    }

    #[test]
    fn argmax_breaks_ties_toward_first() {
        assert_eq!(argmax_first(&[0.5, 0.5]), 0);
        assert_eq!(argmax_first(&[0.1, 0.7, 0.7]), 1);
        assert_eq!(argmax_first(&[0.0, 0.2, 0.9]), 2);
    }

    #[test]
    fn softmax_probs_normalize() {
        let p = softmax_probs(&[-1000.0, -1001.0, -999.0]);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!(p.iter().all(|&x| x > 0.0));
        assert_eq!(argmax_first(&p), 2);
    }

    #[test]
    fn empty_text_is_rejected_by_predict() {
        let labels = LabelSet::new(vec!["A", "B"]).unwrap();
        let train = labeled(
            &labels,
            &[("xxxx xxxx", "A"), ("qqqq qqqq", "B")],
        );
        let model =
            train_naive_bayes(&labels, &train, &NaiveBayesConfig::default(), 0).unwrap();
        assert!(matches!(
            model.predict("   "),
            Err(ClassifierError::EmptyText)
        ));
    }

    #[test]
    fn missing_class_is_an_error() {
        let labels = LabelSet::new(vec!["A", "B"]).unwrap();
        let train = labeled(&labels, &[("all in one class", "A")]);
        match train_naive_bayes(&labels, &train, &NaiveBayesConfig::default(), 0) {
            Err(ClassifierError::EmptyClass { label }) => assert_eq!(label, "B"),
            other => panic!("expected EmptyClass, got {other:?}"),
        }
    }
}
