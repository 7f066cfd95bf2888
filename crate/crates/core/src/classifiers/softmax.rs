//! Softmax (multinomial logistic) regression over word TF-IDF features.
//!
//! Full-batch gradient descent from zero initialization on
//! `mean cross-entropy + (l2/2) * ||W||^2`. The problem is convex, so zero
//! initialization is exact and the seed only tags provenance. A halving rule
//! keeps the training loss non-increasing: whenever a step would increase the
//! loss, the step size is halved and the epoch retried, up to 20 times; if no
//! acceptable step exists the optimizer stops where it is.

use std::collections::BTreeMap;

use crate::corpus::{LabelSet, LabeledText};
use crate::features::{
    extract_word_tfidf, fit_vocabulary, FeatureVector, TokenizerKind, ViewId, VocabConfig,
};

use super::{
    class_counts, ClassifierError, ClassifierKind, ClassifierModel, ModelParams, TrainingMeta,
};

/// Softmax-regression hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoftmaxConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    /// Ridge coefficient on the weight matrix (bias is unpenalized).
    pub l2: f64,
    /// Minimum document frequency for the TF-IDF vocabulary.
    pub min_df: u32,
}

impl Default for SoftmaxConfig {
    fn default() -> Self {
        SoftmaxConfig {
            learning_rate: 0.5,
            epochs: 200,
            l2: 1e-4,
            min_df: 3,
        }
    }
}

const MAX_HALVINGS: usize = 20;

/// Objective value and analytic gradient at `(weights, bias)`.
///
/// `rows` are sparse feature vectors with indices below `d`; `targets` are
/// class indices below `k`. Exposed so the gradient can be checked against
/// finite differences of the loss alone.
pub fn loss_and_gradient(
    rows: &[FeatureVector],
    targets: &[usize],
    k: usize,
    d: usize,
    weights: &[f64],
    bias: &[f64],
    l2: f64,
) -> (f64, Vec<f64>, Vec<f64>) {
    assert_eq!(rows.len(), targets.len());
    assert_eq!(weights.len(), k * d);
    assert_eq!(bias.len(), k);
    let n = rows.len() as f64;
    let mut loss = 0.0;
    let mut grad_w = vec![0.0; k * d];
    let mut grad_b = vec![0.0; k];
    let mut logits = vec![0.0; k];
    for (row, &target) in rows.iter().zip(targets) {
        logits.copy_from_slice(bias);
        for &(idx, x) in &row.entries {
            for (c, logit) in logits.iter_mut().enumerate() {
                *logit += weights[c * d + idx as usize] * x;
            }
        }
        // Cross-entropy via log-sum-exp for stability.
        let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lse = max + logits.iter().map(|&z| (z - max).exp()).sum::<f64>().ln();
        loss += (lse - logits[target]) / n;
        for c in 0..k {
            let p = (logits[c] - lse).exp();
            let residual = (p - if c == target { 1.0 } else { 0.0 }) / n;
            grad_b[c] += residual;
            for &(idx, x) in &row.entries {
                grad_w[c * d + idx as usize] += residual * x;
            }
        }
    }
    if l2 > 0.0 {
        let mut penalty = 0.0;
        for (g, w) in grad_w.iter_mut().zip(weights) {
            penalty += w * w;
            *g += l2 * w;
        }
        loss += 0.5 * l2 * penalty;
    }
    (loss, grad_w, grad_b)
}

/// Train softmax regression on the word TF-IDF view.
pub fn train_softmax_regression(
    labels: &LabelSet,
    train: &[LabeledText],
    config: &SoftmaxConfig,
    seed: u64,
) -> Result<ClassifierModel, ClassifierError> {
    if config.learning_rate <= 0.0 {
        return Err(ClassifierError::InvalidHyperparameter {
            name: "learning_rate",
            value: config.learning_rate,
        });
    }
    if config.epochs == 0 {
        return Err(ClassifierError::InvalidHyperparameter {
            name: "epochs",
            value: 0.0,
        });
    }
    if config.l2 < 0.0 {
        return Err(ClassifierError::InvalidHyperparameter {
            name: "l2",
            value: config.l2,
        });
    }
    let counts_per_class = class_counts(labels, train)?;
    let k = labels.len();

    let texts: Vec<&str> = train.iter().map(|r| r.text.as_str()).collect();
    let vocab = fit_vocabulary(
        &texts,
        &VocabConfig {
            tokenizer: TokenizerKind::WordUnigramBigram,
            min_df: config.min_df,
        },
    )?;
    let d = vocab.len();
    let rows: Vec<FeatureVector> = train
        .iter()
        .map(|r| extract_word_tfidf(&r.text, &vocab))
        .collect::<Result<_, _>>()?;
    let targets: Vec<usize> = train.iter().map(|r| r.label.index()).collect();

    let mut weights = vec![0.0; k * d];
    let mut bias = vec![0.0; k];
    let (mut loss, mut grad_w, mut grad_b) =
        loss_and_gradient(&rows, &targets, k, d, &weights, &bias, config.l2);
    if !loss.is_finite() {
        return Err(ClassifierError::DivergedLoss);
    }

    let mut lr = config.learning_rate;
    'epochs: for _ in 0..config.epochs {
        let mut halvings = 0;
        loop {
            let cand_w: Vec<f64> = weights
                .iter()
                .zip(&grad_w)
                .map(|(w, g)| w - lr * g)
                .collect();
            let cand_b: Vec<f64> = bias.iter().zip(&grad_b).map(|(b, g)| b - lr * g).collect();
            let (cand_loss, cand_gw, cand_gb) =
                loss_and_gradient(&rows, &targets, k, d, &cand_w, &cand_b, config.l2);
            if cand_loss.is_finite() && cand_loss <= loss {
                weights = cand_w;
                bias = cand_b;
                loss = cand_loss;
                grad_w = cand_gw;
                grad_b = cand_gb;
                break;
            }
            halvings += 1;
            if halvings > MAX_HALVINGS {
                // No step at any tried scale improves the loss: converged.
                break 'epochs;
            }
            lr /= 2.0;
        }
    }
    if !loss.is_finite() {
        return Err(ClassifierError::DivergedLoss);
    }

    let mut hyperparameters = BTreeMap::new();
    hyperparameters.insert("learning_rate".into(), config.learning_rate);
    hyperparameters.insert("epochs".into(), config.epochs as f64);
    hyperparameters.insert("l2".into(), config.l2);
    hyperparameters.insert("min_df".into(), config.min_df as f64);

    Ok(ClassifierModel {
        kind: ClassifierKind::SoftmaxRegression,
        labels: labels.clone(),
        view: ViewId::WordTfidf,
        vocab: Some(vocab),
        standardizer: None,
        params: ModelParams::Softmax {
            weights,
            bias,
            final_loss: loss,
        },
        meta: TrainingMeta {
            seed,
            per_class: counts_per_class.iter().copied().min().unwrap_or(0),
            hyperparameters,
        },
    })
}
