//! Multinomial naive Bayes over character n-gram counts.

use std::collections::BTreeMap;

use crate::corpus::{LabelSet, LabeledText};
use crate::features::{extract_char_ngrams, fit_vocabulary, TokenizerKind, ViewId, VocabConfig};

use super::{class_counts, ClassifierError, ClassifierKind, ClassifierModel, ModelParams, TrainingMeta};

/// Naive Bayes hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaiveBayesConfig {
    /// Laplace smoothing strength (must be positive).
    pub alpha: f64,
    /// Character n-gram order.
    pub ngram: usize,
    /// Minimum document frequency for an n-gram to enter the vocabulary.
    pub min_df: u32,
}

impl Default for NaiveBayesConfig {
    fn default() -> Self {
        NaiveBayesConfig {
            alpha: 1.0,
            ngram: 3,
            min_df: 2,
        }
    }
}

/// Train a multinomial naive Bayes model.
///
/// Token log-likelihoods use Laplace smoothing:
/// `ln((count_{c,t} + alpha) / (count_c + alpha * |V|))`, so the per-class
/// likelihoods form a proper distribution over the vocabulary.
pub fn train_naive_bayes(
    labels: &LabelSet,
    train: &[LabeledText],
    config: &NaiveBayesConfig,
    seed: u64,
) -> Result<ClassifierModel, ClassifierError> {
    if config.alpha <= 0.0 {
        return Err(ClassifierError::NonPositiveAlpha {
            alpha: config.alpha,
        });
    }
    if config.ngram == 0 {
        return Err(ClassifierError::InvalidHyperparameter {
            name: "ngram",
            value: 0.0,
        });
    }
    let counts_per_class = class_counts(labels, train)?;
    let k = labels.len();

    let texts: Vec<&str> = train.iter().map(|r| r.text.as_str()).collect();
    let vocab = fit_vocabulary(
        &texts,
        &VocabConfig {
            tokenizer: TokenizerKind::CharNgram { n: config.ngram },
            min_df: config.min_df,
        },
    )?;
    let v = vocab.len();

    // Token counts per class.
    let mut token_counts = vec![0.0f64; k * v];
    let mut class_totals = vec![0.0f64; k];
    for rec in train {
        let fv = extract_char_ngrams(&rec.text, &vocab)?;
        let c = rec.label.index();
        for &(idx, count) in &fv.entries {
            token_counts[c * v + idx as usize] += count;
            class_totals[c] += count;
        }
    }

    let n = train.len() as f64;
    let log_priors: Vec<f64> = counts_per_class
        .iter()
        .map(|&count| (count as f64 / n).ln())
        .collect();
    let mut log_likelihoods = vec![0.0f64; k * v];
    for c in 0..k {
        let denom = class_totals[c] + config.alpha * v as f64;
        for t in 0..v {
            log_likelihoods[c * v + t] = ((token_counts[c * v + t] + config.alpha) / denom).ln();
        }
    }

    let mut hyperparameters = BTreeMap::new();
    hyperparameters.insert("alpha".into(), config.alpha);
    hyperparameters.insert("ngram".into(), config.ngram as f64);
    hyperparameters.insert("min_df".into(), config.min_df as f64);

    Ok(ClassifierModel {
        kind: ClassifierKind::NaiveBayes,
        labels: labels.clone(),
        view: ViewId::CharNgram,
        vocab: Some(vocab),
        standardizer: None,
        params: ModelParams::NaiveBayes {
            log_priors,
            log_likelihoods,
        },
        meta: TrainingMeta {
            seed,
            per_class: counts_per_class.iter().copied().min().unwrap_or(0),
            hyperparameters,
        },
    })
}
