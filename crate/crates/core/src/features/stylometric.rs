//! The stylometric view: a fixed-length surface-style profile of a text.
//!
//! Captures punctuation habits, sentence shape, vocabulary richness,
//! function-word usage, and a burstiness proxy. No external language model is
//! involved; every statistic is computable from the text alone. Components
//! are standardized with training-set statistics (see [`Standardizer`]) that
//! ship inside the trained model.

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use super::{word_tokens, FeatureError};

/// The fixed punctuation inventory, one relative-frequency dimension each.
pub const PUNCTUATION_MARKS: [char; 12] =
    ['.', ',', '!', '?', ';', ':', '\'', '"', '-', '(', ')', '\u{2014}'];

/// Fixed English function-word list (versioned resource).
pub fn function_words() -> &'static [&'static str] {
    static WORDS: std::sync::OnceLock<Vec<&'static str>> = std::sync::OnceLock::new();
    WORDS.get_or_init(|| {
        include_str!("../../resources/function_words_v1.txt")
            .lines()
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .collect()
    })
}

const N_FUNCTION_WORDS: usize = 50;

/// Total stylometric dimensions:
/// 12 punctuation frequencies, sentence-length mean and variance, mean word
/// length, type-token ratio, 50 function-word frequencies, digit ratio,
/// uppercase ratio, burstiness.
pub const STYLOMETRIC_DIM: usize = 12 + 2 + 1 + 1 + N_FUNCTION_WORDS + 1 + 1 + 1;

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Population variance; 0 for empty input.
fn variance(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64
}

/// Variance/mean of occurrence-gap distances, pooled over the ten most
/// frequent words. Evenly spaced repetitions give 0; clumped ("bursty")
/// usage gives larger values. 0 when no word repeats.
fn burstiness(words: &[String]) -> f64 {
    let mut counts: std::collections::HashMap<&str, u32> = std::collections::HashMap::new();
    for w in words {
        *counts.entry(w.as_str()).or_insert(0) += 1;
    }
    let mut ranked: Vec<(&str, u32)> = counts.into_iter().collect();
    // Deterministic top-10: by count descending, then lexicographic.
    ranked.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    ranked.truncate(10);
    let top: std::collections::HashSet<&str> = ranked.iter().map(|&(w, _)| w).collect();

    let mut last_pos: std::collections::HashMap<&str, usize> = std::collections::HashMap::new();
    let mut gaps = Vec::new();
    for (pos, w) in words.iter().enumerate() {
        if !top.contains(w.as_str()) {
            continue;
        }
        if let Some(prev) = last_pos.insert(w.as_str(), pos) {
            gaps.push((pos - prev) as f64);
        }
    }
    let gap_mean = mean(&gaps);
    if gap_mean == 0.0 {
        0.0
    } else {
        variance(&gaps) / gap_mean
    }
}

/// Extract the raw (unstandardized) stylometric vector of a text.
pub fn stylometric_raw(text: &str) -> Result<Vec<f64>, FeatureError> {
    let text: String = text.nfc().collect();
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(FeatureError::EmptyText);
    }
    let chars: Vec<char> = trimmed.chars().collect();
    let total_chars = chars.len() as f64;

    let mut features = Vec::with_capacity(STYLOMETRIC_DIM);

    // Punctuation relative frequencies.
    for mark in PUNCTUATION_MARKS {
        let count = chars.iter().filter(|&&c| c == mark).count();
        features.push(count as f64 / total_chars);
    }

    // Sentence lengths in words; sentences end at runs of . ! ?.
    let sentence_lengths: Vec<f64> = trimmed
        .split(['.', '!', '?'])
        .map(|s| word_tokens(s).len())
        .filter(|&n| n > 0)
        .map(|n| n as f64)
        .collect();
    features.push(mean(&sentence_lengths));
    features.push(variance(&sentence_lengths));

    // Word-level statistics.
    let words = word_tokens(trimmed);
    let word_lengths: Vec<f64> = words.iter().map(|w| w.chars().count() as f64).collect();
    features.push(mean(&word_lengths));
    let distinct: std::collections::HashSet<&str> = words.iter().map(String::as_str).collect();
    let ttr = if words.is_empty() {
        0.0
    } else {
        distinct.len() as f64 / words.len() as f64
    };
    features.push(ttr);

    // Function-word relative frequencies.
    let total_words = words.len() as f64;
    for &fw in function_words() {
        let count = words.iter().filter(|w| w.as_str() == fw).count();
        features.push(if total_words > 0.0 {
            count as f64 / total_words
        } else {
            0.0
        });
    }

    // Character-class ratios.
    let digits = chars.iter().filter(|c| c.is_ascii_digit()).count();
    features.push(digits as f64 / total_chars);
    let uppercase = chars.iter().filter(|c| c.is_uppercase()).count();
    features.push(uppercase as f64 / total_chars);

    features.push(burstiness(&words));

    debug_assert_eq!(features.len(), STYLOMETRIC_DIM);
    Ok(features)
}

/// Per-dimension standardization statistics fitted on a training set.
///
/// Constant dimensions get variance 1 so standardization never divides by
/// zero; their standardized value is then exactly 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub variances: Vec<f64>,
}

const CONSTANT_DIM_THRESHOLD: f64 = 1e-12;

impl Standardizer {
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self, FeatureError> {
        if rows.is_empty() {
            return Err(FeatureError::EmptyInput);
        }
        let dim = rows[0].len();
        let n = rows.len() as f64;
        let mut means = vec![0.0; dim];
        for row in rows {
            for (m, x) in means.iter_mut().zip(row) {
                *m += x;
            }
        }
        for m in &mut means {
            *m /= n;
        }
        let mut variances = vec![0.0; dim];
        for row in rows {
            for ((v, x), m) in variances.iter_mut().zip(row).zip(&means) {
                *v += (x - m) * (x - m);
            }
        }
        for v in &mut variances {
            *v /= n;
            if *v < CONSTANT_DIM_THRESHOLD {
                *v = 1.0;
            }
        }
        Ok(Standardizer { means, variances })
    }

    pub fn apply(&self, raw: &[f64]) -> Vec<f64> {
        raw.iter()
            .zip(&self.means)
            .zip(&self.variances)
            .map(|((x, m), v)| (x - m) / v.sqrt())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.means.len()
    }
}
