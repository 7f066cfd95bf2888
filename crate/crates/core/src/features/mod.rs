//! Sparse feature extraction: three independent views of a text.
//!
//! Each of the three classifiers sees its own view, chosen so that their
//! errors decorrelate as much as possible:
//!
//! * [`ViewId::CharNgram`] — character n-gram counts (sub-word patterns),
//! * [`ViewId::WordTfidf`] — word unigram+bigram TF-IDF (lexical choice),
//! * [`ViewId::Stylometric`] — a fixed-length profile of punctuation, sentence
//!   shape, vocabulary richness, and burstiness (surface style).
//!
//! Extraction is deterministic and pure; vocabularies assign indices in
//! lexicographic token order so refitting the same corpus reproduces the
//! same mapping.

pub mod stylometric;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

pub use stylometric::{stylometric_raw, Standardizer, STYLOMETRIC_DIM};

/// Errors from feature extraction and vocabulary fitting.
#[derive(Debug, thiserror::Error)]
pub enum FeatureError {
    #[error("no input texts to fit a vocabulary on")]
    EmptyInput,
    #[error("text is empty after normalization")]
    EmptyText,
    #[error("vocabulary was fitted for a different view (expected {expected:?}, got {got:?})")]
    ViewMismatch { expected: ViewId, got: ViewId },
}

/// Which feature view a vector or vocabulary belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ViewId {
    CharNgram,
    WordTfidf,
    Stylometric,
}

/// A sparse feature vector. Entries are sorted by feature index and never
/// store explicit zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub view: ViewId,
    pub entries: Vec<(u32, f64)>,
}

impl FeatureVector {
    pub fn empty(view: ViewId) -> Self {
        FeatureVector {
            view,
            entries: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn l2_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|(_, w)| w * w)
            .sum::<f64>()
            .sqrt()
    }

    /// Weight at `index`, zero when absent.
    pub fn get(&self, index: u32) -> f64 {
        self.entries
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|pos| self.entries[pos].1)
            .unwrap_or(0.0)
    }
}

/// Tokenization scheme behind a vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TokenizerKind {
    /// Character n-grams of fixed order over lowercased NFC text.
    CharNgram { n: usize },
    /// Word unigrams plus adjacent bigrams over lowercased NFC text.
    WordUnigramBigram,
}

impl TokenizerKind {
    pub fn view(&self) -> ViewId {
        match self {
            TokenizerKind::CharNgram { .. } => ViewId::CharNgram,
            TokenizerKind::WordUnigramBigram => ViewId::WordTfidf,
        }
    }
}

/// Vocabulary fitting configuration: tokenization plus a minimum document
/// frequency for a token to be kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VocabConfig {
    pub tokenizer: TokenizerKind,
    pub min_df: u32,
}

/// A fitted token vocabulary with document frequencies.
///
/// Tokens are stored sorted, so the index of a token is both stable across
/// refits and recoverable by binary search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    tokenizer: TokenizerKind,
    tokens: Vec<String>,
    doc_freq: Vec<u32>,
    n_docs: u32,
}

impl Vocabulary {
    pub fn view(&self) -> ViewId {
        self.tokenizer.view()
    }

    pub fn tokenizer(&self) -> TokenizerKind {
        self.tokenizer
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn n_docs(&self) -> u32 {
        self.n_docs
    }

    pub fn token(&self, index: u32) -> &str {
        &self.tokens[index as usize]
    }

    pub fn index_of(&self, token: &str) -> Option<u32> {
        self.tokens
            .binary_search_by(|t| t.as_str().cmp(token))
            .ok()
            .map(|i| i as u32)
    }

    pub fn doc_freq(&self, index: u32) -> u32 {
        self.doc_freq[index as usize]
    }

    /// Smoothed inverse document frequency: `ln((1 + N) / (1 + df)) + 1`.
    pub fn idf(&self, index: u32) -> f64 {
        let n = self.n_docs as f64;
        let df = self.doc_freq[index as usize] as f64;
        ((1.0 + n) / (1.0 + df)).ln() + 1.0
    }
}

/// NFC-normalize and lowercase, the canonical form every token view sees.
fn canonical(text: &str) -> String {
    text.nfc().collect::<String>().to_lowercase()
}

/// Word tokens: maximal runs of alphanumeric characters of the canonical
/// form.
pub(crate) fn word_tokens(text: &str) -> Vec<String> {
    canonical(text)
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Character n-grams of the canonical form, in sliding-window order.
fn char_ngrams(text: &str, n: usize) -> Vec<String> {
    let chars: Vec<char> = canonical(text).chars().collect();
    if n == 0 || chars.len() < n {
        return Vec::new();
    }
    chars.windows(n).map(|w| w.iter().collect()).collect()
}

fn tokens_for(text: &str, tokenizer: TokenizerKind) -> Vec<String> {
    match tokenizer {
        TokenizerKind::CharNgram { n } => char_ngrams(text, n),
        TokenizerKind::WordUnigramBigram => {
            let words = word_tokens(text);
            let mut tokens = words.clone();
            tokens.extend(words.windows(2).map(|w| format!("{} {}", w[0], w[1])));
            tokens
        }
    }
}

/// Fit a vocabulary over `texts`: keep every token whose document frequency
/// reaches `min_df`, with indices assigned in lexicographic token order.
pub fn fit_vocabulary<S: AsRef<str>>(
    texts: &[S],
    config: &VocabConfig,
) -> Result<Vocabulary, FeatureError> {
    if texts.is_empty() {
        return Err(FeatureError::EmptyInput);
    }
    let mut df: std::collections::HashMap<String, u32> = std::collections::HashMap::new();
    for text in texts {
        let mut seen: std::collections::HashSet<String> = std::collections::HashSet::new();
        for token in tokens_for(text.as_ref(), config.tokenizer) {
            seen.insert(token);
        }
        for token in seen {
            *df.entry(token).or_insert(0) += 1;
        }
    }
    let mut kept: Vec<(String, u32)> = df
        .into_iter()
        .filter(|&(_, count)| count >= config.min_df)
        .collect();
    kept.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let (tokens, doc_freq): (Vec<String>, Vec<u32>) = kept.into_iter().unzip();
    Ok(Vocabulary {
        tokenizer: config.tokenizer,
        tokens,
        doc_freq,
        n_docs: texts.len() as u32,
    })
}

fn count_in_vocab(text: &str, vocab: &Vocabulary) -> Vec<(u32, f64)> {
    let mut counts: std::collections::BTreeMap<u32, f64> = std::collections::BTreeMap::new();
    for token in tokens_for(text, vocab.tokenizer) {
        if let Some(idx) = vocab.index_of(&token) {
            *counts.entry(idx).or_insert(0.0) += 1.0;
        }
    }
    counts.into_iter().collect()
}

/// Count in-vocabulary character n-grams of `text`. Out-of-vocabulary
/// n-grams are dropped; an empty vector is a valid result.
pub fn extract_char_ngrams(text: &str, vocab: &Vocabulary) -> Result<FeatureVector, FeatureError> {
    if vocab.view() != ViewId::CharNgram {
        return Err(FeatureError::ViewMismatch {
            expected: ViewId::CharNgram,
            got: vocab.view(),
        });
    }
    Ok(FeatureVector {
        view: ViewId::CharNgram,
        entries: count_in_vocab(text, vocab),
    })
}

/// The stylometric profile as a sparse feature vector (raw, unstandardized;
/// zero components are not stored). Standardization statistics live with the
/// trained model, see [`Standardizer`].
pub fn extract_stylometric(text: &str) -> Result<FeatureVector, FeatureError> {
    let raw = stylometric_raw(text)?;
    Ok(FeatureVector {
        view: ViewId::Stylometric,
        entries: raw
            .into_iter()
            .enumerate()
            .filter(|&(_, v)| v != 0.0)
            .map(|(i, v)| (i as u32, v))
            .collect(),
    })
}

/// TF-IDF weights over word unigrams and bigrams, L2-normalized.
///
/// `weight(t) = tf(t) * (ln((1 + N) / (1 + df(t))) + 1)`, then the vector is
/// scaled to unit L2 norm. Texts with no in-vocabulary token produce an empty
/// vector.
pub fn extract_word_tfidf(text: &str, vocab: &Vocabulary) -> Result<FeatureVector, FeatureError> {
    if vocab.view() != ViewId::WordTfidf {
        return Err(FeatureError::ViewMismatch {
            expected: ViewId::WordTfidf,
            got: vocab.view(),
        });
    }
    let mut entries = count_in_vocab(text, vocab);
    for (idx, weight) in &mut entries {
        *weight *= vocab.idf(*idx);
    }
    let norm = entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
    if norm > 0.0 {
        for (_, weight) in &mut entries {
            *weight /= norm;
        }
    }
    Ok(FeatureVector {
        view: ViewId::WordTfidf,
        entries,
    })
}
