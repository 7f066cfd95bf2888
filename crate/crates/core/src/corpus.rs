//! Labeled-corpus ingestion, validation, balancing, and splitting.
//!
//! A corpus is a list of [`LabeledText`] records whose labels come from a
//! fixed, ordered [`LabelSet`]. The label order is significant: it defines
//! the row/column order of every confusion matrix and score vector downstream.
//! All sampling here is seeded and pure, so a pipeline rerun with the same
//! seeds reproduces the same subsets exactly.

use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::rng::{derive_seed, SeededRng};

/// Errors from corpus ingestion and sampling.
#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("label set invalid: {0}")]
    InvalidLabelSet(String),
    #[error("malformed record at line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },
    #[error("unknown label {label:?} at line {line} (not in the configured label set)")]
    UnknownLabel { line: usize, label: String },
    #[error("empty text at line {line} (id {id:?})")]
    EmptyText { line: usize, id: String },
    #[error("duplicate id {id:?} at line {line}")]
    DuplicateId { line: usize, id: String },
    #[error("class {label:?} has {available} examples, {requested} requested")]
    InsufficientClassExamples {
        label: String,
        available: usize,
        requested: usize,
    },
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("split ratio {ratio} outside (0, 1)")]
    InvalidRatio { ratio: f64 },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// An ordered set of attribution classes (LLM families).
///
/// Equality of two label sets means equal names in equal order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelSet {
    names: Vec<String>,
}

impl LabelSet {
    /// Build a label set from ordered names. Requires at least two distinct,
    /// non-empty names; the given order is preserved for the lifetime of a run.
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self, CorpusError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() < 2 {
            return Err(CorpusError::InvalidLabelSet(format!(
                "need at least 2 labels, got {}",
                names.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.trim().is_empty() {
                return Err(CorpusError::InvalidLabelSet("empty label name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(CorpusError::InvalidLabelSet(format!(
                    "duplicate label {name:?}"
                )));
            }
        }
        Ok(LabelSet { names })
    }

    /// The default family set.
    pub fn default_families() -> Self {
        LabelSet::new(vec!["Claude", "Gemini", "Llama", "OpenAI"]).expect("static label set")
    }

    /// Number of classes K.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, label: FamilyLabel) -> &str {
        &self.names[label.0]
    }

    pub fn index_of(&self, name: &str) -> Option<FamilyLabel> {
        self.names.iter().position(|n| n == name).map(FamilyLabel)
    }

    /// Label for class index `i`, if in range.
    pub fn label(&self, i: usize) -> Option<FamilyLabel> {
        (i < self.names.len()).then_some(FamilyLabel(i))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// All labels in matrix order.
    pub fn labels(&self) -> impl Iterator<Item = FamilyLabel> + '_ {
        (0..self.names.len()).map(FamilyLabel)
    }
}

/// One attribution class, held as an index into its [`LabelSet`].
///
/// The index doubles as the row/column position in confusion matrices and
/// score vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyLabel(pub(crate) usize);

impl FamilyLabel {
    pub fn index(&self) -> usize {
        self.0
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class#{}", self.0)
    }
}

/// One document with its generating-family label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledText {
    pub id: String,
    pub text: String,
    pub label: FamilyLabel,
}

/// One unlabeled document, for attribution and unseen-model scanning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
}

/// A deterministic train/test partition of a corpus.
#[derive(Debug, Clone)]
pub struct CorpusSplit {
    pub train: Vec<LabeledText>,
    pub test: Vec<LabeledText>,
    pub seed: u64,
}

/// On-disk corpus formats: line-delimited JSON records or CSV with a header.
/// Both carry the fields `id`, `text`, `label`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    Jsonl,
    Csv,
}

impl CorpusFormat {
    /// Guess the format from a file extension; JSONL when unclear.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => CorpusFormat::Csv,
            _ => CorpusFormat::Jsonl,
        }
    }
}

#[derive(Deserialize)]
struct RawRecord {
    id: String,
    text: String,
    label: String,
}

/// NFC-normalize and trim a text.
pub(crate) fn normalize_text(text: &str) -> String {
    text.nfc().collect::<String>().trim().to_string()
}

fn validate_record(
    raw: RawRecord,
    line: usize,
    labels: &LabelSet,
    seen_ids: &mut HashSet<String>,
) -> Result<LabeledText, CorpusError> {
    if raw.id.is_empty() {
        return Err(CorpusError::MalformedRecord {
            line,
            reason: "empty id".into(),
        });
    }
    let label = labels
        .index_of(&raw.label)
        .ok_or_else(|| CorpusError::UnknownLabel {
            line,
            label: raw.label.clone(),
        })?;
    let text = normalize_text(&raw.text);
    if text.is_empty() {
        return Err(CorpusError::EmptyText { line, id: raw.id });
    }
    if !seen_ids.insert(raw.id.clone()) {
        return Err(CorpusError::DuplicateId { line, id: raw.id });
    }
    Ok(LabeledText {
        id: raw.id,
        text,
        label,
    })
}

/// Read a labeled corpus from disk, validating every record against the
/// configured label set. Record order is preserved; texts are NFC-normalized
/// and trimmed on the way in.
pub fn ingest_corpus(
    path: &Path,
    format: CorpusFormat,
    labels: &LabelSet,
) -> Result<Vec<LabeledText>, CorpusError> {
    let mut out = Vec::new();
    let mut seen_ids = HashSet::new();
    match format {
        CorpusFormat::Jsonl => {
            let reader = BufReader::new(File::open(path)?);
            for (idx, line) in reader.lines().enumerate() {
                let line_no = idx + 1;
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let raw: RawRecord =
                    serde_json::from_str(&line).map_err(|e| CorpusError::MalformedRecord {
                        line: line_no,
                        reason: e.to_string(),
                    })?;
                out.push(validate_record(raw, line_no, labels, &mut seen_ids)?);
            }
        }
        CorpusFormat::Csv => {
            let mut reader = csv::Reader::from_path(path).map_err(csv_to_corpus_err)?;
            for result in reader.deserialize::<RawRecord>() {
                let raw = result.map_err(csv_to_corpus_err)?;
                let line = seen_ids.len() + 2; // header is line 1
                out.push(validate_record(raw, line, labels, &mut seen_ids)?);
            }
        }
    }
    Ok(out)
}

/// Read unlabeled documents (`id`, `text`); any `label` field is ignored.
pub fn ingest_documents(path: &Path, format: CorpusFormat) -> Result<Vec<Document>, CorpusError> {
    #[derive(Deserialize)]
    struct RawDoc {
        id: String,
        text: String,
    }
    let mut out = Vec::new();
    let mut seen_ids = HashSet::new();
    let mut push = |id: String, text: String, line: usize| -> Result<(), CorpusError> {
        if id.is_empty() {
            return Err(CorpusError::MalformedRecord {
                line,
                reason: "empty id".into(),
            });
        }
        let text = normalize_text(&text);
        if text.is_empty() {
            return Err(CorpusError::EmptyText { line, id });
        }
        if !seen_ids.insert(id.clone()) {
            return Err(CorpusError::DuplicateId { line, id });
        }
        out.push(Document { id, text });
        Ok(())
    };
    match format {
        CorpusFormat::Jsonl => {
            let reader = BufReader::new(File::open(path)?);
            for (idx, line) in reader.lines().enumerate() {
                let line_no = idx + 1;
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let raw: RawDoc =
                    serde_json::from_str(&line).map_err(|e| CorpusError::MalformedRecord {
                        line: line_no,
                        reason: e.to_string(),
                    })?;
                push(raw.id, raw.text, line_no)?;
            }
        }
        CorpusFormat::Csv => {
            let mut reader = csv::Reader::from_path(path).map_err(csv_to_corpus_err)?;
            for (idx, result) in reader.deserialize::<RawDoc>().enumerate() {
                let raw = result.map_err(csv_to_corpus_err)?;
                push(raw.id, raw.text, idx + 2)?;
            }
        }
    }
    Ok(out)
}

fn csv_to_corpus_err(e: csv::Error) -> CorpusError {
    let line = e
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or_default();
    CorpusError::MalformedRecord {
        line,
        reason: e.to_string(),
    }
}

/// Indices of `corpus` grouped per class, in corpus order.
fn indices_by_class(corpus: &[LabeledText], k: usize) -> Vec<Vec<usize>> {
    let mut by_class = vec![Vec::new(); k];
    for (i, rec) in corpus.iter().enumerate() {
        if rec.label.0 < k {
            by_class[rec.label.0].push(i);
        }
    }
    by_class
}

/// Draw exactly `per_class` examples per label by a seeded draw without
/// replacement. The same `(corpus, per_class, seed)` always yields the same
/// output; classes are emitted in label-set order.
pub fn balanced_sample(
    corpus: &[LabeledText],
    labels: &LabelSet,
    per_class: usize,
    seed: u64,
) -> Result<Vec<LabeledText>, CorpusError> {
    let by_class = indices_by_class(corpus, labels.len());
    let mut out = Vec::with_capacity(per_class * labels.len());
    for (class, class_indices) in by_class.iter().enumerate() {
        if class_indices.len() < per_class {
            return Err(CorpusError::InsufficientClassExamples {
                label: labels.names[class].clone(),
                available: class_indices.len(),
                requested: per_class,
            });
        }
        let mut rng = SeededRng::new(derive_seed(seed, class as u64));
        for pick in rng.sample_indices(class_indices.len(), per_class) {
            out.push(corpus[class_indices[pick]].clone());
        }
    }
    Ok(out)
}

/// Draw `n_classifiers` balanced training sets with independent derived seeds.
///
/// Subsets may overlap by default; randomness, not disjointness, is the
/// diversity mechanism. Pass `disjoint = true` to force pairwise-disjoint
/// subsets instead (this raises the per-class requirement to
/// `n_classifiers * per_class`).
pub fn per_classifier_subsets(
    corpus: &[LabeledText],
    labels: &LabelSet,
    n_classifiers: usize,
    per_class: usize,
    seed: u64,
    disjoint: bool,
) -> Result<Vec<Vec<LabeledText>>, CorpusError> {
    if !disjoint {
        return (0..n_classifiers)
            .map(|i| balanced_sample(corpus, labels, per_class, derive_seed(seed, 0x5000 + i as u64)))
            .collect();
    }
    // Disjoint mode: one big draw per class, chopped into consecutive chunks.
    let by_class = indices_by_class(corpus, labels.len());
    let mut sets = vec![Vec::with_capacity(per_class * labels.len()); n_classifiers];
    for (class, class_indices) in by_class.iter().enumerate() {
        let need = n_classifiers * per_class;
        if class_indices.len() < need {
            return Err(CorpusError::InsufficientClassExamples {
                label: labels.names[class].clone(),
                available: class_indices.len(),
                requested: need,
            });
        }
        let mut rng = SeededRng::new(derive_seed(seed, 0x6000 + class as u64));
        let picks = rng.sample_indices(class_indices.len(), need);
        for (i, pick) in picks.into_iter().enumerate() {
            sets[i / per_class].push(corpus[class_indices[pick]].clone());
        }
    }
    Ok(sets)
}

/// Stratified train/test split. Per class, the train share is the nearest
/// integer to `ratio * class_size`, so the realized ratio is within one
/// element per class of the requested one.
pub fn split(corpus: &[LabeledText], ratio: f64, seed: u64) -> Result<CorpusSplit, CorpusError> {
    if corpus.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(CorpusError::InvalidRatio { ratio });
    }
    let k = corpus.iter().map(|r| r.label.0).max().unwrap_or(0) + 1;
    let by_class = indices_by_class(corpus, k);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (class, class_indices) in by_class.iter().enumerate() {
        if class_indices.is_empty() {
            continue;
        }
        let mut shuffled = class_indices.clone();
        let mut rng = SeededRng::new(derive_seed(seed, 0x7000 + class as u64));
        rng.shuffle(&mut shuffled);
        let n_train = (ratio * class_indices.len() as f64).round() as usize;
        let n_train = n_train.min(class_indices.len());
        for (i, &idx) in shuffled.iter().enumerate() {
            if i < n_train {
                train.push(corpus[idx].clone());
            } else {
                test.push(corpus[idx].clone());
            }
        }
    }
    Ok(CorpusSplit { train, test, seed })
}

/// FNV-1a content fingerprint over ids and texts, for training provenance
/// reports.
pub fn corpus_fingerprint(corpus: &[LabeledText]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
        }
    };
    for rec in corpus {
        eat(rec.id.as_bytes());
        eat(&[0xFF]);
        eat(rec.text.as_bytes());
        eat(&rec.label.0.to_le_bytes());
    }
    hash
}
