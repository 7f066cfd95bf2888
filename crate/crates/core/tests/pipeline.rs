//! Cross-module pipeline checks that don't belong to any single unit suite.

use llmprint_core::corpus::{per_classifier_subsets, split};
use llmprint_core::synth::{generate_labeled, seen_label_set, seen_profiles};
use llmprint_core::{accuracy, train_naive_bayes, train_nearest_centroid, NaiveBayesConfig};

/// Training-set metrics dominate held-out metrics for the memorizing
/// classifiers (naive Bayes and nearest centroid).
#[test]
fn training_set_accuracy_dominates_held_out() {
    let labels = seen_label_set();
    let corpus = generate_labeled(&seen_profiles(), &labels, 300, 2025);
    let parts = split(&corpus, 0.8, 17).unwrap();
    let subsets = per_classifier_subsets(&parts.train, &labels, 3, 200, 17, false).unwrap();

    // Trigrams with min_df 1 memorize the training subset hard, which is
    // exactly the regime where the train-vs-held-out gap shows.
    let nb = train_naive_bayes(
        &labels,
        &subsets[0],
        &NaiveBayesConfig {
            ngram: 3,
            min_df: 1,
            ..NaiveBayesConfig::default()
        },
        17,
    )
    .unwrap();
    let centroid = train_nearest_centroid(&labels, &subsets[2], 17).unwrap();

    for (model, subset, name) in [
        (&nb, &subsets[0], "naive-bayes"),
        (&centroid, &subsets[2], "nearest-centroid"),
    ] {
        let train_accuracy = accuracy(model, subset).unwrap();
        let held_out_accuracy = accuracy(model, &parts.test).unwrap();
        assert!(
            train_accuracy >= held_out_accuracy,
            "{name}: training accuracy {train_accuracy} below held-out {held_out_accuracy}"
        );
        // Both should still generalize decently on this corpus.
        assert!(held_out_accuracy > 0.5, "{name}: held-out {held_out_accuracy}");
    }
}

/// Three copies of the same model can never disagree, so unanimous voting
/// over them never abstains; and no input yields no decisions.
#[test]
fn identical_voters_always_agree() {
    use llmprint_core::corpus::Document;
    use llmprint_core::ensemble::{attribute_corpus, Outcome, Strategy};

    let labels = seen_label_set();
    let corpus = generate_labeled(&seen_profiles(), &labels, 50, 31);
    let model = train_naive_bayes(
        &labels,
        &corpus,
        &NaiveBayesConfig {
            ngram: 2,
            min_df: 1,
            ..NaiveBayesConfig::default()
        },
        31,
    )
    .unwrap();
    let trio = [&model, &model, &model];

    assert!(attribute_corpus(&trio, &[], Strategy::Unanimous)
        .unwrap()
        .is_empty());

    let docs: Vec<Document> = corpus
        .iter()
        .take(200)
        .map(|r| Document {
            id: r.id.clone(),
            text: r.text.clone(),
        })
        .collect();
    let decisions = attribute_corpus(&trio, &docs, Strategy::Unanimous).unwrap();
    assert_eq!(decisions.len(), docs.len());
    assert!(decisions
        .iter()
        .all(|d| matches!(d.outcome, Outcome::Label(_))));
}

/// Rerunning the whole pipeline with the same seeds reproduces predictions
/// exactly.
#[test]
fn pipeline_rerun_is_reproducible() {
    let run = || {
        let labels = seen_label_set();
        let corpus = generate_labeled(&seen_profiles(), &labels, 100, 4);
        let parts = split(&corpus, 0.8, 9).unwrap();
        let subsets = per_classifier_subsets(&parts.train, &labels, 3, 60, 9, false).unwrap();
        let model = train_naive_bayes(
            &labels,
            &subsets[0],
            &NaiveBayesConfig {
                ngram: 2,
                min_df: 1,
                ..NaiveBayesConfig::default()
            },
            9,
        )
        .unwrap();
        parts
            .test
            .iter()
            .map(|r| model.predict(&r.text).unwrap().scores)
            .collect::<Vec<_>>()
    };
    let first = run();
    let second = run();
    for (a, b) in first.iter().zip(&second) {
        for (x, y) in a.iter().zip(b) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
