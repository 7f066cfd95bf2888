//! Acceptance suite. Each test covers one release criterion at its stated
//! tolerance and prints a single PASS line (run with `-- --nocapture` to see
//! the lines for passing tests).
//!
//! 1. Reference-table reproduction: reference confusion matrices for three
//!    individual classifiers and the majority ensemble reproduce every
//!    recorded precision/recall/F-beta and both macro values to 4 decimals.
//! 2. Exclusion semantics: the unanimous-ensemble table with its
//!    no-agreement column reproduces the starred macro metrics and the
//!    1.06% abstention rate.
//! 3. Vote-error formulas: analytic majority/unanimous error at
//!    (p=0.1, L=3) equal 0.028 and 0.001, and a million-trial simulation at
//!    rho=0 lands within 3 binomial standard errors of both.
//! 4. Desk-scale end-to-end: three classifiers trained on a 4-family
//!    synthetic corpus each beat 0.5 held-out error, and macro FPR obeys
//!    unanimous <= majority <= best individual under exclusion semantics.
//! 5. Unseen-generator separation: a fifth held-out generator draws at least
//!    3x the no-agreement fraction of the seen families' test texts.
//! 6. Invariant suites: gradient check, probability normalization, the
//!    unanimous-implies-majority subset law on 10,000 random vote triples,
//!    model round-trip bit-equality, and deterministic retraining.

use std::sync::OnceLock;
use std::time::Instant;

use llmprint_core::classifiers::{
    load_model, loss_and_gradient, save_model, train_naive_bayes, train_nearest_centroid,
    train_softmax_regression, ClassifierModel, NaiveBayesConfig, ScoredPrediction, SoftmaxConfig,
};
use llmprint_core::corpus::{per_classifier_subsets, split, Document, FamilyLabel, LabelSet, LabeledText};
use llmprint_core::ensemble::{attribute_corpus, majority_vote, unanimous_vote, Outcome, Strategy};
use llmprint_core::features::{FeatureVector, ViewId};
use llmprint_core::metrics::{
    build_confusion, build_confusion_from_predictions, report, scan_unseen, ConfusionMatrix,
};
use llmprint_core::rng::SeededRng;
use llmprint_core::synth::{
    generate_documents, generate_labeled, seen_label_set, seen_profiles, unseen_profile,
};
use llmprint_core::votelab::{
    binomial_standard_error, majority_error_analytic, simulate_votes, unanimous_error_analytic,
    VoteModel,
};

const TOLERANCE: f64 = 5e-5;
const BETA: f64 = 0.5;

// ---------------------------------------------------------------------------
// Reference fixtures: confusion matrices with their recorded per-class
// (precision, recall, F-beta(0.5)) rows and macro values.
// ---------------------------------------------------------------------------

struct ReferenceTable {
    name: &'static str,
    counts: [[u64; 4]; 4],
    no_agreement: Option<[u64; 4]>,
    recorded_rows: [[f64; 3]; 4],
    recorded_macro_f: f64,
    recorded_macro_fpr: f64,
}

const TABLE_CLASSIFIER_I: ReferenceTable = ReferenceTable {
    name: "classifier-I",
    counts: [
        [49083, 24, 570, 323],
        [36, 49406, 224, 334],
        [22, 22, 49687, 269],
        [127, 116, 1033, 48724],
    ],
    no_agreement: None,
    recorded_rows: [
        [0.9962, 0.9817, 0.9933],
        [0.9967, 0.9881, 0.9950],
        [0.9645, 0.9937, 0.9702],
        [0.9813, 0.9745, 0.9800],
    ],
    recorded_macro_f: 0.9846,
    recorded_macro_fpr: 0.0052,
};

const TABLE_CLASSIFIER_II: ReferenceTable = ReferenceTable {
    name: "classifier-II",
    counts: [
        [49704, 10, 112, 174],
        [21, 49665, 92, 222],
        [7, 18, 49784, 191],
        [67, 55, 325, 49553],
    ],
    no_agreement: None,
    recorded_rows: [
        [0.9981, 0.9941, 0.9973],
        [0.9983, 0.9933, 0.9973],
        [0.9895, 0.9957, 0.9907],
        [0.9883, 0.9911, 0.9888],
    ],
    recorded_macro_f: 0.9935,
    recorded_macro_fpr: 0.0022,
};

const TABLE_CLASSIFIER_III: ReferenceTable = ReferenceTable {
    name: "classifier-III",
    counts: [
        [49326, 21, 306, 347],
        [71, 48723, 550, 656],
        [52, 37, 49450, 461],
        [173, 108, 1919, 47800],
    ],
    no_agreement: None,
    recorded_rows: [
        [0.9940, 0.9865, 0.9925],
        [0.9966, 0.9745, 0.9921],
        [0.9469, 0.9890, 0.9550],
        [0.9703, 0.9560, 0.9674],
    ],
    recorded_macro_f: 0.9768,
    recorded_macro_fpr: 0.0078,
};

const TABLE_MAJORITY: ReferenceTable = ReferenceTable {
    name: "majority-ensemble",
    counts: [
        [49749, 8, 89, 154],
        [18, 49706, 88, 188],
        [5, 16, 49854, 125],
        [62, 51, 276, 49611],
    ],
    no_agreement: None,
    recorded_rows: [
        [0.9983, 0.9950, 0.9976],
        [0.9985, 0.9941, 0.9976],
        [0.9910, 0.9971, 0.9922],
        [0.9907, 0.9922, 0.9910],
    ],
    recorded_macro_f: 0.9946,
    recorded_macro_fpr: 0.0018,
};

const TABLE_UNANIMOUS: ReferenceTable = ReferenceTable {
    name: "unanimous-ensemble",
    counts: [
        [49428, 3, 26, 26],
        [9, 49360, 21, 29],
        [19, 8, 49583, 23],
        [17, 19, 34, 49282],
    ],
    no_agreement: Some([517, 581, 367, 648]),
    recorded_rows: [
        [0.9991, 0.9989, 0.9991],
        [0.9994, 0.9988, 0.9993],
        [0.9984, 0.9990, 0.9985],
        [0.9984, 0.9986, 0.9985],
    ],
    recorded_macro_f: 0.9988,
    recorded_macro_fpr: 0.0004,
};

fn matrix_of(table: &ReferenceTable) -> ConfusionMatrix {
    ConfusionMatrix::from_counts(
        LabelSet::default_families(),
        table.counts.iter().map(|r| r.to_vec()).collect(),
        table.no_agreement.map(|v| v.to_vec()),
    )
    .expect("reference table shape")
}

fn check_table(table: &ReferenceTable, exclusion_mode: bool) {
    let cm = matrix_of(table);
    let rep = report(&cm, BETA, exclusion_mode).expect("report");
    for (i, recorded) in table.recorded_rows.iter().enumerate() {
        let class = &rep.per_class[i];
        let [p, r, f] = recorded;
        assert!(
            (class.precision - p).abs() < TOLERANCE,
            "{} class {i}: precision {} vs recorded {p}",
            table.name,
            class.precision
        );
        assert!(
            (class.recall - r).abs() < TOLERANCE,
            "{} class {i}: recall {} vs recorded {r}",
            table.name,
            class.recall
        );
        assert!(
            (class.f_beta - f).abs() < TOLERANCE,
            "{} class {i}: f_beta {} vs recorded {f}",
            table.name,
            class.f_beta
        );
    }
    assert!(
        (rep.macro_f_beta - table.recorded_macro_f).abs() < TOLERANCE,
        "{}: macro F {} vs recorded {}",
        table.name,
        rep.macro_f_beta,
        table.recorded_macro_f
    );
    assert!(
        (rep.macro_fpr - table.recorded_macro_fpr).abs() < TOLERANCE,
        "{}: macro FPR {} vs recorded {}",
        table.name,
        rep.macro_fpr,
        table.recorded_macro_fpr
    );
}

#[test]
fn acceptance_1_reference_table_reproduction() {
    let started = Instant::now();
    for table in [
        &TABLE_CLASSIFIER_I,
        &TABLE_CLASSIFIER_II,
        &TABLE_CLASSIFIER_III,
        &TABLE_MAJORITY,
    ] {
        check_table(table, false);
    }
    // Spot targets.
    let t1 = report(&matrix_of(&TABLE_CLASSIFIER_I), BETA, false).unwrap();
    assert!((t1.macro_fpr - 0.0052).abs() < TOLERANCE);
    let t2 = report(&matrix_of(&TABLE_CLASSIFIER_II), BETA, false).unwrap();
    assert!((t2.macro_f_beta - 0.9935).abs() < TOLERANCE);
    let t4 = report(&matrix_of(&TABLE_MAJORITY), BETA, false).unwrap();
    assert!((t4.macro_fpr - 0.0018).abs() < TOLERANCE);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "criterion 1 took {elapsed:?}");
    println!("ACCEPTANCE 1 reference-table reproduction: PASS ({elapsed:?})");
}

#[test]
fn acceptance_2_exclusion_semantics() {
    let started = Instant::now();
    check_table(&TABLE_UNANIMOUS, true);
    let cm = matrix_of(&TABLE_UNANIMOUS);
    let rep = report(&cm, BETA, true).unwrap();
    assert!((rep.macro_f_beta - 0.9988).abs() < TOLERANCE);
    assert!((rep.macro_fpr - 0.0004).abs() < TOLERANCE);
    let rate = rep.no_agreement_rate.expect("abstention data");
    assert!((rate - 2113.0 / 200000.0).abs() < 1e-15);
    assert!((rate - 0.0106).abs() < TOLERANCE);
    assert_eq!(rep.no_agreement_total, Some(2113));
    assert_eq!(rep.total, 200_000);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "criterion 2 took {elapsed:?}");
    println!("ACCEPTANCE 2 exclusion semantics: PASS ({elapsed:?})");
}

#[test]
fn acceptance_3_vote_error_formulas() {
    let started = Instant::now();
    let majority = majority_error_analytic(0.1, 3).unwrap();
    let unanimous = unanimous_error_analytic(0.1, 3).unwrap();
    assert!((majority - 0.028).abs() < 1e-12, "majority {majority}");
    assert!((unanimous - 0.001).abs() < 1e-12, "unanimous {unanimous}");

    let trials = 1_000_000;
    let sim = simulate_votes(&VoteModel {
        ensemble_size: 3,
        error_rate: 0.1,
        correlation: 0.0,
        trials,
        seed: 2024,
    })
    .unwrap();
    let maj_band = 3.0 * binomial_standard_error(majority, trials);
    let una_band = 3.0 * binomial_standard_error(unanimous, trials);
    assert!(
        (sim.majority_error_rate - majority).abs() < maj_band,
        "simulated majority {} vs analytic {majority} (band {maj_band})",
        sim.majority_error_rate
    );
    assert!(
        (sim.unanimous_error_rate - unanimous).abs() < una_band,
        "simulated unanimous {} vs analytic {unanimous} (band {una_band})",
        sim.unanimous_error_rate
    );
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "criterion 3 took {elapsed:?}");
    println!("ACCEPTANCE 3 vote-error formulas: PASS ({elapsed:?})");
}

// ---------------------------------------------------------------------------
// Shared end-to-end stack for criteria 4 and 5.
// ---------------------------------------------------------------------------

const CORPUS_SEED: u64 = 12345;
const PIPELINE_SEED: u64 = 77;
const PER_FAMILY: usize = 2_000;
const SUBSET_PER_CLASS: usize = 800;

struct Stack {
    labels: LabelSet,
    models: Vec<ClassifierModel>,
    test: Vec<LabeledText>,
    seen_no_agreement: f64,
    unanimous_macro_fpr: f64,
    majority_macro_fpr: f64,
    best_individual_macro_fpr: f64,
    individual_errors: Vec<f64>,
    unanimous_fp: Vec<u64>,
    majority_fp: Vec<u64>,
}

fn nb_experiment_config() -> NaiveBayesConfig {
    NaiveBayesConfig {
        alpha: 1.0,
        ngram: 2,
        min_df: 2,
    }
}

fn softmax_experiment_config() -> SoftmaxConfig {
    SoftmaxConfig {
        learning_rate: 1.0,
        epochs: 800,
        l2: 1e-5,
        min_df: 2,
    }
}

fn stack() -> &'static Stack {
    static STACK: OnceLock<Stack> = OnceLock::new();
    STACK.get_or_init(|| {
        let labels = seen_label_set();
        let corpus = generate_labeled(&seen_profiles(), &labels, PER_FAMILY, CORPUS_SEED);
        let split = split(&corpus, 0.8, PIPELINE_SEED).unwrap();
        let subsets =
            per_classifier_subsets(&split.train, &labels, 3, SUBSET_PER_CLASS, PIPELINE_SEED, false)
                .unwrap();
        let models = vec![
            train_naive_bayes(&labels, &subsets[0], &nb_experiment_config(), PIPELINE_SEED)
                .unwrap(),
            train_softmax_regression(
                &labels,
                &subsets[1],
                &softmax_experiment_config(),
                PIPELINE_SEED,
            )
            .unwrap(),
            train_nearest_centroid(&labels, &subsets[2], PIPELINE_SEED).unwrap(),
        ];

        let test = split.test;
        let truths: Vec<FamilyLabel> = test.iter().map(|r| r.label).collect();
        let docs: Vec<Document> = test
            .iter()
            .map(|r| Document {
                id: r.id.clone(),
                text: r.text.clone(),
            })
            .collect();

        let mut individual_errors = Vec::new();
        let mut best_individual_macro_fpr = f64::INFINITY;
        for model in &models {
            let preds: Vec<FamilyLabel> = test
                .iter()
                .map(|r| model.predict(&r.text).unwrap().label)
                .collect();
            let errors = preds
                .iter()
                .zip(&truths)
                .filter(|(p, t)| p != t)
                .count() as f64
                / test.len() as f64;
            individual_errors.push(errors);
            let cm = build_confusion_from_predictions(&labels, &truths, &preds).unwrap();
            let rep = report(&cm, BETA, true).unwrap();
            best_individual_macro_fpr = best_individual_macro_fpr.min(rep.macro_fpr);
        }

        let model_refs: Vec<&ClassifierModel> = models.iter().collect();
        let majority = attribute_corpus(&model_refs, &docs, Strategy::Majority).unwrap();
        let cm_majority = build_confusion(&labels, &truths, &majority).unwrap();
        let rep_majority = report(&cm_majority, BETA, true).unwrap();

        let unanimous = attribute_corpus(&model_refs, &docs, Strategy::Unanimous).unwrap();
        let cm_unanimous = build_confusion(&labels, &truths, &unanimous).unwrap();
        let rep_unanimous = report(&cm_unanimous, BETA, true).unwrap();

        let fp_counts = |cm: &ConfusionMatrix| -> Vec<u64> {
            (0..labels.len())
                .map(|i| cm.col_sum(i) - cm.count(i, i))
                .collect()
        };

        Stack {
            seen_no_agreement: rep_unanimous.no_agreement_rate.unwrap(),
            unanimous_macro_fpr: rep_unanimous.macro_fpr,
            majority_macro_fpr: rep_majority.macro_fpr,
            best_individual_macro_fpr,
            individual_errors,
            unanimous_fp: fp_counts(&cm_unanimous),
            majority_fp: fp_counts(&cm_majority),
            labels,
            models,
            test,
        }
    })
}

#[test]
fn acceptance_4_end_to_end_fpr_ordering() {
    let started = Instant::now();
    let stack = stack();
    for (error, name) in stack
        .individual_errors
        .iter()
        .zip(["naive-bayes", "softmax", "nearest-centroid"])
    {
        assert!(
            *error < 0.5,
            "{name} held-out error {error} breaks the ensembling precondition"
        );
    }
    assert!(
        stack.unanimous_macro_fpr <= stack.majority_macro_fpr,
        "unanimous {} > majority {}",
        stack.unanimous_macro_fpr,
        stack.majority_macro_fpr
    );
    assert!(
        stack.majority_macro_fpr <= stack.best_individual_macro_fpr,
        "majority {} > best individual {}",
        stack.majority_macro_fpr,
        stack.best_individual_macro_fpr
    );
    // Per-class false-positive counts obey the subset law on real decisions.
    for (u, m) in stack.unanimous_fp.iter().zip(&stack.majority_fp) {
        assert!(u <= m, "unanimous FP {u} > majority FP {m}");
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "criterion 4 took {elapsed:?}");
    println!(
        "ACCEPTANCE 4 end-to-end ordering: PASS ({elapsed:?}; errors {:?}, FPR unanimous {:.5} <= majority {:.5} <= best {:.5})",
        stack
            .individual_errors
            .iter()
            .map(|e| (e * 1e4).round() / 1e4)
            .collect::<Vec<_>>(),
        stack.unanimous_macro_fpr,
        stack.majority_macro_fpr,
        stack.best_individual_macro_fpr
    );
}

#[test]
fn acceptance_5_unseen_generator_separation() {
    let started = Instant::now();
    let stack = stack();
    let unseen_docs = generate_documents(&unseen_profile(), 2_000, 999);
    let model_refs: Vec<&ClassifierModel> = stack.models.iter().collect();
    let scan = scan_unseen(&model_refs, &unseen_docs, Strategy::Unanimous).unwrap();

    let total: f64 = scan.fractions.iter().sum::<f64>() + scan.no_agreement_fraction;
    assert!((total - 1.0).abs() < 1e-12, "fractions sum to {total}");

    let seen = stack.seen_no_agreement;
    let unseen = scan.no_agreement_fraction;
    assert!(unseen > 0.0);
    assert!(
        unseen >= 3.0 * seen,
        "unseen no-agreement {unseen} < 3x seen {seen}"
    );
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "criterion 5 took {elapsed:?}");
    println!(
        "ACCEPTANCE 5 unseen separation: PASS ({elapsed:?}; unseen {unseen:.4} vs seen {seen:.4}, factor {:.1})",
        unseen / seen.max(f64::MIN_POSITIVE)
    );
}

// ---------------------------------------------------------------------------
// Criterion 6: invariant suites.
// ---------------------------------------------------------------------------

fn gradient_check() {
    let k = 3;
    let d = 10;
    let mut rng = SeededRng::new(4242);
    let rows: Vec<FeatureVector> = (0..15)
        .map(|_| FeatureVector {
            view: ViewId::WordTfidf,
            entries: (0..d as u32)
                .filter_map(|j| {
                    let w = rng.next_f64() * 2.0 - 1.0;
                    (w.abs() > 0.25).then_some((j, w))
                })
                .collect(),
        })
        .collect();
    let targets: Vec<usize> = (0..15).map(|_| rng.below(k as u64) as usize).collect();
    let weights: Vec<f64> = (0..k * d).map(|_| rng.next_f64() - 0.5).collect();
    let bias: Vec<f64> = (0..k).map(|_| rng.next_f64() - 0.5).collect();
    let l2 = 0.05;

    let (_, grad_w, grad_b) = loss_and_gradient(&rows, &targets, k, d, &weights, &bias, l2);
    let loss_at = |w: &[f64], b: &[f64]| loss_and_gradient(&rows, &targets, k, d, w, b, l2).0;

    let h = 1e-6;
    let mut numeric = Vec::with_capacity(k * d + k);
    let mut analytic = Vec::with_capacity(k * d + k);
    for i in 0..k * d {
        let mut plus = weights.clone();
        let mut minus = weights.clone();
        plus[i] += h;
        minus[i] -= h;
        numeric.push((loss_at(&plus, &bias) - loss_at(&minus, &bias)) / (2.0 * h));
        analytic.push(grad_w[i]);
    }
    for i in 0..k {
        let mut plus = bias.clone();
        let mut minus = bias.clone();
        plus[i] += h;
        minus[i] -= h;
        numeric.push((loss_at(&weights, &plus) - loss_at(&weights, &minus)) / (2.0 * h));
        analytic.push(grad_b[i]);
    }
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let diff: Vec<f64> = analytic.iter().zip(&numeric).map(|(a, b)| a - b).collect();
    let rel = norm(&diff) / norm(&numeric).max(1e-12);
    assert!(rel < 1e-5, "gradient relative error {rel}");
}

fn probability_normalization(stack: &Stack) {
    // Naive Bayes and softmax emit probability vectors; they must sum to 1
    // within 1e-9 on arbitrary inputs.
    let probes = [
        "The tide turned early, and the harbor light wheeled grey.",
        "Torque the bolt. Check the gauge! 42 turns.",
        "An owl in the thicket; a fox under the bracken?",
        "Permit 7 filed at the registry office; rent due.",
        "completely out of domain wording with zeal and aplomb",
    ];
    for model in &stack.models[..2] {
        for probe in &probes {
            let pred = model.predict(probe).unwrap();
            let total: f64 = pred.scores.iter().sum();
            assert!(
                (total - 1.0).abs() < 1e-9,
                "scores sum to {total} for {probe:?}"
            );
        }
    }
}

fn subset_law_on_random_votes() {
    let mut rng = SeededRng::new(31337);
    let k = 4;
    for _ in 0..10_000 {
        let votes: Vec<ScoredPrediction> = (0..3)
            .map(|_| {
                let scores: Vec<f64> = (0..k).map(|_| rng.next_f64()).collect();
                let label = scores
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                    .map(|(i, _)| i)
                    .unwrap();
                ScoredPrediction {
                    label: seen_label_set().label(label).unwrap(),
                    scores,
                }
            })
            .collect();
        let unanimous = unanimous_vote(&votes).unwrap();
        let majority = majority_vote(&votes).unwrap();
        if let Outcome::Label(l) = unanimous.outcome {
            assert_eq!(
                majority.outcome,
                Outcome::Label(l),
                "subset law violated for votes {votes:?}"
            );
        }
        assert!(matches!(majority.outcome, Outcome::Label(_)));
    }
}

fn round_trip_and_determinism(stack: &Stack) {
    let dir = std::env::temp_dir().join(format!("llmprint-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let probes: Vec<&str> = stack.test.iter().take(100).map(|r| r.text.as_str()).collect();
    for (i, model) in stack.models.iter().enumerate() {
        let path = dir.join(format!("model-{i}.llmp"));
        save_model(model, &path).unwrap();
        let loaded = load_model(&path).unwrap();
        for probe in &probes {
            let a = model.predict(probe).unwrap();
            let b = loaded.predict(probe).unwrap();
            assert_eq!(a.label, b.label);
            for (x, y) in a.scores.iter().zip(&b.scores) {
                assert_eq!(x.to_bits(), y.to_bits(), "score bits differ after reload");
            }
        }
    }

    // Retraining with identical seeds writes byte-identical model files.
    let labels = &stack.labels;
    let sample: Vec<LabeledText> =
        llmprint_core::corpus::balanced_sample(&stack.test, labels, 100, 5).unwrap();
    let train = |seed: u64| {
        train_naive_bayes(
            labels,
            &sample,
            &NaiveBayesConfig {
                min_df: 1,
                ..nb_experiment_config()
            },
            seed,
        )
        .unwrap()
    };
    let path_a = dir.join("retrain-a.llmp");
    let path_b = dir.join("retrain-b.llmp");
    save_model(&train(5), &path_a).unwrap();
    save_model(&train(5), &path_b).unwrap();
    let bytes_a = std::fs::read(&path_a).unwrap();
    let bytes_b = std::fs::read(&path_b).unwrap();
    assert_eq!(bytes_a, bytes_b, "same-seed retrain differs");

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn acceptance_6_invariant_suites() {
    let started = Instant::now();
    gradient_check();
    let stack = stack();
    probability_normalization(stack);
    subset_law_on_random_votes();
    round_trip_and_determinism(stack);
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "criterion 6 took {elapsed:?}");
    println!("ACCEPTANCE 6 invariant suites: PASS ({elapsed:?})");
}
