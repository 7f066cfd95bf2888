//! Nearest-centroid classification by cosine similarity over the
//! stylometric view.

use std::collections::BTreeMap;

use crate::corpus::{LabelSet, LabeledText};
use crate::features::{stylometric_raw, Standardizer, ViewId};

use super::{class_counts, ClassifierError, ClassifierKind, ClassifierModel, ModelParams, TrainingMeta};

fn l2_normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v {
            *x /= norm;
        }
    }
}

/// Per-class means of `rows`, each L2-normalized (all-zero means stay zero).
/// Returns a row-major `k x d` matrix.
pub(crate) fn centroids_from_rows(rows: &[Vec<f64>], classes: &[usize], k: usize) -> Vec<f64> {
    assert_eq!(rows.len(), classes.len());
    let d = rows.first().map(Vec::len).unwrap_or(0);
    let mut centroids = vec![0.0; k * d];
    let mut counts = vec![0usize; k];
    for (row, &c) in rows.iter().zip(classes) {
        counts[c] += 1;
        for (j, x) in row.iter().enumerate() {
            centroids[c * d + j] += x;
        }
    }
    for c in 0..k {
        if counts[c] > 0 {
            let slice = &mut centroids[c * d..(c + 1) * d];
            for x in slice.iter_mut() {
                *x /= counts[c] as f64;
            }
            l2_normalize(slice);
        }
    }
    centroids
}

/// Cosine similarity of `point` against each of `k` unit centroids.
/// The point is L2-normalized internally; a zero point scores 0 everywhere.
pub fn cosine_scores(centroids: &[f64], k: usize, point: &[f64]) -> Vec<f64> {
    let d = point.len();
    assert_eq!(centroids.len(), k * d);
    let mut unit = point.to_vec();
    l2_normalize(&mut unit);
    (0..k)
        .map(|c| {
            centroids[c * d..(c + 1) * d]
                .iter()
                .zip(&unit)
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect()
}

/// Train a nearest-centroid model: standardize stylometric vectors with
/// training statistics, average per class, and normalize the centroids.
pub fn train_nearest_centroid(
    labels: &LabelSet,
    train: &[LabeledText],
    seed: u64,
) -> Result<ClassifierModel, ClassifierError> {
    let counts_per_class = class_counts(labels, train)?;
    let k = labels.len();

    let rows: Vec<Vec<f64>> = train
        .iter()
        .map(|r| stylometric_raw(&r.text))
        .collect::<Result<_, _>>()?;
    let standardizer = Standardizer::fit(&rows)?;
    let standardized: Vec<Vec<f64>> = rows.iter().map(|r| standardizer.apply(r)).collect();
    let classes: Vec<usize> = train.iter().map(|r| r.label.index()).collect();
    let centroids = centroids_from_rows(&standardized, &classes, k);

    Ok(ClassifierModel {
        kind: ClassifierKind::NearestCentroid,
        labels: labels.clone(),
        view: ViewId::Stylometric,
        vocab: None,
        standardizer: Some(standardizer),
        params: ModelParams::NearestCentroid { centroids },
        meta: TrainingMeta {
            seed,
            per_class: counts_per_class.iter().copied().min().unwrap_or(0),
            hyperparameters: BTreeMap::new(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::labeled;
    use super::*;
    use crate::corpus::LabelSet;
    use crate::rng::SeededRng;

    #[test]
    fn centroids_have_unit_norm_or_are_zero() {
        let rows = vec![vec![1.0, 1.0], vec![3.0, -1.0], vec![0.0, 0.0]];
        let classes = vec![0, 0, 1];
        let centroids = centroids_from_rows(&rows, &classes, 3);
        let norm0 = (centroids[0].powi(2) + centroids[1].powi(2)).sqrt();
        assert!((norm0 - 1.0).abs() < 1e-12);
        // Class 1 mean is the zero vector; it must stay zero.
        assert_eq!(&centroids[2..4], &[0.0, 0.0]);
        // Class 2 has no members at all.
        assert_eq!(&centroids[4..6], &[0.0, 0.0]);
    }

    #[test]
    fn one_text_per_class_classifies_itself() {
        let labels = LabelSet::new(vec!["A", "B"]).unwrap();
        let train = labeled(
            &labels,
            &[
                ("Short, clipped sentences. Really short. Like this!", "A"),
                (
                    "A single meandering sentence that keeps going with many words and no urgency whatsoever",
                    "B",
                ),
            ],
        );
        let model = train_nearest_centroid(&labels, &train, 0).unwrap();
        for rec in &train {
            let pred = model.predict(&rec.text).unwrap();
            assert_eq!(pred.label, rec.label);
            // With one point per class the point is its own centroid.
            assert!((pred.scores[rec.label.index()] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn identical_classes_tie_break_to_first_label() {
        let labels = LabelSet::new(vec!["First", "Second"]).unwrap();
        let text = "The very same text for every class.";
        let train = labeled(&labels, &[(text, "First"), (text, "Second")]);
        let model = train_nearest_centroid(&labels, &train, 0).unwrap();
        let pred = model.predict(text).unwrap();
        assert_eq!(labels.name(pred.label), "First");
        assert_eq!(pred.scores[0], pred.scores[1]);
    }

    #[test]
    fn well_separated_gaussian_clusters_classify_cleanly() {
        // Two spherical clusters 5 sigma apart: held-out accuracy > 0.99.
        let dim = 2;
        let mut rng = SeededRng::new(99);
        let center = |c: usize, j: usize| if c == 1 && j == 0 { 5.0 } else { 0.0 };
        let draw = |rng: &mut SeededRng, c: usize| -> Vec<f64> {
            (0..dim).map(|j| rng.normal(center(c, j), 1.0)).collect()
        };
        let mut train_rows = Vec::new();
        let mut train_classes = Vec::new();
        for c in 0..2 {
            for _ in 0..100 {
                train_rows.push(draw(&mut rng, c));
                train_classes.push(c);
            }
        }
        let standardizer = Standardizer::fit(&train_rows).unwrap();
        let standardized: Vec<Vec<f64>> = train_rows.iter().map(|r| standardizer.apply(r)).collect();
        let centroids = centroids_from_rows(&standardized, &train_classes, 2);

        // 5 sigma between centers puts the decision boundary 2.5 sigma from
        // each, a ~0.6% error rate; a large held-out set keeps the observed
        // accuracy close to that.
        let mut correct = 0;
        let total = 5_000;
        for c in 0..2 {
            for _ in 0..total / 2 {
                let point = standardizer.apply(&draw(&mut rng, c));
                let scores = cosine_scores(&centroids, 2, &point);
                if super::super::argmax_first(&scores) == c {
                    correct += 1;
                }
            }
        }
        let acc = correct as f64 / total as f64;
        assert!(acc > 0.99, "held-out accuracy {acc}");
    }
}
