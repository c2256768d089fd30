use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::GedError;

/// Which graphs are classified and which serve as neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalSplit {
    /// Every graph is classified by all others.
    LeaveOneOut,
    /// Graphs in `test` are classified by those in `train`; a graph never
    /// counts as its own neighbor.
    Given { train: Vec<usize>, test: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassAccuracy {
    pub class: i64,
    pub correct: usize,
    pub total: usize,
}

impl ClassAccuracy {
    pub fn accuracy(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.correct as f64 / self.total as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnnReport {
    pub k: usize,
    pub accuracy: f64,
    pub per_class: Vec<ClassAccuracy>,
    /// `(graph, predicted class)` for every classified graph.
    pub predictions: Vec<(usize, i64)>,
}

impl KnnReport {
    /// Plain-text report; accuracies use four decimal places.
    pub fn render(&self, source: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "distance_source: {source}");
        let _ = writeln!(s, "k: {}", self.k);
        let _ = writeln!(s, "classified: {}", self.predictions.len());
        let _ = writeln!(s, "accuracy: {:.4}", self.accuracy);
        for c in &self.per_class {
            let _ = writeln!(
                s,
                "class {}: {:.4} ({}/{})",
                c.class,
                c.accuracy(),
                c.correct,
                c.total
            );
        }
        s
    }
}

/// k-nearest-neighbor classification from a precomputed distance matrix.
///
/// Neighbors are ordered by distance, then by index. The prediction is the
/// most frequent class among the `k` nearest; ties go to the smaller class.
pub fn knn_classify(
    class_labels: &[i64],
    distances: &[Vec<f64>],
    k: usize,
    split: &EvalSplit,
) -> Result<KnnReport, GedError> {
    let n = class_labels.len();
    if distances.len() != n || distances.iter().any(|r| r.len() != n) {
        return Err(GedError::MatrixShape {
            expected: n,
            rows: distances.len(),
        });
    }
    let (train, test): (Vec<usize>, Vec<usize>) = match split {
        EvalSplit::LeaveOneOut => ((0..n).collect(), (0..n).collect()),
        EvalSplit::Given { train, test } => (train.clone(), test.clone()),
    };
    if let Some(&i) = train.iter().chain(&test).find(|&&i| i >= n) {
        return Err(GedError::UnknownGraph(i));
    }
    if k == 0 || k >= n {
        return Err(GedError::InvalidK { k, size: n });
    }

    let mut predictions = Vec::with_capacity(test.len());
    for &i in &test {
        let mut cand: Vec<usize> = train.iter().copied().filter(|&j| j != i).collect();
        if cand.len() < k {
            return Err(GedError::InvalidK { k, size: cand.len() });
        }
        cand.sort_by(|&a, &b| distances[i][a].total_cmp(&distances[i][b]).then(a.cmp(&b)));
        let mut votes: BTreeMap<i64, usize> = BTreeMap::new();
        for &j in &cand[..k] {
            *votes.entry(class_labels[j]).or_default() += 1;
        }
        let best = votes.values().copied().max().unwrap_or(0);
        let predicted = votes
            .iter()
            .find(|&(_, &c)| c == best)
            .map(|(&l, _)| l)
            .expect("k >= 1");
        predictions.push((i, predicted));
    }

    let mut per_class: BTreeMap<i64, ClassAccuracy> = BTreeMap::new();
    for &(i, p) in &predictions {
        let e = per_class.entry(class_labels[i]).or_insert(ClassAccuracy {
            class: class_labels[i],
            correct: 0,
            total: 0,
        });
        e.total += 1;
        e.correct += usize::from(p == class_labels[i]);
    }
    let correct: usize = per_class.values().map(|c| c.correct).sum();
    let accuracy = if predictions.is_empty() {
        0.0
    } else {
        correct as f64 / predictions.len() as f64
    };
    Ok(KnnReport {
        k,
        accuracy,
        per_class: per_class.into_values().collect(),
        predictions,
    })
}
