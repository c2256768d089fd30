//! Weighted Lloyd k-means over distinct points.
//!
//! Points are expected to be pairwise distinct (callers deduplicate and pass
//! multiplicities as weights). With at least two distinct points the result
//! always has at least two non-empty clusters.

use rand::Rng;

use crate::scalar::Scalar;

/// Centroid initialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Seeding {
    /// Greedy max-min: the lexicographically smallest point first, then
    /// repeatedly the point farthest from all chosen seeds. Does not use the
    /// random generator.
    #[default]
    FarthestPoint,
    /// k-means++ sampling, weighted by multiplicity and squared distance.
    PlusPlus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringParams<T> {
    /// Maximum number of clusters per split color; at least 2.
    pub k: usize,
    pub rng_seed: u64,
    pub max_kmeans_iters: usize,
    /// Stop once no centroid moves farther than this.
    pub convergence_tol: T,
    pub seeding: Seeding,
}

impl<T: Scalar> ClusteringParams<T> {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            rng_seed: 0,
            max_kmeans_iters: 100,
            convergence_tol: T::zero(),
            seeding: Seeding::FarthestPoint,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn with_seeding(mut self, seeding: Seeding) -> Self {
        self.seeding = seeding;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering<T> {
    /// Cluster of each point. Clusters are numbered by their smallest point
    /// index, all are non-empty.
    pub assignment: Vec<usize>,
    pub centroids: Vec<Vec<T>>,
}

impl<T> Clustering<T> {
    pub fn cluster_count(&self) -> usize {
        self.centroids.len()
    }
}

pub fn squared_distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .fold(T::zero(), |s, d| s + d)
}

fn nearest<T: Scalar>(point: &[T], centroids: &[Vec<T>]) -> usize {
    let mut best = 0;
    let mut best_d = T::infinity();
    for (j, c) in centroids.iter().enumerate() {
        let d = squared_distance(point, c);
        // strict comparison: ties go to the lowest index
        if d < best_d {
            best = j;
            best_d = d;
        }
    }
    best
}

fn lexicographic_min<T: Scalar>(points: &[Vec<T>]) -> usize {
    let mut best = 0;
    for i in 1..points.len() {
        if points[i]
            .partial_cmp(&points[best])
            .is_some_and(|o| o.is_lt())
        {
            best = i;
        }
    }
    best
}

fn seed<T: Scalar, R: Rng>(
    points: &[Vec<T>],
    weights: &[T],
    k: usize,
    seeding: Seeding,
    rng: &mut R,
) -> Vec<Vec<T>> {
    let first = match seeding {
        Seeding::FarthestPoint => lexicographic_min(points),
        Seeding::PlusPlus => sample_weighted(weights, rng).unwrap_or(0),
    };
    let mut chosen = vec![first];
    let mut min_d: Vec<T> = points
        .iter()
        .map(|p| squared_distance(p, &points[first]))
        .collect();
    while chosen.len() < k {
        let next = match seeding {
            Seeding::FarthestPoint => {
                let mut best = 0;
                for i in 1..points.len() {
                    if min_d[i] > min_d[best] {
                        best = i;
                    }
                }
                best
            }
            Seeding::PlusPlus => {
                let scores: Vec<T> = min_d.iter().zip(weights).map(|(&d, &w)| d * w).collect();
                match sample_weighted(&scores, rng) {
                    Some(i) => i,
                    None => break,
                }
            }
        };
        if min_d[next] <= T::zero() {
            break;
        }
        chosen.push(next);
        for (i, p) in points.iter().enumerate() {
            let d = squared_distance(p, &points[next]);
            if d < min_d[i] {
                min_d[i] = d;
            }
        }
    }
    chosen.into_iter().map(|i| points[i].clone()).collect()
}

fn sample_weighted<T: Scalar, R: Rng>(scores: &[T], rng: &mut R) -> Option<usize> {
    let total: f64 = scores.iter().map(|s| s.to_f64_lossy()).sum();
    if total <= 0.0 || !total.is_finite() {
        return None;
    }
    let mut target = rng.gen::<f64>() * total;
    let mut last_positive = None;
    for (i, s) in scores.iter().enumerate() {
        let s = s.to_f64_lossy();
        if s > 0.0 {
            last_positive = Some(i);
            if target < s {
                return Some(i);
            }
            target -= s;
        }
    }
    last_positive
}

fn weighted_means<T: Scalar>(
    points: &[Vec<T>],
    weights: &[T],
    assignment: &[usize],
    k: usize,
) -> (Vec<Vec<T>>, Vec<T>) {
    let dim = points.first().map_or(0, Vec::len);
    let mut sums = vec![vec![T::zero(); dim]; k];
    let mut mass = vec![T::zero(); k];
    for ((p, &w), &a) in points.iter().zip(weights).zip(assignment) {
        mass[a] = mass[a] + w;
        for (s, &x) in sums[a].iter_mut().zip(p) {
            *s = *s + w * x;
        }
    }
    for (s, &m) in sums.iter_mut().zip(&mass) {
        if m > T::zero() {
            s.iter_mut().for_each(|x| *x = *x / m);
        }
    }
    (sums, mass)
}

/// Clusters distinct `points` (with positive `weights`) into at most `k`
/// clusters.
pub fn weighted_kmeans<T: Scalar, R: Rng>(
    points: &[Vec<T>],
    weights: &[T],
    params: &ClusteringParams<T>,
    rng: &mut R,
) -> Clustering<T> {
    assert_eq!(points.len(), weights.len());
    let n = points.len();
    let k = params.k.max(1);
    if n <= k {
        return Clustering {
            assignment: (0..n).collect(),
            centroids: points.to_vec(),
        };
    }

    let mut centroids = seed(points, weights, k, params.seeding, rng);
    let k = centroids.len();
    let mut assignment: Vec<usize> = points.iter().map(|p| nearest(p, &centroids)).collect();
    for _ in 0..params.max_kmeans_iters {
        repair_empty(points, weights, &mut assignment, &mut centroids);
        let (means, _) = weighted_means(points, weights, &assignment, k);
        let shift = centroids
            .iter()
            .zip(&means)
            .map(|(a, b)| squared_distance(a, b).sqrt())
            .fold(T::zero(), T::max);
        centroids = means;
        let next: Vec<usize> = points.iter().map(|p| nearest(p, &centroids)).collect();
        let unchanged = next == assignment;
        assignment = next;
        if unchanged || shift <= params.convergence_tol {
            break;
        }
    }
    repair_empty(points, weights, &mut assignment, &mut centroids);
    if n >= 2 && assignment.iter().all(|&a| a == assignment[0]) {
        force_split(points, &mut assignment);
    }
    compact(points, weights, &assignment)
}

/// Moves, for each empty cluster, the point farthest from its centroid in the
/// heaviest cluster into the empty one.
fn repair_empty<T: Scalar>(
    points: &[Vec<T>],
    weights: &[T],
    assignment: &mut [usize],
    centroids: &mut [Vec<T>],
) {
    let k = centroids.len();
    loop {
        let mut mass = vec![T::zero(); k];
        let mut count = vec![0usize; k];
        for (&a, &w) in assignment.iter().zip(weights) {
            mass[a] = mass[a] + w;
            count[a] += 1;
        }
        let Some(empty) = count.iter().position(|&c| c == 0) else {
            return;
        };
        let mut largest = None;
        for j in 0..k {
            if count[j] >= 2 && largest.is_none_or(|l: usize| mass[j] > mass[l]) {
                largest = Some(j);
            }
        }
        let Some(largest) = largest else {
            return;
        };
        let mut far = None;
        let mut far_d = -T::one();
        for (i, p) in points.iter().enumerate() {
            if assignment[i] == largest {
                let d = squared_distance(p, &centroids[largest]);
                if d > far_d {
                    far = Some(i);
                    far_d = d;
                }
            }
        }
        let far = far.expect("largest cluster is non-empty");
        assignment[far] = empty;
        centroids[empty] = points[far].clone();
    }
}

/// Splits a single cluster around its two most distant points.
fn force_split<T: Scalar>(points: &[Vec<T>], assignment: &mut [usize]) {
    let (mut a, mut b, mut best) = (0, 1, -T::one());
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = squared_distance(&points[i], &points[j]);
            if d > best {
                (a, b, best) = (i, j, d);
            }
        }
    }
    for (i, p) in points.iter().enumerate() {
        let da = squared_distance(p, &points[a]);
        let db = squared_distance(p, &points[b]);
        assignment[i] = usize::from(db < da);
    }
}

fn compact<T: Scalar>(points: &[Vec<T>], weights: &[T], assignment: &[usize]) -> Clustering<T> {
    let mut relabel = std::collections::HashMap::new();
    let assignment: Vec<usize> = assignment
        .iter()
        .map(|&a| {
            let next = relabel.len();
            *relabel.entry(a).or_insert(next)
        })
        .collect();
    let (centroids, _) = weighted_means(points, weights, &assignment, relabel.len());
    Clustering {
        assignment,
        centroids,
    }
}
