use crate::dataset::DisjointUnion;
use crate::refinement::{ColorHierarchy, Coloring};

/// Sparse count vector keyed by feature id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseFeatureVector {
    entries: Vec<(u64, u64)>,
}

impl SparseFeatureVector {
    /// Builds from unsorted `(key, count)` pairs; counts of equal keys add up
    /// and zero counts are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut entries: Vec<(u64, u64)> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        entries.sort_unstable();
        let mut merged: Vec<(u64, u64)> = Vec::with_capacity(entries.len());
        for (k, n) in entries {
            match merged.last_mut() {
                Some((last, m)) if *last == k => *m += n,
                _ => merged.push((k, n)),
            }
        }
        Self { entries: merged }
    }

    /// `(key, count)` pairs sorted by key.
    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn get(&self, key: u64) -> u64 {
        self.entries
            .binary_search_by_key(&key, |e| e.0)
            .map_or(0, |i| self.entries[i].1)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    fn merge_join(&self, other: &Self, mut f: impl FnMut(u64, u64)) {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    f(a[i].1, b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
    }

    pub fn dot(&self, other: &Self) -> u64 {
        let mut s = 0;
        self.merge_join(other, |x, y| s += x * y);
        s
    }

    /// Histogram intersection `Σ min(x_k, y_k)`.
    pub fn intersection(&self, other: &Self) -> u64 {
        let mut s = 0;
        self.merge_join(other, |x, y| s += x.min(y));
        s
    }
}

/// Feature id of a color at an iteration. Colors that persist over several
/// iterations get one feature per iteration, so a graph's features at each
/// iteration always sum to its vertex count.
pub fn feature_key(iteration: usize, color: usize, color_count: usize) -> u64 {
    (iteration as u64) * (color_count as u64) + color as u64
}

/// Per-graph counts of every (iteration, color) pair of `colorings`.
pub fn subtree_features(
    hierarchy: &ColorHierarchy,
    colorings: &[Coloring],
    union: &DisjointUnion,
) -> Vec<SparseFeatureVector> {
    let color_count = hierarchy.color_count();
    (0..union.members())
        .map(|g| member_features(colorings, union.range(g), color_count))
        .collect()
}

fn member_features(
    colorings: &[Coloring],
    range: std::ops::Range<usize>,
    color_count: usize,
) -> SparseFeatureVector {
    SparseFeatureVector::from_pairs(colorings.iter().enumerate().flat_map(|(i, c)| {
        c.colors[range.clone()]
            .iter()
            .map(move |&color| (feature_key(i, color, color_count), 1))
    }))
}

/// Subtree kernel value: the dot product of two feature vectors.
pub fn subtree_kernel(f1: &SparseFeatureVector, f2: &SparseFeatureVector) -> u64 {
    f1.dot(f2)
}

/// Optimal assignment kernel value from feature vectors: the sum over
/// iterations of the histogram intersections of the two colorings.
pub fn oa_kernel_from_features(f1: &SparseFeatureVector, f2: &SparseFeatureVector) -> u64 {
    f1.intersection(f2)
}

/// Optimal assignment kernel between members `g1` and `g2` of `union`.
///
/// Equals the weight of an optimal vertex assignment when two vertices are as
/// similar as the number of iterations in which they share a color, i.e. the
/// weighted depth of their lowest common ancestor in the hierarchy.
pub fn oa_kernel(
    hierarchy: &ColorHierarchy,
    colorings: &[Coloring],
    union: &DisjointUnion,
    g1: usize,
    g2: usize,
) -> u64 {
    let color_count = hierarchy.color_count();
    let f1 = member_features(colorings, union.range(g1), color_count);
    let f2 = member_features(colorings, union.range(g2), color_count);
    f1.intersection(&f2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_products() {
        let a = SparseFeatureVector::from_pairs([(1, 2), (2, 1)]);
        let b = SparseFeatureVector::from_pairs([(1, 3), (3, 4)]);
        assert_eq!(subtree_kernel(&a, &b), 6);
        assert_eq!(a.intersection(&b), 2);
        let c = SparseFeatureVector::from_pairs([(9, 1)]);
        assert_eq!(subtree_kernel(&a, &c), 0);
        let d = SparseFeatureVector::from_pairs([(4, 3), (5, 4)]);
        assert_eq!(subtree_kernel(&d, &d), 25);
    }

    #[test]
    fn pairs_merge_and_drop_zeros() {
        let v = SparseFeatureVector::from_pairs([(5, 1), (2, 0), (5, 2), (1, 1)]);
        assert_eq!(v.entries(), &[(1, 1), (5, 3)]);
        assert_eq!(v.get(5), 3);
        assert_eq!(v.get(2), 0);
        assert_eq!(v.total(), 4);
    }
}
