use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::dataset::{Dataset, DisjointUnion};
use crate::refinement::{refine_to_depth, Refinement, UpdateSpec};
use crate::scalar::Scalar;

use super::features::{oa_kernel_from_features, subtree_features, subtree_kernel, SparseFeatureVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("cannot compute a kernel matrix for an empty dataset")]
    EmptyDataset,
    #[error("unknown kernel {0:?}, expected `subtree` or `oa`")]
    UnknownKernel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Subtree,
    OptimalAssignment,
}

impl FromStr for KernelKind {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "subtree" | "st" => Ok(KernelKind::Subtree),
            "oa" | "optimal-assignment" => Ok(KernelKind::OptimalAssignment),
            _ => Err(KernelError::UnknownKernel(s.to_owned())),
        }
    }
}

impl KernelKind {
    pub fn name(self) -> &'static str {
        match self {
            KernelKind::Subtree => "subtree",
            KernelKind::OptimalAssignment => "oa",
        }
    }

    pub fn evaluate(self, f1: &SparseFeatureVector, f2: &SparseFeatureVector) -> u64 {
        match self {
            KernelKind::Subtree => subtree_kernel(f1, f2),
            KernelKind::OptimalAssignment => oa_kernel_from_features(f1, f2),
        }
    }
}

/// Dense symmetric kernel matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<T> {
    values: Vec<T>,
    size: usize,
    pub graph_ids: Vec<usize>,
}

impl<T: Scalar> GramMatrix<T> {
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> T + Sync) -> Self {
        let rows: Vec<Vec<T>> = (0..size)
            .into_par_iter()
            .map(|i| (0..size).map(|j| if j < i { T::zero() } else { f(i, j) }).collect())
            .collect();
        let mut values: Vec<T> = rows.into_iter().flatten().collect();
        for i in 0..size {
            for j in 0..i {
                values[i * size + j] = values[j * size + i];
            }
        }
        Self {
            values,
            size,
            graph_ids: (0..size).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.values[i * self.size..(i + 1) * self.size]
    }

    pub fn trace(&self) -> T {
        (0..self.size).map(|i| self.get(i, i)).sum()
    }

    /// Cosine normalization `K(i,j) / sqrt(K(i,i) K(j,j))`, with `0/0 = 0`.
    pub fn normalized(&self) -> Self {
        let diag: Vec<T> = (0..self.size).map(|i| self.get(i, i)).collect();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(idx, &k)| {
                let denom = (diag[idx / self.size] * diag[idx % self.size]).sqrt();
                if denom > T::zero() {
                    k / denom
                } else {
                    T::zero()
                }
            })
            .collect();
        Self {
            values,
            size: self.size,
            graph_ids: self.graph_ids.clone(),
        }
    }

    /// `1 - K(i,j)` for every entry; meant for normalized kernels.
    pub fn to_distances(&self) -> Vec<Vec<T>> {
        (0..self.size)
            .map(|i| self.row(i).iter().map(|&k| T::one() - k).collect())
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }
}

pub fn gram_from_features<T: Scalar>(
    features: &[SparseFeatureVector],
    kind: KernelKind,
) -> GramMatrix<T> {
    GramMatrix::from_fn(features.len(), |i, j| {
        T::from_count(kind.evaluate(&features[i], &features[j]))
    })
}

/// Refines the disjoint union of `dataset` for `h` iterations and returns the
/// per-graph feature vectors alongside the refinement.
pub fn dataset_features(
    dataset: &Dataset,
    update: &UpdateSpec,
    h: usize,
) -> Result<(Refinement, DisjointUnion, Vec<SparseFeatureVector>), KernelError> {
    let union = dataset
        .disjoint_union()
        .map_err(|_| KernelError::EmptyDataset)?;
    let mut u = update.build();
    let refinement = refine_to_depth(&union.graph, union.graph.vertex_labels(), &mut u, h);
    let features = subtree_features(&refinement.hierarchy, &refinement.colorings, &union);
    Ok((refinement, union, features))
}

pub fn gram<T: Scalar>(
    dataset: &Dataset,
    kind: KernelKind,
    update: &UpdateSpec,
    h: usize,
    normalize: bool,
) -> Result<GramMatrix<T>, KernelError> {
    let (_, _, features) = dataset_features(dataset, update, h)?;
    let k = gram_from_features(&features, kind);
    Ok(if normalize { k.normalized() } else { k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::refinement::ClusteringParams;

    fn triangle() -> Graph {
        Graph::unlabeled(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::unlabeled(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn triangle_with_itself() {
        let ds = Dataset::new("t", vec![triangle(), triangle()], vec![0, 0]).unwrap();
        for h in 0..4 {
            let k: GramMatrix<f64> = gram(&ds, KernelKind::Subtree, &UpdateSpec::Wl, h, false).unwrap();
            assert_eq!(k.get(0, 1), 9.0 * (h as f64 + 1.0));
            let oa: GramMatrix<f64> =
                gram(&ds, KernelKind::OptimalAssignment, &UpdateSpec::Wl, h, false).unwrap();
            assert_eq!(oa.get(0, 0), 3.0 * (h as f64 + 1.0));
        }
    }

    #[test]
    fn path_versus_triangle() {
        let ds = Dataset::new("pt", vec![path3(), triangle()], vec![0, 1]).unwrap();
        let k: GramMatrix<f64> = gram(&ds, KernelKind::Subtree, &UpdateSpec::Wl, 1, false).unwrap();
        // iteration 1 separates the path's endpoints from all degree-2 vertices
        assert_eq!(k.get(0, 1), 9.0 + 3.0);
        assert_eq!(k.get(0, 0), 9.0 + 4.0 + 1.0);
    }

    #[test]
    fn single_graph_normalizes_to_one() {
        let ds = Dataset::new("one", vec![path3()], vec![1]).unwrap();
        let spec = UpdateSpec::KMeans(ClusteringParams::new(2));
        let k: GramMatrix<f64> = gram(&ds, KernelKind::Subtree, &spec, 4, true).unwrap();
        assert_eq!(k.size(), 1);
        assert_eq!(k.get(0, 0), 1.0);
    }

    #[test]
    fn duplicates_have_identical_rows() {
        let ds = Dataset::new("d", vec![path3(), triangle(), path3()], vec![0, 1, 0]).unwrap();
        let k: GramMatrix<f32> = gram(&ds, KernelKind::OptimalAssignment, &UpdateSpec::Wl, 2, true).unwrap();
        assert_eq!(k.get(0, 2), 1.0);
        assert_eq!(k.row(0), k.row(2));
    }

    #[test]
    fn zero_diagonal_normalizes_to_zero() {
        let k = GramMatrix::<f64>::from_fn(2, |i, j| if i == 0 && j == 0 { 0.0 } else { 1.0 });
        let n = k.normalized();
        assert_eq!(n.get(0, 0), 0.0);
        assert_eq!(n.get(0, 1), 0.0);
        assert_eq!(n.get(1, 1), 1.0);
    }

    #[test]
    fn empty_dataset_is_an_error() {
        let ds = Dataset::new("e", vec![], vec![]).unwrap();
        assert_eq!(
            gram::<f64>(&ds, KernelKind::Subtree, &UpdateSpec::Wl, 1, false),
            Err(KernelError::EmptyDataset)
        );
    }
}
