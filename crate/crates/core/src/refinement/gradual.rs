//! Gradual refinement: each color is split by clustering the neighbor
//! signatures of its members into at most `k` groups.

use std::marker::PhantomData;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::Graph;
use crate::scalar::Scalar;

use super::driver::RenepUpdate;
use super::hierarchy::{ColorHierarchy, ColorId, SplitRule};
use super::kmeans::{weighted_kmeans, ClusteringParams};
use super::signature::{group_by_signature, SignatureGroups};
use super::wl::one_child_per_signature;

/// k-means realization of a refining, neighborhood preserving update.
///
/// Clustering runs on the distinct signature vectors of a color, weighted by
/// how many members share each vector, so members with equal signatures can
/// never be separated.
#[derive(Debug, Clone)]
pub struct KMeansRenep<T = f64> {
    pub params: ClusteringParams<T>,
    _scalar: PhantomData<T>,
}

impl<T: Scalar> KMeansRenep<T> {
    pub fn new(params: ClusteringParams<T>) -> Self {
        assert!(params.k >= 2, "k-means refinement needs k >= 2");
        Self {
            params,
            _scalar: PhantomData,
        }
    }

    fn split_color(&self, color: ColorId, groups: SignatureGroups) -> (ColorId, Vec<Vec<usize>>, SplitRule) {
        if groups.distinct() <= self.params.k {
            return one_child_per_signature(color, groups);
        }
        let points: Vec<Vec<T>> = groups
            .vectors
            .iter()
            .map(|v| v.iter().map(|&x| T::from_count(u64::from(x))).collect())
            .collect();
        let weights: Vec<T> = groups
            .members
            .iter()
            .map(|m| T::from_count(m.len() as u64))
            .collect();
        // one stream per color keeps results independent of evaluation order
        let mut rng = ChaCha8Rng::seed_from_u64(self.params.rng_seed);
        rng.set_stream(color as u64);
        let clustering = weighted_kmeans(&points, &weights, &self.params, &mut rng);

        let mut children = vec![Vec::new(); clustering.cluster_count()];
        for (members, &cluster) in groups.members.into_iter().zip(&clustering.assignment) {
            children[cluster].extend(members);
        }
        let exact = groups
            .vectors
            .into_iter()
            .zip(clustering.assignment)
            .collect();
        let centroids = clustering
            .centroids
            .iter()
            .map(|c| c.iter().map(|x| x.to_f64_lossy()).collect())
            .collect();
        (
            color,
            children,
            SplitRule::Signature {
                dims: groups.dims,
                centroids,
                exact,
            },
        )
    }
}

impl<T: Scalar> RenepUpdate for KMeansRenep<T> {
    fn refine(&mut self, graph: &Graph, hierarchy: &mut ColorHierarchy) -> bool {
        let colors = hierarchy.leaf_colors();
        let splits: Vec<_> = hierarchy
            .leaves()
            .into_par_iter()
            // singleton colors cannot split
            .filter(|&c| hierarchy.members(c).len() > 1)
            .filter_map(|c| {
                let groups = group_by_signature(graph, colors, hierarchy.members(c));
                (groups.distinct() > 1).then(|| self.split_color(c, groups))
            })
            .collect();
        !hierarchy.apply_splits(splits).is_empty()
    }

    fn name(&self) -> String {
        format!("kmeans(k={})", self.params.k)
    }
}

/// One gradual refinement step with k-means clustering.
pub fn kmeans_renep<T: Scalar>(
    graph: &Graph,
    hierarchy: &ColorHierarchy,
    params: &ClusteringParams<T>,
) -> ColorHierarchy {
    let mut next = hierarchy.clone();
    KMeansRenep::new(params.clone()).refine(graph, &mut next);
    next
}
