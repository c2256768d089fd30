use std::collections::BTreeMap;

use crate::graph::{Graph, VertexId};

use super::hierarchy::{ColorId, SigKey};

/// A vertex's color together with the multiset of its neighbors' colors
/// (keyed by edge label when the graph has edge labels).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NeighborSignature {
    pub own_color: ColorId,
    /// Sorted by key; every count is positive and the counts sum to the degree.
    pub counts: Vec<(SigKey, u32)>,
}

/// Neighbor color multiset of `v` under `colors`, sorted by key.
pub fn neighbor_counts(graph: &Graph, colors: &[ColorId], v: VertexId) -> Vec<(SigKey, u32)> {
    let mut keys: Vec<SigKey> = graph
        .incident(v)
        .iter()
        .map(|&(u, e)| SigKey {
            edge_label: graph.edge_label(e).unwrap_or(0),
            color: colors[u],
        })
        .collect();
    keys.sort_unstable();
    let mut counts: Vec<(SigKey, u32)> = Vec::new();
    for k in keys {
        match counts.last_mut() {
            Some((last, n)) if *last == k => *n += 1,
            _ => counts.push((k, 1)),
        }
    }
    counts
}

pub fn neighbor_signature(graph: &Graph, colors: &[ColorId], v: VertexId) -> NeighborSignature {
    NeighborSignature {
        own_color: colors[v],
        counts: neighbor_counts(graph, colors, v),
    }
}

/// Members of one color grouped by distinct neighbor signature, as dense
/// count vectors over the keys occurring among the members' neighbors.
#[derive(Debug, Clone)]
pub(crate) struct SignatureGroups {
    pub dims: Vec<SigKey>,
    /// Distinct vectors in increasing lexicographic order.
    pub vectors: Vec<Vec<u32>>,
    /// `members[i]` holds the vertices whose signature is `vectors[i]`.
    pub members: Vec<Vec<VertexId>>,
}

impl SignatureGroups {
    pub fn distinct(&self) -> usize {
        self.vectors.len()
    }
}

pub(crate) fn group_by_signature(
    graph: &Graph,
    colors: &[ColorId],
    members: &[VertexId],
) -> SignatureGroups {
    let mut by_sig: BTreeMap<Vec<(SigKey, u32)>, Vec<VertexId>> = BTreeMap::new();
    for &v in members {
        by_sig
            .entry(neighbor_counts(graph, colors, v))
            .or_default()
            .push(v);
    }
    let mut dims: Vec<SigKey> = by_sig
        .keys()
        .flat_map(|s| s.iter().map(|&(k, _)| k))
        .collect();
    dims.sort_unstable();
    dims.dedup();
    let mut groups: Vec<(Vec<u32>, Vec<VertexId>)> = by_sig
        .into_iter()
        .map(|(sig, vs)| (densify(&dims, &sig), vs))
        .collect();
    groups.sort_unstable();
    let (vectors, members) = groups.into_iter().unzip();
    SignatureGroups {
        dims,
        vectors,
        members,
    }
}

/// Dense vector of a sparse signature over `dims`; keys outside `dims` are
/// dropped.
pub(crate) fn densify(dims: &[SigKey], sparse: &[(SigKey, u32)]) -> Vec<u32> {
    let mut out = vec![0; dims.len()];
    for (k, n) in sparse {
        if let Ok(i) = dims.binary_search(k) {
            out[i] = *n;
        }
    }
    out
}
