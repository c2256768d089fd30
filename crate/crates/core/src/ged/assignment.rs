use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use crate::graph::VertexId;
use crate::refinement::{ColorHierarchy, ColorId};

use super::GedError;

/// Vertex correspondence between two graphs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    pub matched: Vec<(VertexId, VertexId)>,
    pub deleted: Vec<VertexId>,
    pub inserted: Vec<VertexId>,
}

impl Assignment {
    /// Rewrites every vertex id, e.g. from union-global to graph-local ids.
    pub fn map(&self, fg: impl Fn(VertexId) -> VertexId, fh: impl Fn(VertexId) -> VertexId) -> Self {
        Self {
            matched: self.matched.iter().map(|&(u, v)| (fg(u), fh(v))).collect(),
            deleted: self.deleted.iter().map(|&u| fg(u)).collect(),
            inserted: self.inserted.iter().map(|&v| fh(v)).collect(),
        }
    }

    /// Tree cost of the assignment: `d_T` of every matched pair plus the
    /// distance to the root for every unmatched vertex.
    pub fn tree_cost(&self, hierarchy: &ColorHierarchy) -> usize {
        let leaf = |v| hierarchy.leaf_of(v);
        self.matched
            .iter()
            .map(|&(u, v)| hierarchy.tree_distance(leaf(u), leaf(v)))
            .chain(
                self.deleted
                    .iter()
                    .chain(&self.inserted)
                    .map(|&v| hierarchy.depth(leaf(v))),
            )
            .sum()
    }
}

#[derive(Default)]
struct Pending {
    g: Vec<VertexId>,
    h: Vec<VertexId>,
}

/// Optimal assignment under the tree metric of `hierarchy`, computed by
/// deconstructing the tree from its leaves.
///
/// Vertex ids refer to the hierarchy's vertex set (for a dataset, the ids of
/// its disjoint union). Nodes are processed deepest first, then by ascending
/// color id. At each node the pending vertices of both sides are paired in
/// ascending id order and the surplus moves to the parent; whatever reaches
/// the root unpaired is deleted (from `verts_g`) or inserted (from `verts_h`).
pub fn tree_metric_assignment(
    hierarchy: &ColorHierarchy,
    verts_g: &[VertexId],
    verts_h: &[VertexId],
) -> Result<Assignment, GedError> {
    let n = hierarchy.vertex_count();
    if let Some(&v) = verts_g.iter().chain(verts_h).find(|&&v| v >= n) {
        return Err(GedError::UnknownVertex {
            vertex: v,
            vertex_count: n,
        });
    }
    let mut pending: BTreeMap<ColorId, Pending> = BTreeMap::new();
    let mut queue: BTreeSet<(Reverse<usize>, ColorId)> = BTreeSet::new();
    let key = |c: ColorId| (Reverse(hierarchy.depth(c)), c);
    for &u in verts_g {
        let c = hierarchy.leaf_of(u);
        pending.entry(c).or_default().g.push(u);
        queue.insert(key(c));
    }
    for &v in verts_h {
        let c = hierarchy.leaf_of(v);
        pending.entry(c).or_default().h.push(v);
        queue.insert(key(c));
    }

    let mut out = Assignment::default();
    while let Some((_, node)) = queue.pop_first() {
        let Pending { mut g, mut h } = pending.remove(&node).unwrap_or_default();
        g.sort_unstable();
        h.sort_unstable();
        let m = g.len().min(h.len());
        out.matched.extend(g[..m].iter().copied().zip(h[..m].iter().copied()));
        let (g_rest, h_rest) = (&g[m..], &h[m..]);
        match hierarchy.parent(node) {
            Some(p) if !(g_rest.is_empty() && h_rest.is_empty()) => {
                let entry = pending.entry(p).or_default();
                entry.g.extend_from_slice(g_rest);
                entry.h.extend_from_slice(h_rest);
                queue.insert(key(p));
            }
            Some(_) => {}
            None => {
                out.deleted.extend_from_slice(g_rest);
                out.inserted.extend_from_slice(h_rest);
            }
        }
    }
    out.matched.sort_unstable();
    Ok(out)
}
