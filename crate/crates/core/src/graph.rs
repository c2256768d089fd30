//! Undirected labeled graphs with dense vertex ids.

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
/// Dense categorical label (vertex or edge).
pub type Label = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: VertexId, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("{labels} edge labels given for {edges} edges")]
    EdgeLabelCount { labels: usize, edges: usize },
}

/// Simple undirected graph `G = (V, E, mu, nu)`.
///
/// Edges are stored once as `(u, v)` with `u < v`; the adjacency lists are
/// sorted by neighbor id and carry the id of the connecting edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_labels: Vec<Label>,
    edges: Vec<(VertexId, VertexId)>,
    edge_labels: Option<Vec<Label>>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    /// Unlabeled-edge graph. Edge endpoints may be given in either order.
    pub fn new(
        vertex_labels: Vec<Label>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        Self::build(vertex_labels, edges.into_iter().collect(), None)
    }

    /// Graph with one label per edge, in the order the edges are given.
    pub fn with_edge_labels(
        vertex_labels: Vec<Label>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
        edge_labels: Vec<Label>,
    ) -> Result<Self, GraphError> {
        Self::build(vertex_labels, edges.into_iter().collect(), Some(edge_labels))
    }

    /// Graph with all vertex labels 0.
    pub fn unlabeled(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        Self::new(vec![0; vertex_count], edges)
    }

    fn build(
        vertex_labels: Vec<Label>,
        raw_edges: Vec<(VertexId, VertexId)>,
        edge_labels: Option<Vec<Label>>,
    ) -> Result<Self, GraphError> {
        let n = vertex_labels.len();
        if let Some(labels) = &edge_labels {
            if labels.len() != raw_edges.len() {
                return Err(GraphError::EdgeLabelCount {
                    labels: labels.len(),
                    edges: raw_edges.len(),
                });
            }
        }
        let mut tagged = Vec::with_capacity(raw_edges.len());
        for (i, &(a, b)) in raw_edges.iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        vertex_count: n,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            tagged.push(((a.min(b), a.max(b)), i));
        }
        tagged.sort_unstable();
        if let Some(w) = tagged.windows(2).find(|w| w[0].0 == w[1].0) {
            let (u, v) = w[0].0;
            return Err(GraphError::DuplicateEdge(u, v));
        }
        let edges: Vec<_> = tagged.iter().map(|&(e, _)| e).collect();
        let edge_labels = edge_labels.map(|l| tagged.iter().map(|&(_, i)| l[i]).collect());

        let mut adjacency = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            vertex_labels,
            edges,
            edge_labels,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn vertex_labels(&self) -> &[Label] {
        &self.vertex_labels
    }

    pub fn vertex_label(&self, v: VertexId) -> Label {
        self.vertex_labels[v]
    }

    pub fn edge_labels(&self) -> Option<&[Label]> {
        self.edge_labels.as_deref()
    }

    pub fn has_edge_labels(&self) -> bool {
        self.edge_labels.is_some()
    }

    pub fn edge_label(&self, e: EdgeId) -> Option<Label> {
        self.edge_labels.as_ref().map(|l| l[e])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency[v].iter().map(|&(u, _)| u)
    }

    /// Neighbors together with the id of the connecting edge.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    /// Renames vertex `v` to `new_id[v]`. `new_id` must be a permutation.
    pub fn permuted(&self, new_id: &[VertexId]) -> Self {
        let n = self.vertex_count();
        assert_eq!(new_id.len(), n, "permutation length mismatch");
        let mut labels = vec![0; n];
        for (v, &w) in new_id.iter().enumerate() {
            labels[w] = self.vertex_labels[v];
        }
        let edges = self.edges.iter().map(|&(u, v)| (new_id[u], new_id[v]));
        let built = match &self.edge_labels {
            Some(l) => Self::build(labels, edges.collect(), Some(l.clone())),
            None => Self::build(labels, edges.collect(), None),
        };
        built.expect("permutation preserves validity")
    }
}
