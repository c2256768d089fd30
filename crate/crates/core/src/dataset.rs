//! Collections of graphs with class labels, and their disjoint union.

use thiserror::Error;

use crate::graph::{Graph, GraphError, Label, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DatasetError {
    #[error("{labels} class labels for {graphs} graphs")]
    ClassLabelCount { labels: usize, graphs: usize },
    #[error("graph {0} has edge labels but graph {1} does not")]
    MixedEdgeLabels(usize, usize),
    #[error("label {label} of graph {graph} outside the dataset alphabet of size {alphabet}")]
    LabelOutsideAlphabet {
        graph: usize,
        label: Label,
        alphabet: usize,
    },
    #[error("dataset is empty")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Ordered graphs with one class label each. Vertex and edge labels are dense
/// over alphabets shared by every member graph; the original label values are
/// kept for export.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    graphs: Vec<Graph>,
    class_labels: Vec<i64>,
    vertex_alphabet: Vec<i64>,
    edge_alphabet: Option<Vec<i64>>,
}

impl Dataset {
    /// Dataset whose dense labels are also the original labels.
    pub fn new(
        name: impl Into<String>,
        graphs: Vec<Graph>,
        class_labels: Vec<i64>,
    ) -> Result<Self, DatasetError> {
        let vmax = graphs
            .iter()
            .flat_map(|g| g.vertex_labels().iter().copied())
            .max()
            .map_or(1, |m| m as usize + 1);
        let emax = graphs
            .iter()
            .filter_map(|g| g.edge_labels())
            .flat_map(|l| l.iter().copied())
            .max()
            .map_or(1, |m| m as usize + 1);
        let edge_alphabet = graphs
            .first()
            .filter(|g| g.has_edge_labels())
            .map(|_| (0..emax as i64).collect());
        Self::with_alphabets(
            name,
            graphs,
            class_labels,
            (0..vmax as i64).collect(),
            edge_alphabet,
        )
    }

    /// Dataset with explicit dense→original label maps.
    pub fn with_alphabets(
        name: impl Into<String>,
        graphs: Vec<Graph>,
        class_labels: Vec<i64>,
        vertex_alphabet: Vec<i64>,
        edge_alphabet: Option<Vec<i64>>,
    ) -> Result<Self, DatasetError> {
        if class_labels.len() != graphs.len() {
            return Err(DatasetError::ClassLabelCount {
                labels: class_labels.len(),
                graphs: graphs.len(),
            });
        }
        for (i, g) in graphs.iter().enumerate() {
            if g.has_edge_labels() != edge_alphabet.is_some() {
                let other = if i == 0 { 0 } else { i - 1 };
                return Err(if g.has_edge_labels() {
                    DatasetError::MixedEdgeLabels(i, other)
                } else {
                    DatasetError::MixedEdgeLabels(other, i)
                });
            }
            if let Some(&label) = g
                .vertex_labels()
                .iter()
                .find(|&&l| l as usize >= vertex_alphabet.len())
            {
                return Err(DatasetError::LabelOutsideAlphabet {
                    graph: i,
                    label,
                    alphabet: vertex_alphabet.len(),
                });
            }
            if let (Some(labels), Some(alpha)) = (g.edge_labels(), &edge_alphabet) {
                if let Some(&label) = labels.iter().find(|&&l| l as usize >= alpha.len()) {
                    return Err(DatasetError::LabelOutsideAlphabet {
                        graph: i,
                        label,
                        alphabet: alpha.len(),
                    });
                }
            }
        }
        Ok(Self {
            name: name.into(),
            graphs,
            class_labels,
            vertex_alphabet,
            edge_alphabet,
        })
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn graph(&self, i: usize) -> &Graph {
        &self.graphs[i]
    }

    pub fn class_labels(&self) -> &[i64] {
        &self.class_labels
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Original value of each dense vertex label.
    pub fn vertex_alphabet(&self) -> &[i64] {
        &self.vertex_alphabet
    }

    pub fn edge_alphabet(&self) -> Option<&[i64]> {
        self.edge_alphabet.as_deref()
    }

    pub fn has_edge_labels(&self) -> bool {
        self.edge_alphabet.is_some()
    }

    pub fn stats(&self) -> DatasetStats {
        let n = self.graphs.len().max(1) as f64;
        let mut classes = self.class_labels.clone();
        classes.sort_unstable();
        classes.dedup();
        let mut used: Vec<Label> = self
            .graphs
            .iter()
            .flat_map(|g| g.vertex_labels().iter().copied())
            .collect();
        used.sort_unstable();
        used.dedup();
        DatasetStats {
            graphs: self.graphs.len(),
            classes: classes.len(),
            mean_vertices: self.graphs.iter().map(|g| g.vertex_count()).sum::<usize>() as f64 / n,
            mean_edges: self.graphs.iter().map(|g| g.edge_count()).sum::<usize>() as f64 / n,
            vertex_labels: used.len(),
        }
    }

    /// Disjoint union of all member graphs; member `i` occupies the global
    /// vertex range `offsets[i]..offsets[i + 1]`.
    pub fn disjoint_union(&self) -> Result<DisjointUnion, DatasetError> {
        if self.graphs.is_empty() {
            return Err(DatasetError::Empty);
        }
        Ok(disjoint_union(&self.graphs))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DatasetStats {
    pub graphs: usize,
    pub classes: usize,
    pub mean_vertices: f64,
    /// Undirected edges, each counted once.
    pub mean_edges: f64,
    pub vertex_labels: usize,
}

/// A single graph holding every member of a dataset side by side.
#[derive(Debug, Clone)]
pub struct DisjointUnion {
    pub graph: Graph,
    /// Global vertex id → (member index, local vertex id).
    pub origin: Vec<(usize, VertexId)>,
    /// Prefix sums of member vertex counts, `len = members + 1`.
    pub offsets: Vec<usize>,
}

impl DisjointUnion {
    pub fn members(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn range(&self, member: usize) -> std::ops::Range<VertexId> {
        self.offsets[member]..self.offsets[member + 1]
    }

    pub fn global(&self, member: usize, local: VertexId) -> VertexId {
        self.offsets[member] + local
    }
}

pub fn disjoint_union(graphs: &[Graph]) -> DisjointUnion {
    let mut offsets = Vec::with_capacity(graphs.len() + 1);
    offsets.push(0);
    for g in graphs {
        offsets.push(offsets.last().unwrap() + g.vertex_count());
    }
    let mut labels = Vec::with_capacity(*offsets.last().unwrap());
    let mut origin = Vec::with_capacity(labels.capacity());
    let mut edges = Vec::new();
    let labeled = graphs.first().is_some_and(|g| g.has_edge_labels());
    let mut edge_labels = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let off = offsets[i];
        labels.extend_from_slice(g.vertex_labels());
        origin.extend((0..g.vertex_count()).map(|v| (i, v)));
        edges.extend(g.edges().iter().map(|&(u, v)| (u + off, v + off)));
        if labeled {
            edge_labels.extend_from_slice(g.edge_labels().unwrap_or(&[]));
        }
    }
    let graph = if labeled {
        Graph::with_edge_labels(labels, edges, edge_labels)
    } else {
        Graph::new(labels, edges)
    }
    .expect("union of valid graphs is valid");
    DisjointUnion {
        graph,
        origin,
        offsets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::unlabeled(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn union_of_two_triangles() {
        let ds = Dataset::new("t", vec![triangle(), triangle()], vec![0, 1]).unwrap();
        let u = ds.disjoint_union().unwrap();
        assert_eq!(u.graph.vertex_count(), 6);
        assert_eq!(u.graph.edge_count(), 6);
        assert_eq!(u.origin.len(), 6);
        assert_eq!(u.origin[4], (1, 1));
        assert_eq!(u.range(1), 3..6);
    }

    #[test]
    fn single_graph_union_is_identity() {
        let g = Graph::unlabeled(4, [(0, 1), (2, 3), (1, 2)]).unwrap();
        let ds = Dataset::new("one", vec![g.clone()], vec![0]).unwrap();
        let u = ds.disjoint_union().unwrap();
        assert_eq!(u.graph, g);
        assert!(u.origin.iter().enumerate().all(|(i, &(m, v))| m == 0 && v == i));
    }

    #[test]
    fn empty_member_is_skipped() {
        let empty = Graph::unlabeled(0, []).unwrap();
        let ds = Dataset::new("e", vec![triangle(), empty, triangle()], vec![0, 0, 1]).unwrap();
        let u = ds.disjoint_union().unwrap();
        assert_eq!(u.graph.vertex_count(), 6);
        assert!(u.origin.iter().all(|&(m, _)| m != 1));
        assert!(u.range(1).is_empty());
        assert_eq!(u.global(2, 0), 3);
    }

    #[test]
    fn union_preserves_member_degrees() {
        let path = Graph::unlabeled(3, [(0, 1), (1, 2)]).unwrap();
        let ds = Dataset::new("d", vec![path.clone(), triangle()], vec![0, 1]).unwrap();
        let u = ds.disjoint_union().unwrap();
        for (i, g) in ds.graphs().iter().enumerate() {
            let degrees: Vec<_> = u.range(i).map(|v| u.graph.degree(v)).collect();
            assert_eq!(degrees, g.degree_sequence());
        }
    }

    #[test]
    fn rejects_bad_datasets() {
        assert!(matches!(
            Dataset::new("x", vec![triangle()], vec![]),
            Err(DatasetError::ClassLabelCount { .. })
        ));
        let labeled = Graph::with_edge_labels(vec![0, 0], [(0, 1)], vec![0]).unwrap();
        assert!(matches!(
            Dataset::new("x", vec![labeled, triangle()], vec![0, 0]),
            Err(DatasetError::MixedEdgeLabels(0, 1))
        ));
        let empty = Dataset::new("x", vec![], vec![]).unwrap();
        assert!(matches!(empty.disjoint_union(), Err(DatasetError::Empty)));
    }
}
