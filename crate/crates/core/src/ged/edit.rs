use std::collections::BTreeMap;

use crate::graph::{Graph, Label, VertexId};
use crate::scalar::Cost;

use super::{Assignment, GedError};

/// Costs of the six edit operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EditCostModel<T> {
    pub vertex_insert: T,
    pub vertex_delete: T,
    pub vertex_relabel: T,
    pub edge_insert: T,
    pub edge_delete: T,
    pub edge_relabel: T,
}

impl<T: Cost> Default for EditCostModel<T> {
    fn default() -> Self {
        Self::uniform(T::one())
    }
}

impl<T: Cost> EditCostModel<T> {
    pub fn uniform(c: T) -> Self {
        Self {
            vertex_insert: c,
            vertex_delete: c,
            vertex_relabel: c,
            edge_insert: c,
            edge_delete: c,
            edge_relabel: c,
        }
    }

    pub fn fields(&self) -> [(&'static str, T); 6] {
        [
            ("vertex_insert", self.vertex_insert),
            ("vertex_delete", self.vertex_delete),
            ("vertex_relabel", self.vertex_relabel),
            ("edge_insert", self.edge_insert),
            ("edge_delete", self.edge_delete),
            ("edge_relabel", self.edge_relabel),
        ]
    }

    pub fn field_mut(&mut self, name: &str) -> Option<&mut T> {
        Some(match name {
            "vertex_insert" => &mut self.vertex_insert,
            "vertex_delete" => &mut self.vertex_delete,
            "vertex_relabel" => &mut self.vertex_relabel,
            "edge_insert" => &mut self.edge_insert,
            "edge_delete" => &mut self.edge_delete,
            "edge_relabel" => &mut self.edge_relabel,
            _ => return None,
        })
    }

    pub fn validate(&self) -> Result<(), GedError> {
        match self.fields().iter().find(|(_, c)| *c < T::zero()) {
            Some((name, _)) => Err(GedError::NegativeCost(name)),
            None => Ok(()),
        }
    }

    pub fn cost_of(&self, op: &EditOp) -> T {
        match op {
            EditOp::DeleteEdge { .. } => self.edge_delete,
            EditOp::DeleteVertex { .. } => self.vertex_delete,
            EditOp::RelabelVertex { .. } => self.vertex_relabel,
            EditOp::RelabelEdge { .. } => self.edge_relabel,
            EditOp::InsertVertex { .. } => self.vertex_insert,
            EditOp::InsertEdge { .. } => self.edge_insert,
        }
    }
}

fn edge_label(g: &Graph, u: VertexId, v: VertexId) -> Option<Option<Label>> {
    g.edge_between(u, v).map(|e| g.edge_label(e))
}

struct Correspondence {
    to_h: Vec<Option<VertexId>>,
    to_g: Vec<Option<VertexId>>,
}

impl Correspondence {
    fn new(g: &Graph, h: &Graph, a: &Assignment) -> Self {
        let mut to_h = vec![None; g.vertex_count()];
        let mut to_g = vec![None; h.vertex_count()];
        for &(u, v) in &a.matched {
            to_h[u] = Some(v);
            to_g[v] = Some(u);
        }
        Self { to_h, to_g }
    }
}

/// Cost of the edit path induced by `a`; an upper bound on the edit distance.
pub fn edit_cost_from_assignment<T: Cost>(
    g: &Graph,
    h: &Graph,
    a: &Assignment,
    costs: &EditCostModel<T>,
) -> T {
    derive_edit_path(g, h, a).cost(costs)
}

/// A single edit operation. Vertex ids refer to the working graph: the
/// vertices of the source graph followed by inserted vertices in insertion
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EditOp {
    DeleteEdge { u: VertexId, v: VertexId },
    DeleteVertex { u: VertexId },
    RelabelVertex { u: VertexId, label: Label },
    RelabelEdge { u: VertexId, v: VertexId, label: Label },
    InsertVertex { label: Label },
    InsertEdge { u: VertexId, v: VertexId, label: Option<Label> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditPath {
    pub ops: Vec<EditOp>,
    /// For each vertex of the graph produced by [`apply_edit_path`], the
    /// target vertex it corresponds to.
    pub correspondence: Vec<VertexId>,
}

impl EditPath {
    pub fn cost<T: Cost>(&self, costs: &EditCostModel<T>) -> T {
        self.ops
            .iter()
            .fold(T::zero(), |acc, op| acc + costs.cost_of(op))
    }
}

/// Edit operations turning `g` into `h` consistently with `a`: edge
/// deletions, vertex deletions, relabels, vertex insertions, then edge
/// insertions.
pub fn derive_edit_path(g: &Graph, h: &Graph, a: &Assignment) -> EditPath {
    let c = Correspondence::new(g, h, a);
    let mut ops = Vec::new();

    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match (c.to_h[u], c.to_h[v]) {
            (Some(x), Some(y)) => match edge_label(h, x, y) {
                None => ops.push(EditOp::DeleteEdge { u, v }),
                Some(lh) => {
                    if let (Some(lg), Some(lh)) = (g.edge_label(e), lh) {
                        if lg != lh {
                            ops.push(EditOp::RelabelEdge { u, v, label: lh });
                        }
                    }
                }
            },
            _ => ops.push(EditOp::DeleteEdge { u, v }),
        }
    }
    let mut deleted = a.deleted.clone();
    deleted.sort_unstable();
    ops.extend(deleted.iter().map(|&u| EditOp::DeleteVertex { u }));
    let mut matched = a.matched.clone();
    matched.sort_unstable();
    for &(u, v) in &matched {
        if g.vertex_label(u) != h.vertex_label(v) {
            ops.push(EditOp::RelabelVertex {
                u,
                label: h.vertex_label(v),
            });
        }
    }

    let mut inserted = a.inserted.clone();
    inserted.sort_unstable();
    let mut slot_of_h: Vec<Option<VertexId>> = c.to_g.clone();
    for (i, &v) in inserted.iter().enumerate() {
        slot_of_h[v] = Some(g.vertex_count() + i);
        ops.push(EditOp::InsertVertex {
            label: h.vertex_label(v),
        });
    }
    for (e, &(x, y)) in h.edges().iter().enumerate() {
        let present = match (c.to_g[x], c.to_g[y]) {
            (Some(u), Some(v)) => g.has_edge(u, v),
            _ => false,
        };
        if !present {
            let (u, v) = (slot_of_h[x].unwrap(), slot_of_h[y].unwrap());
            ops.push(EditOp::InsertEdge {
                u,
                v,
                label: h.edge_label(e),
            });
        }
    }

    let mut correspondence: Vec<VertexId> = matched.iter().map(|&(_, v)| v).collect();
    correspondence.extend(&inserted);
    EditPath {
        ops,
        correspondence,
    }
}

/// Replays `path` on `g`. Surviving source vertices keep their relative order
/// and inserted vertices follow them.
pub fn apply_edit_path(g: &Graph, path: &EditPath) -> Result<Graph, GedError> {
    let mut labels: Vec<Option<Label>> = g.vertex_labels().iter().copied().map(Some).collect();
    let mut edges: BTreeMap<(VertexId, VertexId), Option<Label>> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &k)| (k, g.edge_label(e)))
        .collect();
    let bad = |i: usize, msg: &str| GedError::InvalidEditPath {
        step: i,
        message: msg.to_owned(),
    };
    let key = |u: VertexId, v: VertexId| (u.min(v), u.max(v));
    for (i, op) in path.ops.iter().enumerate() {
        let alive = |labels: &Vec<Option<Label>>, u: VertexId| labels.get(u).is_some_and(Option::is_some);
        match *op {
            EditOp::DeleteEdge { u, v } => {
                edges.remove(&key(u, v)).ok_or_else(|| bad(i, "edge not present"))?;
            }
            EditOp::DeleteVertex { u } => {
                if !alive(&labels, u) {
                    return Err(bad(i, "vertex not present"));
                }
                if edges.keys().any(|&(a, b)| a == u || b == u) {
                    return Err(bad(i, "vertex still has edges"));
                }
                labels[u] = None;
            }
            EditOp::RelabelVertex { u, label } => {
                if !alive(&labels, u) {
                    return Err(bad(i, "vertex not present"));
                }
                labels[u] = Some(label);
            }
            EditOp::RelabelEdge { u, v, label } => {
                let slot = edges.get_mut(&key(u, v)).ok_or_else(|| bad(i, "edge not present"))?;
                *slot = Some(label);
            }
            EditOp::InsertVertex { label } => labels.push(Some(label)),
            EditOp::InsertEdge { u, v, label } => {
                if u == v || !alive(&labels, u) || !alive(&labels, v) {
                    return Err(bad(i, "endpoint not present"));
                }
                if edges.insert(key(u, v), label).is_some() {
                    return Err(bad(i, "edge already present"));
                }
            }
        }
    }

    let mut new_id = vec![usize::MAX; labels.len()];
    let mut kept = Vec::new();
    for (slot, l) in labels.iter().enumerate() {
        if let Some(l) = l {
            new_id[slot] = kept.len();
            kept.push(*l);
        }
    }
    let pairs: Vec<_> = edges.keys().map(|&(u, v)| (new_id[u], new_id[v])).collect();
    let labelled = edges.values().all(Option::is_some) && g.has_edge_labels();
    let result = if labelled {
        Graph::with_edge_labels(kept, pairs, edges.values().map(|l| l.unwrap()).collect())
    } else {
        Graph::new(kept, pairs)
    };
    result.map_err(|e| bad(path.ops.len(), &e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(n: usize) -> Assignment {
        Assignment {
            matched: (0..n).map(|v| (v, v)).collect(),
            ..Default::default()
        }
    }

    #[test]
    fn identical_graphs_cost_nothing() {
        let g = Graph::unlabeled(3, [(0, 1), (1, 2)]).unwrap();
        let c: f64 = edit_cost_from_assignment(&g, &g, &identity(3), &EditCostModel::default());
        assert_eq!(c, 0.0);
    }

    #[test]
    fn one_relabel() {
        let g = Graph::new(vec![0, 0, 0], [(0, 1), (1, 2)]).unwrap();
        let h = Graph::new(vec![0, 1, 0], [(0, 1), (1, 2)]).unwrap();
        let c: f64 = edit_cost_from_assignment(&g, &h, &identity(3), &EditCostModel::default());
        assert_eq!(c, 1.0);
    }

    #[test]
    fn triangle_to_path() {
        let k3 = Graph::unlabeled(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let p3 = Graph::unlabeled(3, [(0, 1), (1, 2)]).unwrap();
        let c: u32 = edit_cost_from_assignment(&k3, &p3, &identity(3), &EditCostModel::default());
        assert_eq!(c, 1);
    }

    #[test]
    fn deletion_removes_incident_edges() {
        let g = Graph::unlabeled(3, [(0, 1), (1, 2)]).unwrap();
        let h = Graph::unlabeled(1, []).unwrap();
        let a = Assignment {
            matched: vec![(1, 0)],
            deleted: vec![0, 2],
            inserted: vec![],
        };
        let costs = EditCostModel {
            vertex_delete: 10u32,
            edge_delete: 1,
            ..Default::default()
        };
        assert_eq!(edit_cost_from_assignment(&g, &h, &a, &costs), 22);
        let path = derive_edit_path(&g, &h, &a);
        let out = apply_edit_path(&g, &path).unwrap();
        assert_eq!(out.permuted(&path.correspondence), h);
    }

    #[test]
    fn replay_with_insertions_and_edge_labels() {
        let g = Graph::with_edge_labels(vec![1, 2], [(0, 1)], vec![7]).unwrap();
        let h = Graph::with_edge_labels(vec![3, 2, 1], [(0, 1), (1, 2), (0, 2)], vec![4, 7, 5]).unwrap();
        let a = Assignment {
            matched: vec![(0, 2), (1, 1)],
            deleted: vec![],
            inserted: vec![0],
        };
        let path = derive_edit_path(&g, &h, &a);
        let cost: f64 = path.cost(&EditCostModel::default());
        assert_eq!(cost, 3.0);
        let out = apply_edit_path(&g, &path).unwrap();
        assert_eq!(out.permuted(&path.correspondence), h);
    }

    #[test]
    fn rational_costs() {
        use num_rational::Ratio;
        let g = Graph::unlabeled(2, [(0, 1)]).unwrap();
        let h = Graph::unlabeled(2, []).unwrap();
        let costs = EditCostModel::uniform(Ratio::new(1i64, 3));
        assert_eq!(
            edit_cost_from_assignment(&g, &h, &identity(2), &costs),
            Ratio::new(1, 3)
        );
    }

    #[test]
    fn negative_costs_are_rejected() {
        let mut c = EditCostModel::<f64>::default();
        *c.field_mut("edge_relabel").unwrap() = -1.0;
        assert_eq!(c.validate(), Err(GedError::NegativeCost("edge_relabel")));
    }

    #[test]
    fn broken_paths_are_reported() {
        let g = Graph::unlabeled(2, [(0, 1)]).unwrap();
        let path = EditPath {
            ops: vec![EditOp::DeleteVertex { u: 0 }],
            correspondence: vec![0],
        };
        assert!(matches!(
            apply_edit_path(&g, &path),
            Err(GedError::InvalidEditPath { step: 0, .. })
        ));
    }
}
