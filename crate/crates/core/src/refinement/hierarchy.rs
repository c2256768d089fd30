use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{Label, VertexId};

pub type ColorId = usize;

/// Color given to vertices of an inductively colored graph whose initial label
/// never occurred during refinement.
pub const UNSEEN: ColorId = ColorId::MAX;

/// One coordinate of a neighbor signature: the color of a neighbor together
/// with the label of the connecting edge (0 for unlabeled edges).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SigKey {
    pub edge_label: Label,
    pub color: ColorId,
}

/// How the children of a split color were chosen; replayed by inductive
/// coloring of unseen graphs.
#[derive(Debug, Clone, PartialEq)]
pub enum SplitRule {
    /// Nearest centroid in the neighbor-signature space spanned by `dims`.
    /// `exact` maps every signature observed during refinement to the child
    /// it was put in.
    Signature {
        dims: Vec<SigKey>,
        centroids: Vec<Vec<f64>>,
        exact: BTreeMap<Vec<u32>, usize>,
    },
    /// Child `i` holds the vertices with `counts[i]` neighbors inside the
    /// vertex set of `color`.
    NeighborCount { color: ColorId, counts: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub iteration: usize,
    pub rule: SplitRule,
}

#[derive(Debug, Clone, PartialEq)]
struct Node {
    parent: Option<ColorId>,
    depth: usize,
    iteration: Option<usize>,
    label: Option<Label>,
    children: Vec<ColorId>,
    members: Vec<VertexId>,
    split: Option<Split>,
}

/// Rooted tree of all colors produced so far.
///
/// Color 0 is an artificial root holding every vertex. Its children are the
/// initial label colors (iteration 0). A color that is split gets at least two
/// children; colors that are not split stay leaves and keep their id in later
/// iterations. The leaves always partition the vertex set and define the
/// current coloring.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorHierarchy {
    nodes: Vec<Node>,
    leaf_of: Vec<ColorId>,
    iteration: usize,
    label_colors: BTreeMap<Label, ColorId>,
}

/// A vertex coloring after a given number of refinement iterations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<ColorId>,
    pub iteration: usize,
}

impl Coloring {
    pub fn color_count(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    pub fn partition(&self) -> Vec<usize> {
        canonical_partition(&self.colors)
    }
}

/// Relabels colors by first occurrence so equal partitions compare equal.
pub fn canonical_partition(colors: &[ColorId]) -> Vec<usize> {
    let mut seen = std::collections::HashMap::new();
    colors
        .iter()
        .map(|c| {
            let next = seen.len();
            *seen.entry(*c).or_insert(next)
        })
        .collect()
}

/// `finer ≼ coarser`: vertices equal under `finer` are equal under `coarser`.
pub fn refines(finer: &[ColorId], coarser: &[ColorId]) -> bool {
    let mut image = std::collections::HashMap::new();
    finer
        .iter()
        .zip(coarser)
        .all(|(f, c)| *image.entry(*f).or_insert(*c) == *c)
}

impl ColorHierarchy {
    /// Hierarchy for the initial coloring given by vertex labels.
    pub fn from_labels(labels: &[Label]) -> Self {
        let root = Node {
            parent: None,
            depth: 0,
            iteration: None,
            label: None,
            children: Vec::new(),
            members: (0..labels.len()).collect(),
            split: None,
        };
        let mut nodes = vec![root];
        let mut groups: BTreeMap<Label, Vec<VertexId>> = BTreeMap::new();
        for (v, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(v);
        }
        let mut leaf_of = vec![0; labels.len()];
        let mut label_colors = BTreeMap::new();
        for (label, members) in groups {
            let id = nodes.len();
            for &v in &members {
                leaf_of[v] = id;
            }
            nodes[0].children.push(id);
            label_colors.insert(label, id);
            nodes.push(Node {
                parent: Some(0),
                depth: 1,
                iteration: Some(0),
                label: Some(label),
                children: Vec::new(),
                members,
                split: None,
            });
        }
        Self {
            nodes,
            leaf_of,
            iteration: 0,
            label_colors,
        }
    }

    pub const ROOT: ColorId = 0;

    pub fn vertex_count(&self) -> usize {
        self.leaf_of.len()
    }

    /// Number of refinement iterations that changed the hierarchy.
    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Total number of colors, root included.
    pub fn color_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn colors(&self) -> impl Iterator<Item = ColorId> {
        0..self.nodes.len()
    }

    pub fn leaf_of(&self, v: VertexId) -> ColorId {
        self.leaf_of[v]
    }

    pub fn leaf_colors(&self) -> &[ColorId] {
        &self.leaf_of
    }

    pub fn coloring(&self) -> Coloring {
        Coloring {
            colors: self.leaf_of.clone(),
            iteration: self.iteration,
        }
    }

    /// Current leaf colors in increasing id order.
    pub fn leaves(&self) -> Vec<ColorId> {
        (0..self.nodes.len())
            .filter(|&c| self.nodes[c].children.is_empty() && c != Self::ROOT)
            .collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes[1..]
            .iter()
            .filter(|n| n.children.is_empty())
            .count()
    }

    pub fn is_leaf(&self, c: ColorId) -> bool {
        self.nodes[c].children.is_empty()
    }

    pub fn parent(&self, c: ColorId) -> Option<ColorId> {
        self.nodes[c].parent
    }

    /// Distance from the root: 0 for the root, 1 for initial label colors.
    pub fn depth(&self, c: ColorId) -> usize {
        self.nodes[c].depth
    }

    /// Iteration at which the color was created; `None` for the root.
    pub fn created_at(&self, c: ColorId) -> Option<usize> {
        self.nodes[c].iteration
    }

    pub fn children(&self, c: ColorId) -> &[ColorId] {
        &self.nodes[c].children
    }

    /// Vertices holding color `c` at the iteration it was created, sorted.
    pub fn members(&self, c: ColorId) -> &[VertexId] {
        &self.nodes[c].members
    }

    pub fn split(&self, c: ColorId) -> Option<&Split> {
        self.nodes[c].split.as_ref()
    }

    /// Initial color of a vertex label, if the label occurred.
    pub fn label_color(&self, label: Label) -> Option<ColorId> {
        self.label_colors.get(&label).copied()
    }

    pub fn label_of_color(&self, c: ColorId) -> Option<Label> {
        self.nodes[c].label
    }

    pub fn label_count(&self) -> usize {
        self.label_colors.len()
    }

    /// `ancestor` is `c` or lies on the path from `c` to the root.
    pub fn is_ancestor_or_self(&self, ancestor: ColorId, mut c: ColorId) -> bool {
        if ancestor == Self::ROOT {
            return true;
        }
        let target_depth = self.nodes[ancestor].depth;
        while self.nodes[c].depth > target_depth {
            c = self.nodes[c].parent.expect("non-root has parent");
        }
        c == ancestor
    }

    pub fn lowest_common_ancestor(&self, mut a: ColorId, mut b: ColorId) -> ColorId {
        while self.nodes[a].depth > self.nodes[b].depth {
            a = self.nodes[a].parent.unwrap();
        }
        while self.nodes[b].depth > self.nodes[a].depth {
            b = self.nodes[b].parent.unwrap();
        }
        while a != b {
            a = self.nodes[a].parent.unwrap();
            b = self.nodes[b].parent.unwrap();
        }
        a
    }

    /// Path length between two colors in the hierarchy tree.
    pub fn tree_distance(&self, a: ColorId, b: ColorId) -> usize {
        let lca = self.lowest_common_ancestor(a, b);
        self.nodes[a].depth + self.nodes[b].depth - 2 * self.nodes[lca].depth
    }

    /// Creates children for the given leaf colors and advances the iteration
    /// counter. Each entry is `(parent, groups, rule)` where `groups`
    /// partitions the parent's members into at least two non-empty parts.
    /// Returns the new child ids per entry. An empty input leaves the
    /// hierarchy untouched.
    pub fn apply_splits(
        &mut self,
        mut splits: Vec<(ColorId, Vec<Vec<VertexId>>, SplitRule)>,
    ) -> Vec<Vec<ColorId>> {
        if splits.is_empty() {
            return Vec::new();
        }
        splits.sort_by_key(|s| s.0);
        self.iteration += 1;
        let iteration = self.iteration;
        let mut created = Vec::with_capacity(splits.len());
        for (parent, groups, rule) in splits {
            debug_assert!(self.is_leaf(parent), "only leaves can be split");
            debug_assert!(groups.len() >= 2, "a split needs two parts");
            debug_assert_eq!(
                groups.iter().map(Vec::len).sum::<usize>(),
                self.nodes[parent].members.len()
            );
            let depth = self.nodes[parent].depth + 1;
            let mut ids = Vec::with_capacity(groups.len());
            for mut members in groups {
                debug_assert!(!members.is_empty());
                members.sort_unstable();
                let id = self.nodes.len();
                for &v in &members {
                    debug_assert_eq!(self.leaf_of[v], parent);
                    self.leaf_of[v] = id;
                }
                self.nodes.push(Node {
                    parent: Some(parent),
                    depth,
                    iteration: Some(iteration),
                    label: None,
                    children: Vec::new(),
                    members,
                    split: None,
                });
                ids.push(id);
            }
            self.nodes[parent].children = ids.clone();
            self.nodes[parent].split = Some(Split { iteration, rule });
            created.push(ids);
        }
        created
    }

    /// Serializable view of the tree; `with_vertices` adds member lists.
    pub fn export(&self, with_vertices: bool) -> HierarchyExport {
        HierarchyExport {
            vertex_count: self.vertex_count(),
            iterations: self.iteration,
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, n)| ExportNode {
                    id,
                    parent: n.parent,
                    depth: n.depth,
                    iteration: n.iteration,
                    label: n.label,
                    member_count: n.members.len(),
                    members: with_vertices.then(|| n.members.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyExport {
    pub vertex_count: usize,
    pub iterations: usize,
    pub nodes: Vec<ExportNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExportNode {
    pub id: ColorId,
    pub parent: Option<ColorId>,
    pub depth: usize,
    pub iteration: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<Label>,
    pub member_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<VertexId>>,
}
