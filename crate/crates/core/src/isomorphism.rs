//! Exact isomorphism test: stable colors of the disjoint union prune a
//! backtracking search over vertex maps.

use crate::dataset::disjoint_union;
use crate::graph::{Graph, VertexId};
use crate::refinement::{refine_to_fixpoint, ColorId, WlUpdate};

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    cg: Vec<ColorId>,
    ch: Vec<ColorId>,
    order: Vec<VertexId>,
    map: Vec<Option<VertexId>>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn consistent(&self, u: VertexId, v: VertexId) -> bool {
        self.g.incident(u).iter().all(|&(w, e)| match self.map[w] {
            None => true,
            Some(x) => self
                .h
                .edge_between(v, x)
                .is_some_and(|f| self.g.edge_label(e) == self.h.edge_label(f)),
        }) && self
            .h
            .neighbors(v)
            .filter(|&x| self.used[x])
            .count()
            == self
                .g
                .neighbors(u)
                .filter(|&w| self.map[w].is_some())
                .count()
    }

    fn search(&mut self, depth: usize) -> bool {
        let Some(&u) = self.order.get(depth) else {
            return true;
        };
        for v in 0..self.h.vertex_count() {
            if self.used[v] || self.ch[v] != self.cg[u] || !self.consistent(u, v) {
                continue;
            }
            self.map[u] = Some(v);
            self.used[v] = true;
            if self.search(depth + 1) {
                return true;
            }
            self.map[u] = None;
            self.used[v] = false;
        }
        false
    }
}

/// An isomorphism from `g` to `h` as `map[u] = v`, if one exists. Vertex and
/// edge labels must be preserved.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<VertexId>> {
    if g.vertex_count() != h.vertex_count()
        || g.edge_count() != h.edge_count()
        || g.has_edge_labels() != h.has_edge_labels()
        || sorted(g.vertex_labels()) != sorted(h.vertex_labels())
        || sorted(&g.degree_sequence()) != sorted(&h.degree_sequence())
    {
        return None;
    }
    let n = g.vertex_count();
    let union = disjoint_union(&[g.clone(), h.clone()]);
    let r = refine_to_fixpoint(&union.graph, union.graph.vertex_labels(), &mut WlUpdate);
    let colors: Vec<ColorId> = (0..2 * n).map(|v| r.hierarchy.leaf_of(v)).collect();
    let (cg, ch) = colors.split_at(n);
    if sorted(cg) != sorted(ch) {
        return None;
    }

    // smallest color classes first, then grow along edges so that adjacency
    // constraints bite early
    let mut class_size = std::collections::HashMap::new();
    for &c in cg {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&u| !placed[u])
            .min_by_key(|&u| {
                let linked = g.neighbors(u).filter(|&w| placed[w]).count();
                (usize::from(linked == 0 && !order.is_empty()), class_size[&cg[u]], u)
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }

    let mut m = Matcher {
        g,
        h,
        cg: cg.to_vec(),
        ch: ch.to_vec(),
        order,
        map: vec![None; n],
        used: vec![false; n],
    };
    m.search(0)
        .then(|| m.map.into_iter().map(|v| v.expect("complete map")).collect())
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}
