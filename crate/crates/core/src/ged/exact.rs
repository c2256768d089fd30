use crate::graph::{Graph, VertexId};
use crate::scalar::Cost;

use super::{EditCostModel, GedError};

/// Largest `|V(g)| + |V(h)|` accepted by [`exact_ged`].
pub const EXACT_GED_MAX_VERTICES: usize = 14;

struct Search<'a, T> {
    g: &'a Graph,
    h: &'a Graph,
    costs: &'a EditCostModel<T>,
    map: Vec<Option<VertexId>>,
    used: Vec<bool>,
    best: Option<T>,
}

impl<T: Cost> Search<'_, T> {
    /// Cost added by fixing the image of `u`, given the images of `0..u`.
    fn step_cost(&self, u: VertexId, target: Option<VertexId>) -> T {
        let c = self.costs;
        let mut cost = match target {
            None => c.vertex_delete,
            Some(v) if self.g.vertex_label(u) != self.h.vertex_label(v) => c.vertex_relabel,
            Some(_) => T::zero(),
        };
        for w in 0..u {
            let ge = self.g.edge_between(u, w);
            let he = match (target, self.map[w]) {
                (Some(x), Some(y)) => self.h.edge_between(x, y),
                _ => None,
            };
            cost = cost
                + match (ge, he) {
                    (Some(e), Some(f)) => match (self.g.edge_label(e), self.h.edge_label(f)) {
                        (Some(a), Some(b)) if a != b => c.edge_relabel,
                        _ => T::zero(),
                    },
                    (Some(_), None) => c.edge_delete,
                    (None, Some(_)) => c.edge_insert,
                    (None, None) => T::zero(),
                };
        }
        cost
    }

    /// Insertion cost of every `h` vertex left unmatched and of every `h` edge
    /// touching one.
    fn completion_cost(&self) -> T {
        let c = self.costs;
        let mut cost = T::zero();
        for v in 0..self.h.vertex_count() {
            if !self.used[v] {
                cost = cost + c.vertex_insert;
            }
        }
        for &(x, y) in self.h.edges() {
            if !self.used[x] || !self.used[y] {
                cost = cost + c.edge_insert;
            }
        }
        cost
    }

    fn improves(&self, cost: T) -> bool {
        self.best.is_none_or(|b| cost < b)
    }

    fn dfs(&mut self, u: VertexId, acc: T) {
        if !self.improves(acc) {
            return;
        }
        if u == self.g.vertex_count() {
            let total = acc + self.completion_cost();
            if self.improves(total) {
                self.best = Some(total);
            }
            return;
        }
        for v in 0..self.h.vertex_count() {
            if self.used[v] {
                continue;
            }
            let step = self.step_cost(u, Some(v));
            self.used[v] = true;
            self.map[u] = Some(v);
            self.dfs(u + 1, acc + step);
            self.used[v] = false;
        }
        let step = self.step_cost(u, None);
        self.map[u] = None;
        self.dfs(u + 1, acc + step);
    }
}

/// Minimum, over all injective partial vertex maps from `g` to `h`, of the
/// cost of the edit path that map induces. Exact for non-negative costs
/// satisfying the triangle inequality; used as an oracle on small graphs.
pub fn exact_ged<T: Cost>(g: &Graph, h: &Graph, costs: &EditCostModel<T>) -> Result<T, GedError> {
    let n = g.vertex_count() + h.vertex_count();
    if n > EXACT_GED_MAX_VERTICES {
        return Err(GedError::TooLarge {
            vertices: n,
            limit: EXACT_GED_MAX_VERTICES,
        });
    }
    costs.validate()?;
    let mut s = Search {
        g,
        h,
        costs,
        map: vec![None; g.vertex_count()],
        used: vec![false; h.vertex_count()],
        best: None,
    };
    s.dfs(0, T::zero());
    Ok(s.best.unwrap_or_else(T::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3(labels: Vec<u32>) -> Graph {
        Graph::new(labels, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn small_cases() {
        let unit = EditCostModel::<u32>::default();
        let p3 = Graph::unlabeled(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(exact_ged(&p3, &p3, &unit), Ok(0));
        assert_eq!(exact_ged(&k3(vec![0, 0, 0]), &k3(vec![0, 1, 0]), &unit), Ok(1));
        assert_eq!(exact_ged(&p3, &k3(vec![0, 0, 0]), &unit), Ok(1));
        assert_eq!(exact_ged(&k3(vec![0, 0, 0]), &p3, &unit), Ok(1));
    }

    #[test]
    fn empty_graphs() {
        let unit = EditCostModel::<u32>::default();
        let e = Graph::unlabeled(0, []).unwrap();
        let p2 = Graph::unlabeled(2, [(0, 1)]).unwrap();
        assert_eq!(exact_ged(&e, &e, &unit), Ok(0));
        assert_eq!(exact_ged(&e, &p2, &unit), Ok(3));
        assert_eq!(exact_ged(&p2, &e, &unit), Ok(3));
    }

    #[test]
    fn size_guard() {
        let g = Graph::unlabeled(8, []).unwrap();
        assert_eq!(
            exact_ged(&g, &g, &EditCostModel::<f64>::default()),
            Err(GedError::TooLarge {
                vertices: 16,
                limit: 14
            })
        );
    }
}
