use std::io::Write;

use rayon::prelude::*;

use crate::dataset::{disjoint_union, DisjointUnion};
use crate::export::MatrixCsvWriter;
use crate::graph::Graph;
use crate::refinement::{refine_to_depth, refine_to_fixpoint, ColorHierarchy, UpdateSpec};
use crate::scalar::Cost;

use super::{derive_edit_path, tree_metric_assignment, Assignment, EditCostModel, EditPath, GedError};

/// Tree-metric assignment between members `gi` and `hi` of `union`, in
/// member-local vertex ids.
pub fn gwlt_assignment(
    union: &DisjointUnion,
    hierarchy: &ColorHierarchy,
    gi: usize,
    hi: usize,
) -> Result<Assignment, GedError> {
    let (rg, rh) = (union.range(gi), union.range(hi));
    let vg: Vec<_> = rg.clone().collect();
    let vh: Vec<_> = rh.clone().collect();
    let a = tree_metric_assignment(hierarchy, &vg, &vh)?;
    Ok(a.map(|u| u - rg.start, |v| v - rh.start))
}

/// Edit path cost between members `gi` and `hi` of `union` derived from their
/// tree-metric assignment in `hierarchy`.
pub fn gwlt_distance<T: Cost>(
    graphs: &[Graph],
    union: &DisjointUnion,
    hierarchy: &ColorHierarchy,
    gi: usize,
    hi: usize,
    costs: &EditCostModel<T>,
) -> Result<T, GedError> {
    Ok(gwlt_edit_path(graphs, union, hierarchy, gi, hi)?.cost(costs))
}

pub fn gwlt_edit_path(
    graphs: &[Graph],
    union: &DisjointUnion,
    hierarchy: &ColorHierarchy,
    gi: usize,
    hi: usize,
) -> Result<EditPath, GedError> {
    let a = gwlt_assignment(union, hierarchy, gi, hi)?;
    Ok(derive_edit_path(&graphs[gi], &graphs[hi], &a))
}

/// Refines the disjoint union of `graphs` with `update`, either for `h`
/// iterations or to the fixpoint.
pub fn gwlt_hierarchy(
    graphs: &[Graph],
    update: &UpdateSpec,
    h: Option<usize>,
) -> (DisjointUnion, ColorHierarchy) {
    let union = disjoint_union(graphs);
    let mut u = update.build();
    let r = match h {
        Some(h) => refine_to_depth(&union.graph, union.graph.vertex_labels(), &mut u, h),
        None => refine_to_fixpoint(&union.graph, union.graph.vertex_labels(), &mut u),
    };
    (union, r.hierarchy)
}

/// Distance between two standalone graphs using a hierarchy refined on their
/// union only.
pub fn gwlt_pair<T: Cost>(
    g: &Graph,
    h: &Graph,
    update: &UpdateSpec,
    costs: &EditCostModel<T>,
) -> Result<(T, EditPath), GedError> {
    let graphs = [g.clone(), h.clone()];
    let (union, hierarchy) = gwlt_hierarchy(&graphs, update, None);
    let path = gwlt_edit_path(&graphs, &union, &hierarchy, 0, 1)?;
    Ok((path.cost(costs), path))
}

fn distance_row<T: Cost>(
    graphs: &[Graph],
    union: &DisjointUnion,
    hierarchy: &ColorHierarchy,
    i: usize,
    costs: &EditCostModel<T>,
) -> Result<Vec<T>, GedError> {
    (0..graphs.len())
        .map(|j| {
            if i == j {
                Ok(T::zero())
            } else {
                gwlt_distance(graphs, union, hierarchy, i, j, costs)
            }
        })
        .collect()
}

pub fn gwlt_distance_matrix<T: Cost>(
    graphs: &[Graph],
    union: &DisjointUnion,
    hierarchy: &ColorHierarchy,
    costs: &EditCostModel<T>,
) -> Result<Vec<Vec<T>>, GedError> {
    (0..graphs.len())
        .into_par_iter()
        .map(|i| distance_row(graphs, union, hierarchy, i, costs))
        .collect()
}

/// Computes the distance matrix in blocks of `block_rows` rows, each block in
/// parallel, and writes every block before starting the next.
pub fn stream_distance_matrix<T: Cost, W: Write>(
    graphs: &[Graph],
    union: &DisjointUnion,
    hierarchy: &ColorHierarchy,
    costs: &EditCostModel<T>,
    out: &mut MatrixCsvWriter<W>,
    block_rows: usize,
) -> Result<(), GedError> {
    let n = graphs.len();
    let block_rows = block_rows.max(1);
    for start in (0..n).step_by(block_rows) {
        let rows: Vec<Vec<T>> = (start..(start + block_rows).min(n))
            .into_par_iter()
            .map(|i| distance_row(graphs, union, hierarchy, i, costs))
            .collect::<Result<_, _>>()?;
        for r in &rows {
            out.write_row(r)?;
        }
    }
    Ok(())
}
