//! Coloring graphs that were not part of the refinement input by replaying
//! the recorded splits.

use crate::graph::Graph;

use super::hierarchy::{ColorHierarchy, ColorId, Coloring, SplitRule, UNSEEN};
use super::signature::{densify, neighbor_counts};

fn nearest_centroid(point: &[u32], centroids: &[Vec<f64>]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, c) in centroids.iter().enumerate() {
        let d: f64 = point
            .iter()
            .zip(c)
            .map(|(&x, &y)| (f64::from(x) - y).powi(2))
            .sum();
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    best
}

/// Colors `graph` top-down through `hierarchy`.
///
/// Vertices start at the color of their label (or [`UNSEEN`] for labels the
/// hierarchy never saw). In iteration `i`, a vertex whose color was split in
/// iteration `i` moves to the child its neighbor signature belongs to: the
/// recorded child for a signature seen during refinement, otherwise the child
/// with the nearest centroid. Returns one coloring per hierarchy iteration.
pub fn inductive_assign(graph: &Graph, hierarchy: &ColorHierarchy) -> Vec<Coloring> {
    let mut colors: Vec<ColorId> = graph
        .vertex_labels()
        .iter()
        .map(|&l| hierarchy.label_color(l).unwrap_or(UNSEEN))
        .collect();
    let mut out = vec![Coloring {
        colors: colors.clone(),
        iteration: 0,
    }];
    for iteration in 1..=hierarchy.iteration() {
        let mut next = colors.clone();
        for (v, &color) in colors.iter().enumerate() {
            if color == UNSEEN {
                continue;
            }
            let Some(split) = hierarchy.split(color).filter(|s| s.iteration == iteration) else {
                continue;
            };
            let child = match &split.rule {
                SplitRule::Signature {
                    dims,
                    centroids,
                    exact,
                } => {
                    let point = densify(dims, &neighbor_counts(graph, &colors, v));
                    exact
                        .get(&point)
                        .copied()
                        .unwrap_or_else(|| nearest_centroid(&point, centroids))
                }
                SplitRule::NeighborCount {
                    color: splitter,
                    counts,
                } => {
                    let n = graph
                        .neighbors(v)
                        .filter(|&u| {
                            colors[u] != UNSEEN && hierarchy.is_ancestor_or_self(*splitter, colors[u])
                        })
                        .count() as i64;
                    (0..counts.len())
                        .min_by_key(|&i| (i64::from(counts[i]) - n).abs())
                        .unwrap_or(0)
                }
            };
            next[v] = hierarchy.children(color)[child];
        }
        colors = next;
        out.push(Coloring {
            colors: colors.clone(),
            iteration,
        });
    }
    out
}
