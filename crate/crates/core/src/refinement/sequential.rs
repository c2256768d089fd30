//! Sequential refinement driven by a stack of splitter colors.

use std::collections::BTreeMap;

use crate::graph::{Graph, VertexId};

use super::driver::RenepUpdate;
use super::hierarchy::{ColorHierarchy, ColorId, SplitRule};

/// Refines by one splitter color per iteration.
///
/// Each step pops colors until one strictly refines the current coloring:
/// every leaf color is split by the number of neighbors a vertex has inside
/// the popped color's vertex set. Colors that do not split anything are
/// skipped. After a split all children are pushed except the largest child
/// of each split color (ties: smallest id), in increasing id order.
#[derive(Debug, Clone, Default)]
pub struct SequentialWl {
    stack: Vec<ColorId>,
    started: bool,
}

impl SequentialWl {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts from an explicit stack instead of the initial label colors.
    pub fn with_stack(stack: Vec<ColorId>) -> Self {
        Self {
            stack,
            started: true,
        }
    }

    pub fn stack(&self) -> &[ColorId] {
        &self.stack
    }
}

fn splits_by_splitter(
    graph: &Graph,
    hierarchy: &ColorHierarchy,
    splitter: ColorId,
) -> Vec<(ColorId, Vec<Vec<VertexId>>, SplitRule)> {
    let mut count: BTreeMap<VertexId, u32> = BTreeMap::new();
    for &u in hierarchy.members(splitter) {
        for v in graph.neighbors(u) {
            *count.entry(v).or_default() += 1;
        }
    }
    let mut touched: Vec<ColorId> = count.keys().map(|&v| hierarchy.leaf_of(v)).collect();
    touched.sort_unstable();
    touched.dedup();

    let mut splits = Vec::new();
    for color in touched {
        let members = hierarchy.members(color);
        if members.len() < 2 {
            continue;
        }
        let mut groups: BTreeMap<u32, Vec<VertexId>> = BTreeMap::new();
        for &v in members {
            groups
                .entry(count.get(&v).copied().unwrap_or(0))
                .or_default()
                .push(v);
        }
        if groups.len() > 1 {
            let (counts, parts): (Vec<u32>, Vec<Vec<VertexId>>) = groups.into_iter().unzip();
            splits.push((
                color,
                parts,
                SplitRule::NeighborCount {
                    color: splitter,
                    counts,
                },
            ));
        }
    }
    splits
}

impl RenepUpdate for SequentialWl {
    fn refine(&mut self, graph: &Graph, hierarchy: &mut ColorHierarchy) -> bool {
        if !self.started {
            self.stack = hierarchy.children(ColorHierarchy::ROOT).to_vec();
            self.started = true;
        }
        while let Some(splitter) = self.stack.pop() {
            let splits = splits_by_splitter(graph, hierarchy, splitter);
            if splits.is_empty() {
                continue;
            }
            for children in hierarchy.apply_splits(splits) {
                let largest = children
                    .iter()
                    .copied()
                    .max_by(|&a, &b| {
                        hierarchy
                            .members(a)
                            .len()
                            .cmp(&hierarchy.members(b).len())
                            .then(b.cmp(&a))
                    })
                    .expect("split has children");
                self.stack
                    .extend(children.into_iter().filter(|&c| c != largest));
            }
            return true;
        }
        false
    }

    fn name(&self) -> String {
        "sequential".into()
    }
}

/// One sequential step on an explicit stack.
pub fn sequential_wl_refine(
    graph: &Graph,
    hierarchy: &ColorHierarchy,
    stack: Vec<ColorId>,
) -> (ColorHierarchy, Vec<ColorId>) {
    let mut next = hierarchy.clone();
    let mut update = SequentialWl::with_stack(stack);
    update.refine(graph, &mut next);
    (next, update.stack)
}
