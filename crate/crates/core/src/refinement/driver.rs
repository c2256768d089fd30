use std::collections::HashMap;

use crate::graph::{Graph, Label};

use super::gradual::KMeansRenep;
use super::hierarchy::{ColorHierarchy, ColorId, Coloring};
use super::kmeans::ClusteringParams;
use super::sequential::SequentialWl;
use super::signature::neighbor_counts;
use super::wl::WlUpdate;

/// A refining, neighborhood preserving hierarchy update.
///
/// Implementations must
/// 1. only add nodes below current leaves,
/// 2. leave the hierarchy untouched exactly when the leaf coloring is stable,
/// 3. strictly refine the leaf coloring whenever they add nodes,
/// 4. keep equally colored vertices with equal neighbor signatures together.
pub trait RenepUpdate {
    /// Applies one iteration in place. Returns `false` iff nothing changed,
    /// which means the coloring was stable.
    fn refine(&mut self, graph: &Graph, hierarchy: &mut ColorHierarchy) -> bool;

    fn name(&self) -> String;
}

impl<U: RenepUpdate + ?Sized> RenepUpdate for Box<U> {
    fn refine(&mut self, graph: &Graph, hierarchy: &mut ColorHierarchy) -> bool {
        (**self).refine(graph, hierarchy)
    }

    fn name(&self) -> String {
        (**self).name()
    }
}

/// Serializable choice of update function.
#[derive(Debug, Clone, PartialEq)]
pub enum UpdateSpec {
    Wl,
    KMeans(ClusteringParams<f64>),
    Sequential,
}

impl UpdateSpec {
    pub fn build(&self) -> Box<dyn RenepUpdate + Send> {
        match self {
            UpdateSpec::Wl => Box::new(WlUpdate),
            UpdateSpec::KMeans(p) => Box::new(KMeansRenep::new(p.clone())),
            UpdateSpec::Sequential => Box::new(SequentialWl::new()),
        }
    }
}

/// Hierarchy plus the colorings `c_0 … c_h`.
#[derive(Debug, Clone)]
pub struct Refinement {
    pub hierarchy: ColorHierarchy,
    pub colorings: Vec<Coloring>,
    /// Iteration at which the stable coloring was detected, if it was.
    pub stable_at: Option<usize>,
}

impl Refinement {
    pub fn depth(&self) -> usize {
        self.colorings.len() - 1
    }

    /// Number of distinct colors in each coloring.
    pub fn color_counts(&self) -> Vec<usize> {
        self.colorings.iter().map(Coloring::color_count).collect()
    }
}

/// Runs `h` iterations of `update` starting from the label coloring.
/// Once the coloring is stable the remaining colorings repeat it.
pub fn refine_to_depth<U: RenepUpdate + ?Sized>(
    graph: &Graph,
    initial_labels: &[Label],
    update: &mut U,
    h: usize,
) -> Refinement {
    run(graph, initial_labels, update, Some(h))
}

/// Runs `update` until the coloring is stable.
pub fn refine_to_fixpoint<U: RenepUpdate + ?Sized>(
    graph: &Graph,
    initial_labels: &[Label],
    update: &mut U,
) -> Refinement {
    run(graph, initial_labels, update, None)
}

fn run<U: RenepUpdate + ?Sized>(
    graph: &Graph,
    initial_labels: &[Label],
    update: &mut U,
    h: Option<usize>,
) -> Refinement {
    assert_eq!(initial_labels.len(), graph.vertex_count());
    let mut hierarchy = ColorHierarchy::from_labels(initial_labels);
    let mut colorings = vec![hierarchy.coloring()];
    let mut stable_at = None;
    let mut i = 0;
    while h.is_none_or(|h| i < h) {
        i += 1;
        if stable_at.is_none() && !update.refine(graph, &mut hierarchy) {
            stable_at = Some(i - 1);
        }
        match (stable_at, h) {
            (Some(_), None) => break,
            (Some(_), Some(_)) => {
                let mut c = colorings.last().unwrap().clone();
                c.iteration = i;
                colorings.push(c);
            }
            (None, _) => {
                let mut c = hierarchy.coloring();
                c.iteration = i;
                colorings.push(c);
            }
        }
    }
    Refinement {
        hierarchy,
        colorings,
        stable_at,
    }
}

/// True iff equally colored vertices have equal neighbor color multisets.
pub fn is_stable(graph: &Graph, coloring: &[ColorId]) -> bool {
    let mut seen: HashMap<ColorId, Vec<_>> = HashMap::new();
    (0..graph.vertex_count()).all(|v| {
        let sig = neighbor_counts(graph, coloring, v);
        match seen.get(&coloring[v]) {
            Some(first) => *first == sig,
            None => {
                seen.insert(coloring[v], sig);
                true
            }
        }
    })
}
