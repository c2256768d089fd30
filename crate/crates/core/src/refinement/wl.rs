//! Classical color refinement expressed as a hierarchy update.

use rayon::prelude::*;

use crate::graph::Graph;

use super::driver::RenepUpdate;
use super::hierarchy::{ColorHierarchy, ColorId, SplitRule};
use super::signature::{group_by_signature, SignatureGroups};

/// Splits every color into one child per distinct neighbor signature.
#[derive(Debug, Clone, Copy, Default)]
pub struct WlUpdate;

impl RenepUpdate for WlUpdate {
    fn refine(&mut self, graph: &Graph, hierarchy: &mut ColorHierarchy) -> bool {
        let colors = hierarchy.leaf_colors();
        let splits: Vec<_> = hierarchy
            .leaves()
            .into_par_iter()
            .filter(|&c| hierarchy.members(c).len() > 1)
            .filter_map(|c| {
                let groups = group_by_signature(graph, colors, hierarchy.members(c));
                (groups.distinct() > 1).then(|| one_child_per_signature(c, groups))
            })
            .collect();
        !hierarchy.apply_splits(splits).is_empty()
    }

    fn name(&self) -> String {
        "wl".into()
    }
}

pub(crate) fn one_child_per_signature(
    color: ColorId,
    groups: SignatureGroups,
) -> (ColorId, Vec<Vec<usize>>, SplitRule) {
    let centroids = groups
        .vectors
        .iter()
        .map(|v| v.iter().map(|&x| f64::from(x)).collect())
        .collect();
    let exact = groups
        .vectors
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    (
        color,
        groups.members,
        SplitRule::Signature {
            dims: groups.dims,
            centroids,
            exact,
        },
    )
}

/// One classical refinement step. A stable coloring yields an identical
/// hierarchy.
pub fn wl_refine(graph: &Graph, hierarchy: &ColorHierarchy) -> ColorHierarchy {
    let mut next = hierarchy.clone();
    WlUpdate.refine(graph, &mut next);
    next
}
