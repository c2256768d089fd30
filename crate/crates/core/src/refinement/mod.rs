//! Color refinement: classical, sequential and gradual (k-means) updates over
//! a shared color hierarchy.

mod driver;
mod gradual;
mod hierarchy;
mod inductive;
pub mod kmeans;
mod sequential;
mod signature;
mod wl;

pub use driver::{is_stable, refine_to_depth, refine_to_fixpoint, Refinement, RenepUpdate, UpdateSpec};
pub use gradual::{kmeans_renep, KMeansRenep};
pub use hierarchy::{
    canonical_partition, refines, ColorHierarchy, ColorId, Coloring, ExportNode, HierarchyExport,
    SigKey, Split, SplitRule, UNSEEN,
};
pub use inductive::inductive_assign;
pub use kmeans::{ClusteringParams, Seeding};
pub use sequential::{sequential_wl_refine, SequentialWl};
pub use signature::{neighbor_counts, neighbor_signature, NeighborSignature};
pub use wl::{wl_refine, WlUpdate};
