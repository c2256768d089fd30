//! Gradual Weisfeiler-Leman refinement and the graph similarity measures
//! built on it.
//!
//! * [`refinement`]: classical, sequential and k-means based color refinement
//!   producing a [`ColorHierarchy`],
//! * [`kernels`]: subtree and optimal assignment kernels, gram matrices and
//!   sparse feature export,
//! * [`ged`]: linear-time tree-metric assignments, derived edit paths and a
//!   graph edit distance upper bound,
//! * [`datagen`]: synthetic block graphs,
//! * [`tudataset`]: the TUDataset text format.

pub mod dataset;
pub mod datagen;
pub mod export;
pub mod ged;
pub mod graph;
pub mod isomorphism;
pub mod kernels;
pub mod refinement;
pub mod scalar;
pub mod tudataset;

pub use dataset::{disjoint_union, Dataset, DatasetError, DatasetStats, DisjointUnion};
pub use graph::{Graph, GraphError, Label, VertexId};
pub use refinement::{ColorHierarchy, ColorId, Coloring, Refinement, RenepUpdate, UpdateSpec};
pub use scalar::{Cost, Scalar};

/// Double precision k-means parameters.
pub type KMeansParams = refinement::ClusteringParams<f64>;
/// Double precision k-means update.
pub type KMeansUpdate = refinement::KMeansRenep<f64>;
/// Unit-cost edit model in double precision.
pub type CostModel = ged::EditCostModel<f64>;
/// Kernel matrix in double precision.
pub type Gram = kernels::GramMatrix<f64>;
