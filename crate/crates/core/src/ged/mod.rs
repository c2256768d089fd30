//! Graph edit distance upper bounds from tree-metric vertex assignments, an
//! exhaustive oracle for small graphs and nearest-neighbor evaluation.

mod assignment;
mod edit;
mod exact;
mod gwlt;
mod knn;

use thiserror::Error;

pub use assignment::{tree_metric_assignment, Assignment};
pub use edit::{
    apply_edit_path, derive_edit_path, edit_cost_from_assignment, EditCostModel, EditOp, EditPath,
};
pub use exact::{exact_ged, EXACT_GED_MAX_VERTICES};
pub use gwlt::{
    gwlt_assignment, gwlt_distance, gwlt_distance_matrix, gwlt_edit_path, gwlt_hierarchy,
    gwlt_pair, stream_distance_matrix,
};
pub use knn::{knn_classify, ClassAccuracy, EvalSplit, KnnReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GedError {
    #[error("vertex {vertex} is not covered by the hierarchy ({vertex_count} vertices)")]
    UnknownVertex { vertex: usize, vertex_count: usize },
    #[error("exact edit distance refused: {vertices} vertices exceed the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("cost {0} is negative")]
    NegativeCost(&'static str),
    #[error("edit path step {step}: {message}")]
    InvalidEditPath { step: usize, message: String },
    #[error("distance matrix must be {expected}x{expected}, found {rows} rows or ragged rows")]
    MatrixShape { expected: usize, rows: usize },
    #[error("graph index {0} out of range")]
    UnknownGraph(usize),
    #[error("k = {k} must be positive and below the number of graphs ({size})")]
    InvalidK { k: usize, size: usize },
    #[error("write failed: {0}")]
    Io(String),
}

impl From<std::io::Error> for GedError {
    fn from(e: std::io::Error) -> Self {
        GedError::Io(e.to_string())
    }
}
