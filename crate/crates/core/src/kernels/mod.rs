//! Subtree and optimal-assignment kernels over (iteration, color) features.

mod features;
mod gram;

pub use features::{
    feature_key, oa_kernel, oa_kernel_from_features, subtree_features, subtree_kernel,
    SparseFeatureVector,
};
pub use gram::{dataset_features, gram, gram_from_features, GramMatrix, KernelError, KernelKind};
