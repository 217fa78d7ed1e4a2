//! Co-expression distance, Ward agglomeration, tree cutting, and the
//! size-matched random reassignment baseline.

mod assignment;
mod matrix;
mod stats;
mod ward;

pub use assignment::{random_reassignment, ClusterAssignment, Provenance};
pub use matrix::{spearman_matrix, Condensed, SymMatrix};
pub use stats::{cluster_correlation_stats, ClusterCorrelationStats};
pub use ward::{cut_dendrogram, ward_linkage, Dendrogram, Merge};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClusterError {
    #[error("transcript {index} ('{id}') is constant: correlation undefined")]
    ConstantTranscript { index: usize, id: String },
    #[error("need at least {needed} patients, got {got}")]
    TooFewPatients { needed: usize, got: usize },
    #[error("non-finite distance between observations {0} and {1}")]
    NonFiniteDistance(usize, usize),
    #[error("cluster count {k} out of range for {n} leaves")]
    InvalidK { k: usize, n: usize },
    #[error("distance matrix size {got} does not match {n} observations")]
    SizeMismatch { got: usize, n: usize },
    #[error("assignment does not cover matrix of {0} observations")]
    CoverageMismatch(usize),
    #[error("cluster {0} is empty")]
    EmptyCluster(usize),
}

/// Co-expression distance `d = 1 - |rho|`, in `[0, 1]`.
pub fn correlation_distance<F: crate::Scalar>(rho: F) -> F {
    debug_assert!(rho.abs() <= F::one() + F::epsilon());
    (F::one() - rho.abs()).max(F::zero())
}
