//! Prediction of transcriptome-wide gene expression from histology tile
//! images, organised around co-expression clusters.
//!
//! The crate covers the full desk-scale workflow: expression ingestion and
//! filtering, co-expression clustering with Ward linkage, tissue masking and
//! Macenko stain normalisation of tile images, a multi-output training
//! harness with weighted tile sampling, nested cross-validation with FDR
//! gating, and downstream signature / survival / enrichment analyses.
//!
//! Numeric kernels are generic over the scalar type via [`Scalar`]
//! (`f32` or `f64`); pipeline-level code uses the [`Real`] alias.

pub mod cluster;
pub mod downstream;
pub mod eval;
pub mod expression;
pub mod pipeline;
pub mod preprocess;
pub mod roi;
pub mod seed;
pub mod stats;
pub mod synth;
pub mod table;
pub mod train;

mod scalar;

pub use scalar::Scalar;

/// Scalar used by the pipeline-level code paths.
pub type Real = f64;

/// Dendrogram over the default scalar.
pub type RealDendrogram = cluster::Dendrogram<Real>;
/// Stain profile over the default scalar.
pub type RealStainProfile = preprocess::StainProfile<Real>;
/// Cox fit result over the default scalar.
pub type RealCoxResult = downstream::CoxResult<Real>;
