//! Rank statistics, multiple-testing control, and resampling utilities.

mod adjust;
mod auc;
mod bootstrap;
mod ks;
mod pvalue;
mod quantile;
mod rank;

pub use adjust::bh_adjust;
pub use auc::roc_auc;
pub use bootstrap::{bootstrap_ci, BootstrapInterval};
pub use ks::ks_two_sample;
pub use pvalue::spearman_pvalue;
pub use quantile::quantile_type7;
pub use rank::{midranks, pearson, spearman_rho};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("input vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },
    #[error("constant vector: statistic undefined")]
    ConstantVector,
    #[error("non-finite value at position {0}")]
    NonFinite(usize),
    #[error("empty input")]
    Empty,
    #[error("both outcome classes must be present")]
    SingleClass,
    #[error("correlation out of range: {0}")]
    InvalidCorrelation(f64),
    #[error("need at least {needed} bootstrap resamples, got {got}")]
    TooFewResamples { needed: usize, got: usize },
    #[error("metric undefined on too many resamples ({0} redraws exhausted)")]
    DegenerateResamples(usize),
}

pub(crate) fn check_finite<F: crate::Scalar>(values: &[F]) -> Result<(), StatsError> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(StatsError::NonFinite(i)),
        None => Ok(()),
    }
}
