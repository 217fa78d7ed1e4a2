//! Expression matrix ingestion, filtering, normalisation and
//! standardisation, plus the clinical patient record.

mod dataset;
mod standardize;
mod transform;

pub use dataset::{load_expression, ExpressionDataset, ExpressionTablePaths, PatientRecord};
pub use standardize::{
    apply_standardization, fit_standardization, invert_standardization, StandardizationStats,
};
pub use transform::log2_transform;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExpressionError {
    #[error(transparent)]
    Table(#[from] crate::table::TableError),
    #[error("counts and normalized tables disagree: {0}")]
    TableMismatch(String),
    #[error("unmatched patient '{0}' (present in matrices, absent from clinical table)")]
    UnmatchedPatient(String),
    #[error("duplicate patient id '{0}'")]
    DuplicatePatient(String),
    #[error("patient '{patient}': invalid {field}: {message}")]
    InvalidClinical {
        patient: String,
        field: &'static str,
        message: String,
    },
    #[error("counts matrix has negative or non-integer cell for patient {patient}, transcript {transcript}")]
    InvalidCount { patient: String, transcript: String },
    #[error("no transcripts retained")]
    EmptyResult,
    #[error("min_fraction must be in (0, 1], got {0}")]
    InvalidFraction(f64),
    #[error("negative expression value at position {0}")]
    NegativeValue(usize),
    #[error("pseudocount must be positive when zeros are present")]
    ZeroWithoutPseudocount,
    #[error("transcript '{0}' has zero variance on the training patients")]
    ZeroVariance(String),
    #[error("need at least 2 training patients, got {0}")]
    TooFewPatients(usize),
    #[error("transcript count mismatch: stats cover {stats}, data has {data}")]
    StatsMismatch { stats: usize, data: usize },
}

/// Filter transcripts by minimum count prevalence: transcript `t` is kept
/// iff at least `ceil(min_fraction * n_patients)` patients have
/// `counts[p, t] >= min_count`.
pub fn filter_transcripts(
    ds: &ExpressionDataset,
    min_count: u32,
    min_fraction: f64,
) -> Result<ExpressionDataset, ExpressionError> {
    if !(min_fraction > 0.0 && min_fraction <= 1.0) {
        return Err(ExpressionError::InvalidFraction(min_fraction));
    }
    let n_patients = ds.n_patients();
    let needed = (min_fraction * n_patients as f64).ceil() as usize;
    let keep: Vec<usize> = (0..ds.n_transcripts())
        .filter(|&t| {
            let prevalent = (0..n_patients)
                .filter(|&p| ds.count(p, t) >= min_count)
                .count();
            prevalent >= needed
        })
        .collect();
    if keep.is_empty() {
        return Err(ExpressionError::EmptyResult);
    }
    Ok(ds.select_transcripts(&keep))
}
