//! Per-transcript centering and scaling, fitted on training patients only.

use crate::Real;

use super::{ExpressionDataset, ExpressionError};

/// Per-transcript mean and sample standard deviation (n-1 denominator).
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizationStats {
    pub mean: Vec<Real>,
    pub sd: Vec<Real>,
}

impl StandardizationStats {
    pub fn n_transcripts(&self) -> usize {
        self.mean.len()
    }
}

/// Fit per-transcript standardization statistics on a training dataset.
///
/// Uses the unbiased sample estimator for the standard deviation so that the
/// apply/invert round trip is exact. A transcript with identical values on
/// the training patients is rejected by name.
pub fn fit_standardization(
    train: &ExpressionDataset,
) -> Result<StandardizationStats, ExpressionError> {
    let n = train.n_patients();
    if n < 2 {
        return Err(ExpressionError::TooFewPatients(n));
    }
    let nf = n as Real;
    let mut mean = Vec::with_capacity(train.n_transcripts());
    let mut sd = Vec::with_capacity(train.n_transcripts());
    for t in 0..train.n_transcripts() {
        let col = train.transcript_column(t);
        let m: Real = col.iter().sum::<Real>() / nf;
        let ss: Real = col.iter().map(|v| (v - m) * (v - m)).sum();
        let s = (ss / (nf - 1.0)).sqrt();
        if s == 0.0 {
            return Err(ExpressionError::ZeroVariance(
                train.transcript_ids()[t].clone(),
            ));
        }
        mean.push(m);
        sd.push(s);
    }
    Ok(StandardizationStats { mean, sd })
}

/// Standardize one transcript's values: `(v - mean) / sd` per transcript.
///
/// `values` is laid out per transcript, matching the stats order.
pub fn apply_standardization(
    values: &[Real],
    stats: &StandardizationStats,
    transcript: usize,
) -> Vec<Real> {
    let m = stats.mean[transcript];
    let s = stats.sd[transcript];
    values.iter().map(|v| (v - m) / s).collect()
}

/// Undo standardization for one transcript.
pub fn invert_standardization(
    values: &[Real],
    stats: &StandardizationStats,
    transcript: usize,
) -> Vec<Real> {
    let m = stats.mean[transcript];
    let s = stats.sd[transcript];
    values.iter().map(|v| v * s + m).collect()
}
