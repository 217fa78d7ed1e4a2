//! Empirical quantiles with type-7 (linear) interpolation.

use crate::scalar::cast;
use crate::Scalar;

use super::{check_finite, StatsError};

/// Type-7 quantile: linear interpolation between order statistics at
/// `h = (n - 1) * q`.
pub fn quantile_type7<F: Scalar>(values: &[F], q: f64) -> Result<F, StatsError> {
    if values.is_empty() {
        return Err(StatsError::Empty);
    }
    check_finite(values)?;
    assert!((0.0..=1.0).contains(&q), "quantile must be in [0, 1]");
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    let frac: F = cast(h - lo as f64);
    Ok(sorted[lo] + (sorted[hi] - sorted[lo]) * frac)
}
