//! Percentile bootstrap confidence intervals over paired data.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::Scalar;

use super::{quantile_type7, StatsError};

/// Result of a percentile bootstrap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapInterval<F> {
    pub lower: F,
    pub upper: F,
    /// Resamples redrawn because the metric was undefined on them.
    pub redraws: usize,
}

/// Percentile bootstrap interval of `metric` over patient-paired data.
///
/// Pairs are resampled with replacement; a resample on which the metric is
/// undefined (`None`, e.g. a constant vector) is redrawn and counted, with
/// the total number of draws capped at ten times `n_boot`.
pub fn bootstrap_ci<F: Scalar>(
    x: &[F],
    y: &[F],
    metric: impl Fn(&[F], &[F]) -> Option<F>,
    n_boot: usize,
    level: f64,
    seed: u64,
) -> Result<BootstrapInterval<F>, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    if x.is_empty() {
        return Err(StatsError::Empty);
    }
    if n_boot < 1000 {
        return Err(StatsError::TooFewResamples {
            needed: 1000,
            got: n_boot,
        });
    }
    assert!((0.0..1.0).contains(&(1.0 - level)), "level must be in (0, 1)");
    let n = x.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = Vec::with_capacity(n_boot);
    let mut redraws = 0usize;
    let cap = n_boot.saturating_mul(10);
    let mut draws = 0usize;
    let mut rx = vec![F::zero(); n];
    let mut ry = vec![F::zero(); n];
    while stats.len() < n_boot {
        if draws >= cap {
            return Err(StatsError::DegenerateResamples(redraws));
        }
        draws += 1;
        for k in 0..n {
            let idx = rng.gen_range(0..n);
            rx[k] = x[idx];
            ry[k] = y[idx];
        }
        match metric(&rx, &ry) {
            Some(v) => stats.push(v),
            None => redraws += 1,
        }
    }
    let alpha = 1.0 - level;
    Ok(BootstrapInterval {
        lower: quantile_type7(&stats, alpha / 2.0)?,
        upper: quantile_type7(&stats, 1.0 - alpha / 2.0)?,
        redraws,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::spearman_rho;
    use rand::Rng;

    #[test]
    fn constant_metric_gives_degenerate_interval() {
        let x = vec![1.0; 10];
        let y = vec![2.0; 10];
        let ci = bootstrap_ci(&x, &y, |_, _| Some(0.7), 1000, 0.95, 1).unwrap();
        assert_eq!(ci.lower, 0.7);
        assert_eq!(ci.upper, 0.7);
        assert_eq!(ci.redraws, 0);
    }

    #[test]
    fn interval_contains_point_estimate_on_correlated_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 92;
        let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let y: Vec<f64> = x.iter().map(|v| v + 0.5 * rng.gen::<f64>()).collect();
        let point = spearman_rho(&x, &y).unwrap();
        let ci = bootstrap_ci(
            &x,
            &y,
            |a, b| spearman_rho(a, b).ok(),
            2000,
            0.95,
            3,
        )
        .unwrap();
        assert!(ci.lower <= point && point <= ci.upper);
        assert!(ci.lower < ci.upper);
    }

    #[test]
    fn too_few_resamples_rejected() {
        let x = [1.0, 2.0, 3.0];
        assert!(matches!(
            bootstrap_ci(&x, &x, |_, _| Some(0.0), 10, 0.95, 1),
            Err(StatsError::TooFewResamples { .. })
        ));
    }

    #[test]
    fn always_undefined_metric_hits_the_cap() {
        let x = [1.0, 2.0, 3.0];
        assert!(matches!(
            bootstrap_ci(&x, &x, |_, _| None, 1000, 0.95, 1),
            Err(StatsError::DegenerateResamples(_))
        ));
    }

    #[test]
    fn same_seed_reproduces_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x: Vec<f64> = (0..30).map(|_| rng.gen::<f64>()).collect();
        let y: Vec<f64> = (0..30).map(|_| rng.gen::<f64>()).collect();
        let m = |a: &[f64], b: &[f64]| spearman_rho(a, b).ok();
        let a = bootstrap_ci(&x, &y, m, 1000, 0.95, 99).unwrap();
        let b = bootstrap_ci(&x, &y, m, 1000, 0.95, 99).unwrap();
        assert_eq!(a, b);
    }
}
