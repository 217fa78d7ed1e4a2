//! Mid-rank computation and rank correlation.

use crate::scalar::cast;
use crate::Scalar;

use super::{check_finite, StatsError};

/// Mid-ranks (1-based; ties receive the average of the ranks they occupy).
pub fn midranks<F: Scalar>(values: &[F]) -> Vec<F> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("non-finite value"));
    let mut ranks = vec![F::zero(); n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // Positions i..=j share the average rank.
        let avg: F = cast::<F, _>(i + j + 2) / cast::<F, _>(2);
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Pearson correlation coefficient.
pub fn pearson<F: Scalar>(x: &[F], y: &[F]) -> Result<F, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(StatsError::TooFewObservations {
            needed: 3,
            got: x.len(),
        });
    }
    check_finite(x)?;
    check_finite(y)?;
    let n: F = cast(x.len());
    let mean_x = x.iter().copied().sum::<F>() / n;
    let mean_y = y.iter().copied().sum::<F>() / n;
    let mut sxy = F::zero();
    let mut sxx = F::zero();
    let mut syy = F::zero();
    for (&a, &b) in x.iter().zip(y) {
        let dx = a - mean_x;
        let dy = b - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == F::zero() || syy == F::zero() {
        return Err(StatsError::ConstantVector);
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Spearman rank correlation: Pearson correlation of mid-ranks.
pub fn spearman_rho<F: Scalar>(x: &[F], y: &[F]) -> Result<F, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 3 {
        return Err(StatsError::TooFewObservations {
            needed: 3,
            got: x.len(),
        });
    }
    check_finite(x)?;
    check_finite(y)?;
    pearson(&midranks(x), &midranks(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_is_one_and_reversal_is_minus_one() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert_abs_diff_eq!(spearman_rho(&x, &x).unwrap(), 1.0, epsilon = 1e-15);
        let y = [4.0, 3.0, 2.0, 1.0];
        assert_abs_diff_eq!(spearman_rho(&x, &y).unwrap(), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn untied_case_matches_d_squared_formula() {
        // rho = 1 - 6*sum(d^2)/(n(n^2-1)) holds exactly without ties.
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let y = [2.0, 1.0, 4.0, 3.0, 5.0];
        // d = (1-2, 2-1, 3-4, 4-3, 5-5); sum d^2 = 4.
        let expected = 1.0 - 6.0 * 4.0 / (5.0 * 24.0);
        assert_abs_diff_eq!(spearman_rho(&x, &y).unwrap(), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(expected, 0.8, epsilon = 1e-15);
    }

    #[test]
    fn constant_vector_is_an_error() {
        let x = [1.0, 1.0, 1.0];
        let y = [1.0, 2.0, 3.0];
        assert_eq!(spearman_rho(&x, &y), Err(StatsError::ConstantVector));
    }

    /// Brute-force oracle: sum-of-squared-rank-differences formula, valid for
    /// distinct values only.
    fn d_squared_oracle(x: &[f64], y: &[f64]) -> f64 {
        let rx = midranks(x);
        let ry = midranks(y);
        let n = x.len() as f64;
        let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b) * (a - b)).sum();
        1.0 - 6.0 * d2 / (n * (n * n - 1.0))
    }

    #[test]
    fn random_untied_vectors_match_formula_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let n = rng.gen_range(4..30);
            // Distinct values via a random permutation with jitter-free base.
            let mut x: Vec<f64> = (0..n).map(|i| i as f64).collect();
            let mut y = x.clone();
            for i in (1..n).rev() {
                x.swap(i, rng.gen_range(0..=i));
                y.swap(i, rng.gen_range(0..=i));
            }
            let got = spearman_rho(&x, &y).unwrap();
            assert_abs_diff_eq!(got, d_squared_oracle(&x, &y), epsilon = 1e-12);
        }
    }

    #[test]
    fn tied_vectors_match_rank_then_pearson_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(5..40);
            // Coarse grid forces ties.
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0..6) as f64).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.gen_range(0..6) as f64).collect();
            let (Ok(got), Ok(oracle)) = (
                spearman_rho(&x, &y),
                pearson(&midranks(&x), &midranks(&y)),
            ) else {
                continue;
            };
            assert_abs_diff_eq!(got, oracle, epsilon = 1e-12);
        }
    }

    #[test]
    fn invariant_under_monotone_transforms() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(5..30);
            let x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            let x2: Vec<f64> = x.iter().map(|v| (3.0 * v + 1.0).exp()).collect();
            let y2: Vec<f64> = y.iter().map(|v| v.powi(3)).collect();
            assert_abs_diff_eq!(
                spearman_rho(&x, &y).unwrap(),
                spearman_rho(&x2, &y2).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn works_for_f32_scalars() {
        let x = [1.0f32, 2.0, 3.0, 4.0, 5.0];
        let y = [2.0f32, 1.0, 4.0, 3.0, 5.0];
        assert!((spearman_rho(&x, &y).unwrap() - 0.8).abs() < 1e-6);
    }
}
