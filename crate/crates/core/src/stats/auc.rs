//! Area under the ROC curve via the Mann-Whitney statistic.

use crate::scalar::cast;
use crate::Scalar;

use super::rank::midranks;
use super::{check_finite, StatsError};

/// ROC AUC for `scores` against boolean `labels` (true = positive).
///
/// Computed as the normalised Mann-Whitney U statistic with ties counted
/// one half, via mid-ranks.
pub fn roc_auc<F: Scalar>(scores: &[F], labels: &[bool]) -> Result<F, StatsError> {
    if scores.len() != labels.len() {
        return Err(StatsError::LengthMismatch(scores.len(), labels.len()));
    }
    if scores.is_empty() {
        return Err(StatsError::Empty);
    }
    check_finite(scores)?;
    let n_pos = labels.iter().filter(|&&l| l).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(StatsError::SingleClass);
    }
    let ranks = midranks(scores);
    let rank_sum_pos: F = ranks
        .iter()
        .zip(labels)
        .filter(|(_, &l)| l)
        .map(|(r, _)| *r)
        .sum();
    let np: F = cast(n_pos);
    let nn: F = cast(n_neg);
    let two: F = cast(2);
    let u = rank_sum_pos - np * (np + F::one()) / two;
    Ok(u / (np * nn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    #[test]
    fn perfect_separation_is_one() {
        let scores = [0.1, 0.2, 0.8, 0.9];
        let labels = [false, false, true, true];
        assert_eq!(roc_auc(&scores, &labels).unwrap(), 1.0);
    }

    #[test]
    fn flipping_labels_complements_auc() {
        let scores = [0.1, 0.7, 0.4, 0.9, 0.3];
        let labels = [false, true, false, true, true];
        let flipped: Vec<bool> = labels.iter().map(|l| !l).collect();
        let auc = roc_auc(&scores, &labels).unwrap();
        let auc_f = roc_auc(&scores, &flipped).unwrap();
        assert_abs_diff_eq!(auc + auc_f, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn one_class_is_an_error() {
        assert_eq!(
            roc_auc(&[0.1, 0.2], &[true, true]),
            Err(StatsError::SingleClass)
        );
    }

    /// Oracle: all positive/negative pairs, ties worth one half.
    fn pairwise_oracle(scores: &[f64], labels: &[bool]) -> f64 {
        let mut wins = 0.0;
        let mut pairs = 0.0;
        for (i, &si) in scores.iter().enumerate() {
            if !labels[i] {
                continue;
            }
            for (j, &sj) in scores.iter().enumerate() {
                if labels[j] {
                    continue;
                }
                pairs += 1.0;
                if si > sj {
                    wins += 1.0;
                } else if si == sj {
                    wins += 0.5;
                }
            }
        }
        wins / pairs
    }

    #[test]
    fn matches_pairwise_oracle_exactly_with_ties() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let n = rng.gen_range(2..12);
            let scores: Vec<f64> = (0..n).map(|_| rng.gen_range(0..5) as f64 / 4.0).collect();
            let labels: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            if labels.iter().all(|&l| l) || labels.iter().all(|&l| !l) {
                continue;
            }
            assert_abs_diff_eq!(
                roc_auc(&scores, &labels).unwrap(),
                pairwise_oracle(&scores, &labels),
                epsilon = 1e-12
            );
        }
    }
}
