//! Log2 transformation of nonnegative expression values.

use crate::Scalar;

use super::ExpressionError;

/// Elementwise `log2(value + pseudocount)`.
///
/// The pseudocount must be positive whenever any input is zero; negative
/// inputs are rejected.
pub fn log2_transform<F: Scalar>(
    values: &[F],
    pseudocount: F,
) -> Result<Vec<F>, ExpressionError> {
    for (i, &v) in values.iter().enumerate() {
        if v < F::zero() {
            return Err(ExpressionError::NegativeValue(i));
        }
        if v == F::zero() && pseudocount <= F::zero() {
            return Err(ExpressionError::ZeroWithoutPseudocount);
        }
    }
    Ok(values.iter().map(|&v| (v + pseudocount).log2()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::midranks;
    use rand::{Rng, SeedableRng};

    #[test]
    fn log2_identities() {
        assert_eq!(log2_transform(&[0.0], 1.0).unwrap(), vec![0.0]);
        assert_eq!(log2_transform(&[3.0], 1.0).unwrap(), vec![2.0]);
    }

    #[test]
    fn negative_input_rejected() {
        assert!(matches!(
            log2_transform(&[1.0, -0.5], 1.0),
            Err(ExpressionError::NegativeValue(1))
        ));
    }

    #[test]
    fn zero_without_pseudocount_rejected() {
        assert!(matches!(
            log2_transform(&[0.0], 0.0),
            Err(ExpressionError::ZeroWithoutPseudocount)
        ));
        // Strictly positive inputs do not need a pseudocount.
        assert!(log2_transform(&[2.0], 0.0).is_ok());
    }

    #[test]
    fn preserves_ordering_and_ranks() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..50 {
            let n = rng.gen_range(3..40);
            let values: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 100.0).collect();
            let out = log2_transform(&values, 1.0).unwrap();
            // Sort-order oracle: arg-sorting input and output agree.
            let mut by_in: Vec<usize> = (0..n).collect();
            by_in.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
            let mut by_out: Vec<usize> = (0..n).collect();
            by_out.sort_by(|&a, &b| out[a].partial_cmp(&out[b]).unwrap());
            assert_eq!(by_in, by_out);
            // Ranks unchanged, so Spearman against any partner is unchanged.
            assert_eq!(midranks(&values), midranks(&out));
        }
    }
}
