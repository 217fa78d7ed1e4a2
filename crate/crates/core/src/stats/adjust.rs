//! Benjamini-Hochberg step-up adjustment.

use crate::scalar::cast;
use crate::Scalar;

/// Benjamini-Hochberg adjusted p-values, returned in input order.
///
/// `q_i = min_{j >= i} p_(j) * m / j`, clipped to 1, where `p_(j)` is the
/// j-th smallest p-value among the m inputs.
pub fn bh_adjust<F: Scalar>(pvalues: &[F]) -> Vec<F> {
    let m = pvalues.len();
    if m == 0 {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| pvalues[a].partial_cmp(&pvalues[b]).expect("NaN p-value"));
    let mf: F = cast(m);
    let one = F::one();
    let mut adjusted = vec![F::zero(); m];
    let mut running_min = one;
    for rank in (0..m).rev() {
        let idx = order[rank];
        let scaled = pvalues[idx] * mf / cast::<F, _>(rank + 1);
        running_min = running_min.min(scaled).min(one);
        adjusted[idx] = running_min;
    }
    adjusted
}
