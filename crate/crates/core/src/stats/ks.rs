//! Two-sample Kolmogorov-Smirnov statistic.

use crate::scalar::cast;
use crate::Scalar;

use super::{check_finite, StatsError};

/// Two-sample Kolmogorov-Smirnov D: the supremum distance between the
/// empirical CDFs of `a` and `b`.
pub fn ks_two_sample<F: Scalar>(a: &[F], b: &[F]) -> Result<F, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::Empty);
    }
    check_finite(a)?;
    check_finite(b)?;
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.partial_cmp(y).unwrap());
    sb.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let na: F = cast(sa.len());
    let nb: F = cast(sb.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = F::zero();
    while i < sa.len() || j < sb.len() {
        // Advance past the smallest remaining value in both samples so that
        // the CDFs are evaluated just after each jump point.
        let v = match (sa.get(i), sb.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => break,
        };
        while i < sa.len() && sa[i] == v {
            i += 1;
        }
        while j < sb.len() && sb[j] == v {
            j += 1;
        }
        let fa = cast::<F, _>(i) / na;
        let fb = cast::<F, _>(j) / nb;
        d = d.max((fa - fb).abs());
    }
    Ok(d)
}
