//! Within- and cross-cluster mean absolute correlation.

use crate::scalar::cast;
use crate::Scalar;

use super::assignment::ClusterAssignment;
use super::matrix::SymMatrix;
use super::ClusterError;

/// Mean absolute pairwise correlation per cluster and across cluster pairs.
#[derive(Debug, Clone)]
pub struct ClusterCorrelationStats<F> {
    /// Mean |rho| over unordered pairs inside each cluster; `None` for
    /// singletons, where no pair exists.
    pub within: Vec<Option<F>>,
    /// Mean |rho| over pairs spanning clusters `(a, b)`, `a < b`, indexed by
    /// `[a][b - a - 1]` in cluster id order.
    pub cross: Vec<Vec<F>>,
}

impl<F: Scalar> ClusterCorrelationStats<F> {
    /// Cross value for clusters `a` and `b` (1-based ids, `a != b`).
    pub fn cross_of(&self, a: u32, b: u32) -> F {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.cross[lo as usize - 1][(hi - lo) as usize - 1]
    }
}

/// Aggregate |rho| means over all intra- and inter-cluster transcript pairs.
pub fn cluster_correlation_stats<F: Scalar>(
    assign: &ClusterAssignment,
    rho: &SymMatrix<F>,
) -> Result<ClusterCorrelationStats<F>, ClusterError> {
    if assign.n() != rho.n() {
        return Err(ClusterError::CoverageMismatch(rho.n()));
    }
    let k = assign.k();
    let mut within_sum = vec![F::zero(); k];
    let mut within_cnt = vec![0usize; k];
    let mut cross_sum = vec![F::zero(); k * k];
    let mut cross_cnt = vec![0usize; k * k];
    for i in 0..assign.n() {
        let ci = assign.label(i) as usize - 1;
        for j in (i + 1)..assign.n() {
            let cj = assign.label(j) as usize - 1;
            let v = rho.get(i, j).abs();
            if ci == cj {
                within_sum[ci] += v;
                within_cnt[ci] += 1;
            } else {
                let (lo, hi) = if ci < cj { (ci, cj) } else { (cj, ci) };
                cross_sum[lo * k + hi] += v;
                cross_cnt[lo * k + hi] += 1;
            }
        }
    }
    let within = within_sum
        .iter()
        .zip(&within_cnt)
        .map(|(&s, &c)| if c == 0 { None } else { Some(s / cast(c)) })
        .collect();
    let mut cross = Vec::with_capacity(k);
    for a in 0..k {
        let mut row = Vec::with_capacity(k - a - 1);
        for b in (a + 1)..k {
            let c = cross_cnt[a * k + b];
            debug_assert!(c > 0, "non-empty clusters always have cross pairs");
            row.push(cross_sum[a * k + b] / cast(c.max(1)));
        }
        cross.push(row);
    }
    Ok(ClusterCorrelationStats { within, cross })
}
