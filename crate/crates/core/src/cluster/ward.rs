//! Agglomerative clustering with Ward's criterion applied to the input
//! dissimilarities as-is (unsquared), and dendrogram cutting.
//!
//! The merge loop keeps a cached minimum per active row and recomputes a row
//! only when its cached argmin was consumed by a merge, which keeps the
//! typical cost near quadratic. Ties on the minimal distance are resolved
//! toward the lexicographically smallest `(left, right)` node pair, so the
//! merge sequence is fully deterministic.

use crate::scalar::cast;
use crate::Scalar;

use super::assignment::{ClusterAssignment, Provenance};
use super::matrix::Condensed;
use super::ClusterError;

/// One agglomeration step. Leaves are nodes `0..n`; the `i`-th merge creates
/// node `n + i`. `left < right` always holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge<F> {
    pub left: usize,
    pub right: usize,
    pub height: F,
    /// Number of leaves under the new node.
    pub size: usize,
}

/// A stepwise dendrogram over `n_leaves` observations.
#[derive(Debug, Clone)]
pub struct Dendrogram<F> {
    n_leaves: usize,
    merges: Vec<Merge<F>>,
}

impl<F: Scalar> Dendrogram<F> {
    pub fn new(n_leaves: usize, merges: Vec<Merge<F>>) -> Dendrogram<F> {
        assert_eq!(merges.len(), n_leaves.saturating_sub(1));
        Dendrogram { n_leaves, merges }
    }

    pub fn n_leaves(&self) -> usize {
        self.n_leaves
    }

    pub fn merges(&self) -> &[Merge<F>] {
        &self.merges
    }

    /// Heights never decrease along the merge sequence (Ward is monotone).
    pub fn is_monotone(&self) -> bool {
        self.merges
            .windows(2)
            .all(|w| w[0].height <= w[1].height + F::epsilon())
    }
}

/// Ward agglomeration of a condensed dissimilarity matrix.
pub fn ward_linkage<F: Scalar>(dist: &Condensed<F>) -> Result<Dendrogram<F>, ClusterError> {
    let n = dist.n();
    if n < 2 {
        return Ok(Dendrogram::new(n, Vec::new()));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !dist.get(i, j).is_finite() {
                return Err(ClusterError::NonFiniteDistance(i, j));
            }
        }
    }

    // Full working matrix; slot i holds the cluster currently numbered
    // node_id[i]. A merge collapses into the smaller slot.
    let mut d = vec![F::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                d[i * n + j] = dist.get(i, j);
            }
        }
    }
    let mut active = vec![true; n];
    let mut size = vec![1usize; n];
    let mut node_id: Vec<usize> = (0..n).collect();

    // Cached row minimum over active partners.
    let mut row_min = vec![F::infinity(); n];
    let mut row_arg = vec![usize::MAX; n];
    let recompute_row = |slot: usize,
                         d: &[F],
                         active: &[bool],
                         row_min: &mut [F],
                         row_arg: &mut [usize]| {
        let mut best = F::infinity();
        let mut arg = usize::MAX;
        for k in 0..n {
            if k != slot && active[k] && d[slot * n + k] < best {
                best = d[slot * n + k];
                arg = k;
            }
        }
        row_min[slot] = best;
        row_arg[slot] = arg;
    };
    for s in 0..n {
        recompute_row(s, &d, &active, &mut row_min, &mut row_arg);
    }

    let mut merges = Vec::with_capacity(n - 1);
    for step in 0..(n - 1) {
        // Global minimum over cached row minima.
        let mut dmin = F::infinity();
        for s in 0..n {
            if active[s] && row_min[s] < dmin {
                dmin = row_min[s];
            }
        }
        // Among all pairs at dmin, pick the lexicographically smallest
        // (left, right) node pair.
        let mut best: Option<(usize, usize, usize, usize)> = None; // (na, nb, slot_a, slot_b)
        for s in 0..n {
            if !active[s] || row_min[s] > dmin {
                continue;
            }
            for k in 0..n {
                if k == s || !active[k] || d[s * n + k] > dmin {
                    continue;
                }
                let (na, nb, sa, sb) = if node_id[s] < node_id[k] {
                    (node_id[s], node_id[k], s, k)
                } else {
                    (node_id[k], node_id[s], k, s)
                };
                match best {
                    Some((ba, bb, _, _)) if (ba, bb) <= (na, nb) => {}
                    _ => best = Some((na, nb, sa, sb)),
                }
            }
        }
        let (na, nb, slot_a, slot_b) = best.expect("active pair exists");
        let (lo, hi) = if slot_a < slot_b {
            (slot_a, slot_b)
        } else {
            (slot_b, slot_a)
        };
        let height = d[lo * n + hi];
        merges.push(Merge {
            left: na,
            right: nb,
            height,
            size: size[lo] + size[hi],
        });

        // Lance-Williams update with Ward coefficients on the raw
        // dissimilarities; the merged cluster lives in slot `lo`.
        let s_a: F = cast(size[lo]);
        let s_b: F = cast(size[hi]);
        for k in 0..n {
            if k == lo || k == hi || !active[k] {
                continue;
            }
            let s_k: F = cast(size[k]);
            let total = s_a + s_b + s_k;
            let updated = ((s_a + s_k) * d[lo * n + k] + (s_b + s_k) * d[hi * n + k]
                - s_k * height)
                / total;
            d[lo * n + k] = updated;
            d[k * n + lo] = updated;
        }
        size[lo] += size[hi];
        active[hi] = false;
        node_id[lo] = n + step;

        recompute_row(lo, &d, &active, &mut row_min, &mut row_arg);
        for k in 0..n {
            if k == lo || !active[k] {
                continue;
            }
            if row_arg[k] == lo || row_arg[k] == hi {
                // The cached argmin was rewritten or removed.
                recompute_row(k, &d, &active, &mut row_min, &mut row_arg);
            } else if d[k * n + lo] < row_min[k] {
                row_min[k] = d[k * n + lo];
                row_arg[k] = lo;
            }
        }
    }
    Ok(Dendrogram::new(n, merges))
}

/// Cut a dendrogram into exactly `k` clusters by undoing the last `k - 1`
/// merges. Cluster ids `1..=k` are assigned in order of each cluster's
/// smallest leaf index.
pub fn cut_dendrogram<F: Scalar>(
    tree: &Dendrogram<F>,
    k: usize,
) -> Result<ClusterAssignment, ClusterError> {
    let n = tree.n_leaves();
    if k == 0 || k > n {
        return Err(ClusterError::InvalidK { k, n });
    }
    // Union-find over leaves, applying the first n - k merges.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    // node -> representative leaf of its subtree
    let mut rep: Vec<usize> = (0..n).collect();
    for (step, merge) in tree.merges().iter().take(n - k).enumerate() {
        let ra = find(&mut parent, rep[merge.left]);
        let rb = find(&mut parent, rep[merge.right]);
        parent[rb] = ra;
        rep.push(ra);
        let _ = step;
    }
    // Also track representatives for un-applied merges so `rep` stays aligned.
    for merge in tree.merges().iter().skip(n - k) {
        rep.push(rep[merge.left]);
    }
    let mut roots: Vec<usize> = (0..n).map(|leaf| find(&mut parent, leaf)).collect();
    // Order clusters by smallest leaf.
    let mut label_of_root: std::collections::HashMap<usize, u32> = std::collections::HashMap::new();
    let mut next = 1u32;
    let mut labels = vec![0u32; n];
    for (leaf, root) in roots.iter_mut().enumerate() {
        let label = *label_of_root.entry(*root).or_insert_with(|| {
            let l = next;
            next += 1;
            l
        });
        labels[leaf] = label;
    }
    debug_assert_eq!(next as usize - 1, k);
    ClusterAssignment::new(k, labels, Provenance::Correlation)
}
