//! Symmetric and condensed matrices plus the pairwise Spearman matrix.

use rayon::prelude::*;

use crate::scalar::cast;
use crate::stats::midranks;
use crate::Scalar;

use super::ClusterError;

/// Dense symmetric matrix with unit handling left to the caller.
#[derive(Debug, Clone)]
pub struct SymMatrix<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Scalar> SymMatrix<F> {
    pub fn from_condensed(n: usize, diagonal: F, condensed: Vec<F>) -> SymMatrix<F> {
        assert_eq!(condensed.len(), n * (n - 1) / 2);
        let mut data = vec![diagonal; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                data[i * n + j] = condensed[k];
                data[j * n + i] = condensed[k];
                k += 1;
            }
        }
        SymMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[i * self.n + j]
    }

    /// Map the off-diagonal entries into a condensed matrix.
    pub fn to_condensed(&self, f: impl Fn(F) -> F) -> Condensed<F> {
        let mut data = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                data.push(f(self.get(i, j)));
            }
        }
        Condensed { n: self.n, data }
    }
}

/// Condensed pairwise distance matrix: upper triangle, row-major.
#[derive(Debug, Clone)]
pub struct Condensed<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Scalar> Condensed<F> {
    pub fn new(n: usize, data: Vec<F>) -> Result<Condensed<F>, ClusterError> {
        if data.len() != n * (n - 1) / 2 {
            return Err(ClusterError::SizeMismatch { got: data.len(), n });
        }
        Ok(Condensed { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        debug_assert!(i != j);
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        // Offset of row a in the condensed upper triangle.
        let row_start = a * self.n - a * (a + 1) / 2;
        self.data[row_start + (b - a - 1)]
    }

    pub fn values(&self) -> &[F] {
        &self.data
    }
}

/// Pairwise Spearman correlation matrix over transcript value vectors.
///
/// `columns[t]` holds transcript `t` across patients; `ids` are used only
/// for error reporting. Pairs are computed in parallel.
pub fn spearman_matrix<F: Scalar>(
    columns: &[Vec<F>],
    ids: &[String],
) -> Result<SymMatrix<F>, ClusterError> {
    let n = columns.len();
    assert_eq!(ids.len(), n);
    let n_patients = columns.first().map_or(0, Vec::len);
    if n_patients < 3 {
        return Err(ClusterError::TooFewPatients {
            needed: 3,
            got: n_patients,
        });
    }
    // Center the mid-ranks once per transcript and pre-compute norms.
    let mut centered: Vec<Vec<F>> = Vec::with_capacity(n);
    let mut norms: Vec<F> = Vec::with_capacity(n);
    let mean_rank: F = cast::<F, _>(n_patients + 1) / cast::<F, _>(2);
    for (t, col) in columns.iter().enumerate() {
        assert_eq!(col.len(), n_patients, "ragged transcript column");
        let ranks = midranks(col);
        let centered_ranks: Vec<F> = ranks.iter().map(|&r| r - mean_rank).collect();
        let norm = centered_ranks
            .iter()
            .map(|&v| v * v)
            .sum::<F>()
            .sqrt();
        if norm == F::zero() {
            return Err(ClusterError::ConstantTranscript {
                index: t,
                id: ids[t].clone(),
            });
        }
        centered.push(centered_ranks);
        norms.push(norm);
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let condensed: Vec<F> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let dot: F = centered[i]
                .iter()
                .zip(&centered[j])
                .map(|(&a, &b)| a * b)
                .sum();
            let rho = dot / (norms[i] * norms[j]);
            rho.max(-F::one()).min(F::one())
        })
        .collect();
    Ok(SymMatrix::from_condensed(n, F::one(), condensed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::spearman_rho;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    #[test]
    fn diagonal_is_one_and_matrix_is_symmetric() {
        let cols: Vec<Vec<f64>> = vec![
            vec![1.0, 2.0, 3.0, 4.0],
            vec![2.0, 1.0, 4.0, 3.0],
            vec![4.0, 3.0, 2.0, 1.0],
        ];
        let ids: Vec<String> = (0..3).map(|i| format!("G{i}")).collect();
        let m = spearman_matrix(&cols, &ids).unwrap();
        for i in 0..3 {
            assert_eq!(m.get(i, i), 1.0);
            for j in 0..3 {
                assert_eq!(m.get(i, j), m.get(j, i));
                assert!(m.get(i, j).abs() <= 1.0);
            }
        }
    }

    #[test]
    fn reversal_pair_is_minus_one() {
        let cols = vec![vec![1.0, 2.0, 3.0], vec![3.0, 2.0, 1.0]];
        let ids = vec!["a".to_string(), "b".to_string()];
        let m = spearman_matrix(&cols, &ids).unwrap();
        assert_abs_diff_eq!(m.get(0, 1), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn entries_match_pairwise_spearman_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let n_t = 5;
        let n_p = 9;
        let cols: Vec<Vec<f64>> = (0..n_t)
            .map(|_| (0..n_p).map(|_| rng.gen_range(0..5) as f64).collect())
            .collect();
        let ids: Vec<String> = (0..n_t).map(|i| format!("G{i}")).collect();
        match spearman_matrix(&cols, &ids) {
            Ok(m) => {
                for i in 0..n_t {
                    for j in (i + 1)..n_t {
                        let oracle = spearman_rho(&cols[i], &cols[j]).unwrap();
                        assert_abs_diff_eq!(m.get(i, j), oracle, epsilon = 1e-12);
                    }
                }
            }
            Err(ClusterError::ConstantTranscript { .. }) => {} // legitimate for coarse grids
            Err(e) => panic!("unexpected error: {e}"),
        }
    }

    #[test]
    fn constant_transcript_is_named() {
        let cols = vec![vec![1.0, 2.0, 3.0], vec![5.0, 5.0, 5.0]];
        let ids = vec!["ok".to_string(), "flat".to_string()];
        match spearman_matrix(&cols, &ids) {
            Err(ClusterError::ConstantTranscript { index, id }) => {
                assert_eq!(index, 1);
                assert_eq!(id, "flat");
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn condensed_indexing_round_trips() {
        let m = SymMatrix::from_condensed(4, 0.0, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let c = m.to_condensed(|v| v);
        assert_eq!(c.get(0, 1), 1.0);
        assert_eq!(c.get(0, 3), 3.0);
        assert_eq!(c.get(2, 1), 4.0);
        assert_eq!(c.get(3, 2), 6.0);
    }
}
