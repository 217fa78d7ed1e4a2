//! Transcript-to-cluster assignments and the size-matched random baseline.

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ClusterError;

/// How an assignment was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Correlation,
    Random,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Correlation => "correlation",
            Provenance::Random => "random",
        }
    }
}

/// A partition of `n` observations into clusters `1..=k`, all non-empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterAssignment {
    k: usize,
    labels: Vec<u32>,
    provenance: Provenance,
}

impl ClusterAssignment {
    pub fn new(
        k: usize,
        labels: Vec<u32>,
        provenance: Provenance,
    ) -> Result<ClusterAssignment, ClusterError> {
        let mut counts = vec![0usize; k];
        for (i, &l) in labels.iter().enumerate() {
            if l == 0 || l as usize > k {
                return Err(ClusterError::InvalidK {
                    k: l as usize,
                    n: i,
                });
            }
            counts[l as usize - 1] += 1;
        }
        if let Some(c) = counts.iter().position(|&c| c == 0) {
            return Err(ClusterError::EmptyCluster(c + 1));
        }
        Ok(ClusterAssignment {
            k,
            labels,
            provenance,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// 1-based cluster id of observation `i`.
    pub fn label(&self, i: usize) -> u32 {
        self.labels[i]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Observation indices of each cluster, in cluster id order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize - 1].push(i);
        }
        out
    }

    /// Cluster sizes in cluster id order.
    pub fn sizes(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.k];
        for &l in &self.labels {
            out[l as usize - 1] += 1;
        }
        out
    }
}

/// Reassign all observations into clusters of exactly the same sizes,
/// uniformly at random given `seed`.
pub fn random_reassignment(assign: &ClusterAssignment, seed: u64) -> ClusterAssignment {
    let sizes = assign.sizes();
    let mut order: Vec<usize> = (0..assign.n()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let mut labels = vec![0u32; assign.n()];
    let mut cursor = 0;
    for (cluster_idx, &s) in sizes.iter().enumerate() {
        for &obs in &order[cursor..cursor + s] {
            labels[obs] = cluster_idx as u32 + 1;
        }
        cursor += s;
    }
    ClusterAssignment::new(assign.k(), labels, Provenance::Random)
        .expect("size-preserving shuffle keeps every cluster non-empty")
}
