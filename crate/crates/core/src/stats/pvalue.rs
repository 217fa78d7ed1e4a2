//! Two-sided significance of a Spearman correlation.

use statrs::distribution::{ContinuousCDF, StudentsT};

use super::StatsError;

/// Largest sample size handled by exact permutation enumeration.
const EXACT_LIMIT: usize = 8;

/// Two-sided p-value for a Spearman correlation of `rho` over `n` pairs.
///
/// For `n <= 8` the null distribution is enumerated exactly over all `n!`
/// rank permutations (assuming untied ranks). For larger `n` the
/// t-approximation `t = rho * sqrt((n-2)/(1-rho^2))` on `n-2` degrees of
/// freedom is used; `|rho| = 1` maps to `p = 0` there by convention.
pub fn spearman_pvalue(rho: f64, n: usize) -> Result<f64, StatsError> {
    if n < 4 {
        return Err(StatsError::TooFewObservations { needed: 4, got: n });
    }
    if !rho.is_finite() || rho.abs() > 1.0 + 1e-12 {
        return Err(StatsError::InvalidCorrelation(rho));
    }
    let rho = rho.clamp(-1.0, 1.0);
    if n <= EXACT_LIMIT {
        return Ok(exact_permutation_pvalue(rho, n));
    }
    if rho.abs() >= 1.0 {
        return Ok(0.0);
    }
    let df = (n - 2) as f64;
    let t = rho * (df / (1.0 - rho * rho)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("valid degrees of freedom");
    let p = 2.0 * dist.cdf(-t.abs());
    Ok(p.clamp(0.0, 1.0))
}

/// Exact two-sided permutation p-value under untied ranks: the fraction of
/// the n! rank permutations whose |rho| reaches |rho_obs|.
fn exact_permutation_pvalue(rho_obs: f64, n: usize) -> f64 {
    let nf = n as f64;
    let denom = nf * (nf * nf - 1.0);
    let threshold = rho_obs.abs() - 1e-12;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut hits: u64 = 0;
    let mut total: u64 = 0;
    // Heap's algorithm, iterative.
    let mut c = vec![0usize; n];
    let eval = |perm: &[usize]| {
        let d2: f64 = perm
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let d = i as f64 - p as f64;
                d * d
            })
            .sum();
        let rho = 1.0 - 6.0 * d2 / denom;
        if rho.abs() >= threshold {
            1u64
        } else {
            0u64
        }
    };
    hits += eval(&perm);
    total += 1;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            hits += eval(&perm);
            total += 1;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    hits as f64 / total as f64
}
