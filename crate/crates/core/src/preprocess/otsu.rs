//! Otsu thresholding over a 256-bin histogram.

use super::PreprocessError;

/// Threshold level maximizing the between-class variance, with class 0
/// holding bins `<= t`. The smallest level wins ties.
pub fn otsu_threshold(histogram: &[u64; 256]) -> Result<u8, PreprocessError> {
    let populated = histogram.iter().filter(|&&c| c > 0).count();
    if populated < 2 {
        return Err(PreprocessError::DegenerateHistogram);
    }
    let total: u64 = histogram.iter().sum();
    let total_f = total as f64;
    let grand_sum: f64 = histogram
        .iter()
        .enumerate()
        .map(|(i, &c)| i as f64 * c as f64)
        .sum();

    let mut best_t = 0u8;
    let mut best_var = f64::NEG_INFINITY;
    let mut w0: f64 = 0.0;
    let mut sum0: f64 = 0.0;
    for t in 0..=255u16 {
        w0 += histogram[t as usize] as f64;
        sum0 += t as f64 * histogram[t as usize] as f64;
        let w1 = total_f - w0;
        if w0 == 0.0 || w1 == 0.0 {
            continue;
        }
        let mu0 = sum0 / w0;
        let mu1 = (grand_sum - sum0) / w1;
        let var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if var > best_var {
            best_var = var;
            best_t = t as u8;
        }
    }
    Ok(best_t)
}
