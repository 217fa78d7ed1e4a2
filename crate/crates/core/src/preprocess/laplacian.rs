//! 3x3 Laplacian response and its variance, used as a focus measure.

use super::PreprocessError;

/// Response of the 3x3 Laplacian kernel (4-neighbour, center -4) over the
/// valid interior; output is `(w - 2) x (h - 2)` row-major.
pub fn laplacian_response(gray: &[f32], w: u32, h: u32) -> Vec<f64> {
    assert_eq!(gray.len(), (w * h) as usize);
    let (wi, hi) = (w as usize, h as usize);
    let mut out = Vec::with_capacity((wi - 2) * (hi - 2));
    for y in 1..hi - 1 {
        for x in 1..wi - 1 {
            let c = gray[y * wi + x] as f64;
            let up = gray[(y - 1) * wi + x] as f64;
            let down = gray[(y + 1) * wi + x] as f64;
            let left = gray[y * wi + x - 1] as f64;
            let right = gray[y * wi + x + 1] as f64;
            out.push(up + down + left + right - 4.0 * c);
        }
    }
    out
}

/// Population variance of the Laplacian response over the valid interior.
pub fn variance_of_laplacian(gray: &[f32], w: u32, h: u32) -> Result<f64, PreprocessError> {
    if w < 3 || h < 3 {
        return Err(PreprocessError::PatchTooSmall { needed: 3, w, h });
    }
    let resp = laplacian_response(gray, w, h);
    let n = resp.len() as f64;
    let mean: f64 = resp.iter().sum::<f64>() / n;
    Ok(resp.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n)
}

/// Per-pixel local variance of the Laplacian response over a square window,
/// evaluated with integral images; windows are clipped at the borders, and
/// the 1-pixel frame with no valid response reuses its nearest interior
/// window.
pub fn local_laplacian_variance(gray: &[f32], w: u32, h: u32, window: usize) -> Vec<f64> {
    assert!(window % 2 == 1, "window must be odd");
    let (wi, hi) = (w as usize, h as usize);
    if wi < 3 || hi < 3 {
        return vec![0.0; wi * hi];
    }
    let resp = laplacian_response(gray, w, h);
    let (rw, rh) = (wi - 2, hi - 2);

    // Integral images of the response and its square, (rw+1) x (rh+1).
    let mut int = vec![0f64; (rw + 1) * (rh + 1)];
    let mut int2 = vec![0f64; (rw + 1) * (rh + 1)];
    for y in 0..rh {
        for x in 0..rw {
            let v = resp[y * rw + x];
            let idx = (y + 1) * (rw + 1) + (x + 1);
            int[idx] = v + int[idx - 1] + int[idx - (rw + 1)] - int[idx - (rw + 1) - 1];
            int2[idx] = v * v + int2[idx - 1] + int2[idx - (rw + 1)] - int2[idx - (rw + 1) - 1];
        }
    }
    let box_sum = |img: &[f64], x0: usize, y0: usize, x1: usize, y1: usize| {
        img[(y1 + 1) * (rw + 1) + (x1 + 1)] + img[y0 * (rw + 1) + x0]
            - img[y0 * (rw + 1) + (x1 + 1)]
            - img[(y1 + 1) * (rw + 1) + x0]
    };

    let r = window / 2;
    let mut out = vec![0f64; wi * hi];
    for y in 0..hi {
        for x in 0..wi {
            // Nearest response coordinate for frame pixels.
            let rx = x.saturating_sub(1).min(rw - 1);
            let ry = y.saturating_sub(1).min(rh - 1);
            let x0 = rx.saturating_sub(r);
            let y0 = ry.saturating_sub(r);
            let x1 = (rx + r).min(rw - 1);
            let y1 = (ry + r).min(rh - 1);
            let n = ((x1 - x0 + 1) * (y1 - y0 + 1)) as f64;
            let s = box_sum(&int, x0, y0, x1, y1);
            let s2 = box_sum(&int2, x0, y0, x1, y1);
            let var = (s2 - s * s / n) / n;
            out[y * wi + x] = var.max(0.0);
        }
    }
    out
}
