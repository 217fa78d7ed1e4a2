//! Macenko stain estimation and normalisation.
//!
//! Optical density is `-log10((I + 1) / 256)` per channel. The stain basis
//! is estimated from the top-2 principal plane of the OD cloud of tissue
//! pixels, taking the directions at the alpha and (100 - alpha) percentile
//! angles. Concentrations are least-squares coordinates in that basis and
//! are rescaled between profiles by the ratio of their 99th-percentile
//! ceilings.

use crate::scalar::cast;
use crate::stats::quantile_type7;
use crate::Scalar;

use super::linalg3::{lstsq_3x2, sym3_eigen};
use super::tile::RgbTile;
use super::PreprocessError;

/// Fitted stain basis and concentration ceilings.
#[derive(Debug, Clone, PartialEq)]
pub struct StainProfile<F> {
    /// Unit OD direction per stain; rows RGB, column 0 = H, column 1 = E.
    pub basis: [[F; 2]; 3],
    /// 99th-percentile concentration per stain channel.
    pub max_concentrations: [F; 2],
    /// OD floor below which pixels are treated as background (beta).
    pub od_floor: F,
    /// Angle percentile used for the stain directions (alpha, in percent).
    pub angle_percentile: F,
}

fn od_of<F: Scalar>(intensity: u8) -> F {
    let v = (intensity as f64 + 1.0) / 256.0;
    cast(-v.log10())
}

fn intensity_of<F: Scalar>(od: F) -> u8 {
    let od = od.to_f64().unwrap();
    let v = 256.0 * 10f64.powf(-od) - 1.0;
    v.round().clamp(0.0, 255.0) as u8
}

fn unit<F: Scalar>(v: [F; 3]) -> Option<[F; 3]> {
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if norm <= F::from(1e-9).unwrap() {
        return None;
    }
    Some([v[0] / norm, v[1] / norm, v[2] / norm])
}

/// Fit a stain profile from reference tiles.
pub fn macenko_fit<F: Scalar>(
    tiles: &[&RgbTile],
    beta: F,
    alpha: F,
) -> Result<StainProfile<F>, PreprocessError> {
    // OD vectors of tissue pixels: every component at or above the floor.
    let mut od: Vec<[F; 3]> = Vec::new();
    for tile in tiles {
        for [r, g, b] in tile.pixels() {
            let v = [od_of::<F>(r), od_of::<F>(g), od_of::<F>(b)];
            if v[0] >= beta && v[1] >= beta && v[2] >= beta {
                od.push(v);
            }
        }
    }
    if od.len() < 16 {
        return Err(PreprocessError::NoStainablePixels);
    }

    // Principal plane of the OD cloud.
    let n: F = cast(od.len());
    let mut mean = [F::zero(); 3];
    for v in &od {
        for c in 0..3 {
            mean[c] += v[c];
        }
    }
    for m in &mut mean {
        *m /= n;
    }
    let mut cov = [[F::zero(); 3]; 3];
    for v in &od {
        for i in 0..3 {
            for j in 0..3 {
                cov[i][j] += (v[i] - mean[i]) * (v[j] - mean[j]);
            }
        }
    }
    for row in &mut cov {
        for c in row.iter_mut() {
            *c /= n - F::one();
        }
    }
    let (_, vecs) = sym3_eigen(cov);
    let mut v1 = [vecs[0][0], vecs[1][0], vecs[2][0]];
    let mut v2 = [vecs[0][1], vecs[1][1], vecs[2][1]];

    // Orient the plane axes toward the cloud so angles are stable.
    let mean_dot = |v: &[F; 3]| mean[0] * v[0] + mean[1] * v[1] + mean[2] * v[2];
    if mean_dot(&v1) < F::zero() {
        for c in &mut v1 {
            *c = -*c;
        }
    }
    if mean_dot(&v2) < F::zero() {
        for c in &mut v2 {
            *c = -*c;
        }
    }

    // Angles of the raw OD projections in the plane.
    let mut angles: Vec<F> = od
        .iter()
        .map(|v| {
            let p1 = v[0] * v1[0] + v[1] * v1[1] + v[2] * v1[2];
            let p2 = v[0] * v2[0] + v[1] * v2[1] + v[2] * v2[2];
            p2.atan2(p1)
        })
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let alpha_frac = alpha.to_f64().unwrap() / 100.0;
    let phi_lo = quantile_type7(&angles, alpha_frac).expect("non-empty angles");
    let phi_hi = quantile_type7(&angles, 1.0 - alpha_frac).expect("non-empty angles");

    let direction = |phi: F| -> Option<[F; 3]> {
        let (s, c) = (phi.sin(), phi.cos());
        let mut u = [
            c * v1[0] + s * v2[0],
            c * v1[1] + s * v2[1],
            c * v1[2] + s * v2[2],
        ];
        // Stain vectors are absorbances: orient positive and clamp noise.
        if u[0] + u[1] + u[2] < F::zero() {
            for x in &mut u {
                *x = -*x;
            }
        }
        for x in &mut u {
            *x = x.max(F::zero());
        }
        unit(u)
    };
    let u_lo = direction(phi_lo).ok_or(PreprocessError::SingularBasis)?;
    let u_hi = direction(phi_hi).ok_or(PreprocessError::SingularBasis)?;

    // H is the column with the larger blue OD component.
    let (h, e) = if u_lo[2] >= u_hi[2] {
        (u_lo, u_hi)
    } else {
        (u_hi, u_lo)
    };
    let basis = [[h[0], e[0]], [h[1], e[1]], [h[2], e[2]]];

    // 99th-percentile concentrations over the tissue pixels.
    let mut c_h = Vec::with_capacity(od.len());
    let mut c_e = Vec::with_capacity(od.len());
    for v in &od {
        let c = lstsq_3x2(&basis, *v).ok_or(PreprocessError::SingularBasis)?;
        c_h.push(c[0]);
        c_e.push(c[1]);
    }
    let max_h = quantile_type7(&c_h, 0.99).expect("non-empty");
    let max_e = quantile_type7(&c_e, 0.99).expect("non-empty");
    if max_h <= F::zero() || max_e <= F::zero() {
        return Err(PreprocessError::NoStainablePixels);
    }

    Ok(StainProfile {
        basis,
        max_concentrations: [max_h, max_e],
        od_floor: beta,
        angle_percentile: alpha,
    })
}

/// Re-express a tile in the reference stain basis, rescaling each stain
/// channel by the ratio of reference to source concentration ceilings.
pub fn macenko_apply<F: Scalar>(
    tile: &RgbTile,
    source: &StainProfile<F>,
    reference: &StainProfile<F>,
) -> Result<RgbTile, PreprocessError> {
    // Precompute the source pseudo-inverse via the 2x2 normal equations.
    let probe = lstsq_3x2(&source.basis, [F::one(), F::one(), F::one()]);
    if probe.is_none() {
        return Err(PreprocessError::SingularBasis);
    }
    let scale = [
        reference.max_concentrations[0] / source.max_concentrations[0],
        reference.max_concentrations[1] / source.max_concentrations[1],
    ];
    let mut out = tile.clone();
    for y in 0..tile.height() {
        for x in 0..tile.width() {
            let [r, g, b] = tile.get(x, y);
            let od = [od_of::<F>(r), od_of::<F>(g), od_of::<F>(b)];
            let c = lstsq_3x2(&source.basis, od).ok_or(PreprocessError::SingularBasis)?;
            let ch = c[0] * scale[0];
            let ce = c[1] * scale[1];
            let od_new = [
                reference.basis[0][0] * ch + reference.basis[0][1] * ce,
                reference.basis[1][0] * ch + reference.basis[1][1] * ce,
                reference.basis[2][0] * ch + reference.basis[2][1] * ce,
            ];
            out.set(
                x,
                y,
                [
                    intensity_of(od_new[0]),
                    intensity_of(od_new[1]),
                    intensity_of(od_new[2]),
                ],
            );
        }
    }
    Ok(out)
}

/// Root-mean-square intensity difference between two same-sized tiles.
pub fn rms_difference(a: &RgbTile, b: &RgbTile) -> f64 {
    assert_eq!((a.width(), a.height()), (b.width(), b.height()));
    let mut sum = 0.0;
    let mut n = 0.0;
    for (pa, pb) in a.pixels().zip(b.pixels()) {
        for c in 0..3 {
            let d = pa[c] as f64 - pb[c] as f64;
            sum += d * d;
            n += 1.0;
        }
    }
    (sum / n).sqrt()
}
