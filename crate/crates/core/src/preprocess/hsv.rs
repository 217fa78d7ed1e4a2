//! HSV conversion matching the 0-180 half-degree hue convention.

/// Hue on the half-degree scale `[0, 180)`; achromatic pixels map to 0.
pub fn hue_half_degrees(r: u8, g: u8, b: u8) -> f64 {
    let (rf, gf, bf) = (r as f64, g as f64, b as f64);
    let max = rf.max(gf).max(bf);
    let min = rf.min(gf).min(bf);
    let delta = max - min;
    if delta == 0.0 {
        return 0.0;
    }
    let hue_degrees = if max == rf {
        60.0 * (((gf - bf) / delta).rem_euclid(6.0))
    } else if max == gf {
        60.0 * ((bf - rf) / delta + 2.0)
    } else {
        60.0 * ((rf - gf) / delta + 4.0)
    };
    hue_degrees / 2.0
}

/// Saturation scaled to `[0, 255]` and rounded.
pub fn saturation_u8(r: u8, g: u8, b: u8) -> u8 {
    let max = r.max(g).max(b) as f64;
    if max == 0.0 {
        return 0;
    }
    let min = r.min(g).min(b) as f64;
    (255.0 * (max - min) / max).round() as u8
}
