//! Tissue detection: saturation Otsu AND hue gate AND focus gate, cleaned
//! with morphological opening and closing.

use serde::{Deserialize, Serialize};

use super::hsv::{hue_half_degrees, saturation_u8};
use super::laplacian::local_laplacian_variance;
use super::morphology::{binary_close, binary_open, BoolGrid};
use super::otsu::otsu_threshold;
use super::tile::RgbTile;

/// Thresholds for [`tissue_mask`].
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TissueMaskConfig {
    /// Minimum hue on the half-degree scale `[0, 180)`.
    pub hue_min: f64,
    /// Minimum local variance of the Laplacian (focus gate).
    pub laplacian_var_min: f64,
    /// Odd side length of the square morphology kernel.
    pub morphology_kernel: usize,
    /// Odd side length of the window for the local Laplacian variance.
    pub laplacian_window: usize,
}

impl Default for TissueMaskConfig {
    fn default() -> Self {
        TissueMaskConfig {
            hue_min: 125.0,
            laplacian_var_min: 20.0,
            morphology_kernel: 3,
            laplacian_window: 9,
        }
    }
}

/// A bilevel mask aligned to the source image at `downsample` (mask pixel =
/// `downsample` x `downsample` image pixels).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TissueMask {
    pub grid: BoolGrid,
    pub downsample: u32,
}

impl TissueMask {
    /// Fraction of true mask cells covered by the image-space rectangle.
    pub fn fraction_in(&self, x: u32, y: u32, w: u32, h: u32) -> f64 {
        let f = self.downsample as usize;
        let x0 = x as usize / f;
        let y0 = y as usize / f;
        let x1 = ((x + w) as usize).div_ceil(f).min(self.grid.width);
        let y1 = ((y + h) as usize).div_ceil(f).min(self.grid.height);
        if x0 >= x1 || y0 >= y1 {
            return 0.0;
        }
        let mut hits = 0usize;
        for yy in y0..y1 {
            for xx in x0..x1 {
                if self.grid.get(xx, yy) {
                    hits += 1;
                }
            }
        }
        hits as f64 / ((x1 - x0) * (y1 - y0)) as f64
    }

    pub fn write_png(&self, path: &std::path::Path) -> Result<(), super::PreprocessError> {
        let mut tile = RgbTile::filled(self.grid.width as u32, self.grid.height as u32, [0, 0, 0]);
        for y in 0..self.grid.height {
            for x in 0..self.grid.width {
                if self.grid.get(x, y) {
                    tile.set(x as u32, y as u32, [255, 255, 255]);
                }
            }
        }
        tile.write_png(path)
    }
}

/// Result of masking, with a flag for degenerate saturation histograms
/// (single populated bin), which produce an empty mask.
#[derive(Debug, Clone)]
pub struct TissueMaskOutcome {
    pub mask: TissueMask,
    pub degenerate_saturation: bool,
}

/// Tissue mask over an RGB image: logical AND of the Otsu-thresholded
/// saturation channel, the hue gate, and the local Laplacian-variance focus
/// gate, then opening and closing with the configured kernel.
pub fn tissue_mask(image: &RgbTile, cfg: &TissueMaskConfig) -> TissueMaskOutcome {
    let (w, h) = (image.width() as usize, image.height() as usize);
    let mut sat = vec![0u8; w * h];
    let mut hue_ok = vec![false; w * h];
    let mut histogram = [0u64; 256];
    for (i, [r, g, b]) in image.pixels().enumerate() {
        let s = saturation_u8(r, g, b);
        sat[i] = s;
        histogram[s as usize] += 1;
        hue_ok[i] = hue_half_degrees(r, g, b) > cfg.hue_min;
    }
    let sat_level = match otsu_threshold(&histogram) {
        Ok(level) => level,
        Err(_) => {
            return TissueMaskOutcome {
                mask: TissueMask {
                    grid: BoolGrid::filled(w, h, false),
                    downsample: 1,
                },
                degenerate_saturation: true,
            }
        }
    };

    let gray = image.to_gray();
    let focus = local_laplacian_variance(&gray, image.width(), image.height(), cfg.laplacian_window);

    let mut data = vec![false; w * h];
    for i in 0..w * h {
        data[i] = sat[i] > sat_level && hue_ok[i] && focus[i] > cfg.laplacian_var_min;
    }
    let raw = BoolGrid::new(w, h, data);
    let cleaned = binary_close(&binary_open(&raw, cfg.morphology_kernel), cfg.morphology_kernel);
    TissueMaskOutcome {
        mask: TissueMask {
            grid: cleaned,
            downsample: 1,
        },
        degenerate_saturation: false,
    }
}
