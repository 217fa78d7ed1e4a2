//! Axis-aligned tiling of masked slides with a tissue-fraction gate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::mask::TissueMask;
use super::PreprocessError;

/// Supported magnification levels with their microns-per-pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Magnification {
    #[serde(rename = "40X")]
    X40,
    #[serde(rename = "20X")]
    X20,
    #[serde(rename = "10X")]
    X10,
}

impl Magnification {
    pub fn mpp(&self) -> f64 {
        match self {
            Magnification::X40 => 0.252,
            Magnification::X20 => 0.504,
            Magnification::X10 => 0.904,
        }
    }

    pub const ALL: [Magnification; 3] = [Magnification::X40, Magnification::X20, Magnification::X10];
}

impl fmt::Display for Magnification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnification::X40 => write!(f, "40X"),
            Magnification::X20 => write!(f, "20X"),
            Magnification::X10 => write!(f, "10X"),
        }
    }
}

impl FromStr for Magnification {
    type Err = PreprocessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "40X" => Ok(Magnification::X40),
            "20X" => Ok(Magnification::X20),
            "10X" => Ok(Magnification::X10),
            other => Err(PreprocessError::UnknownMagnification(other.to_string())),
        }
    }
}

/// One tile of a slide at a given magnification.
#[derive(Debug, Clone, PartialEq)]
pub struct TileRecord {
    pub slide_id: String,
    /// Pixel origin at the level resolution.
    pub x: u32,
    pub y: u32,
    pub magnification: Magnification,
    pub size: u32,
    /// Mask mean over the tile footprint, in `[0, 1]`.
    pub tissue_fraction: f64,
    /// Filled in by the cancer-detection step.
    pub malignancy_score: Option<f64>,
}

/// Grid tiles over a slide, dropping tiles whose tissue fraction is below
/// `min_tissue`. Returns an empty list when the slide is smaller than a
/// tile.
pub fn tile_grid(
    slide_id: &str,
    slide_w: u32,
    slide_h: u32,
    mask: &TissueMask,
    magnification: Magnification,
    tile_size: u32,
    stride: u32,
    min_tissue: f64,
) -> Result<Vec<TileRecord>, PreprocessError> {
    if stride == 0 {
        return Err(PreprocessError::ZeroStride);
    }
    let mut tiles = Vec::new();
    if slide_w < tile_size || slide_h < tile_size {
        return Ok(tiles);
    }
    let mut y = 0u32;
    while y + tile_size <= slide_h {
        let mut x = 0u32;
        while x + tile_size <= slide_w {
            let fraction = mask.fraction_in(x, y, tile_size, tile_size);
            if fraction >= min_tissue {
                tiles.push(TileRecord {
                    slide_id: slide_id.to_string(),
                    x,
                    y,
                    magnification,
                    size: tile_size,
                    tissue_fraction: fraction,
                    malignancy_score: None,
                });
            }
            x += stride;
        }
        y += stride;
    }
    Ok(tiles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::morphology::BoolGrid;
    use rand::{Rng, SeedableRng};

    fn full_mask(w: usize, h: usize) -> TissueMask {
        TissueMask {
            grid: BoolGrid::filled(w, h, true),
            downsample: 1,
        }
    }

    #[test]
    fn biopsy_geometry_yields_nine_tiles() {
        // 1196x1196 full tissue, tile 598, stride 299: offsets {0, 299, 598}.
        let mask = full_mask(1196, 1196);
        let tiles = tile_grid("s", 1196, 1196, &mask, Magnification::X10, 598, 299, 0.5).unwrap();
        assert_eq!(tiles.len(), 9);
        let xs: Vec<u32> = tiles.iter().map(|t| t.x).collect();
        assert!(xs.iter().all(|x| [0, 299, 598].contains(x)));
    }

    #[test]
    fn tile_at_forty_nine_percent_tissue_is_excluded() {
        // 10x10 tile over a mask that is true on 49 of 100 pixels.
        let mut grid = BoolGrid::filled(10, 10, false);
        let mut set = 0;
        'outer: for y in 0..10 {
            for x in 0..10 {
                if set == 49 {
                    break 'outer;
                }
                grid.set(x, y, true);
                set += 1;
            }
        }
        let mask = TissueMask {
            grid,
            downsample: 1,
        };
        let tiles = tile_grid("s", 10, 10, &mask, Magnification::X20, 10, 10, 0.5).unwrap();
        assert!(tiles.is_empty());
        // At exactly 50% the tile is retained.
        let mut grid = BoolGrid::filled(10, 10, false);
        let mut set = 0;
        'outer2: for y in 0..10 {
            for x in 0..10 {
                if set == 50 {
                    break 'outer2;
                }
                grid.set(x, y, true);
                set += 1;
            }
        }
        let mask = TissueMask {
            grid,
            downsample: 1,
        };
        let tiles = tile_grid("s", 10, 10, &mask, Magnification::X20, 10, 10, 0.5).unwrap();
        assert_eq!(tiles.len(), 1);
        assert_eq!(tiles[0].tissue_fraction, 0.5);
    }

    #[test]
    fn empty_mask_gives_zero_tiles() {
        let mask = TissueMask {
            grid: BoolGrid::filled(100, 100, false),
            downsample: 1,
        };
        let tiles = tile_grid("s", 100, 100, &mask, Magnification::X10, 50, 25, 0.5).unwrap();
        assert!(tiles.is_empty());
    }

    #[test]
    fn slide_smaller_than_tile_gives_empty_list() {
        let mask = full_mask(30, 30);
        let tiles = tile_grid("s", 30, 30, &mask, Magnification::X10, 64, 32, 0.5).unwrap();
        assert!(tiles.is_empty());
    }

    #[test]
    fn count_matches_loop_enumeration_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..50 {
            let w = rng.gen_range(1..400);
            let h = rng.gen_range(1..400);
            let size = rng.gen_range(1..120);
            let stride = rng.gen_range(1..120);
            let mask = full_mask(w as usize, h as usize);
            let tiles =
                tile_grid("s", w, h, &mask, Magnification::X40, size, stride, 0.5).unwrap();
            // Independent oracle: count offsets along each axis.
            let count_axis = |extent: u32| {
                let mut n = 0u32;
                let mut pos = 0u32;
                while pos + size <= extent {
                    n += 1;
                    pos += stride;
                }
                n
            };
            assert_eq!(
                tiles.len(),
                (count_axis(w) * count_axis(h)) as usize,
                "dims ({w},{h}), size {size}, stride {stride}"
            );
        }
    }

    #[test]
    fn downsampled_mask_fraction() {
        // Mask at downsample 2: 4x4 cells covering an 8x8 slide; left half true.
        let mut grid = BoolGrid::filled(4, 4, false);
        for y in 0..4 {
            for x in 0..2 {
                grid.set(x, y, true);
            }
        }
        let mask = TissueMask {
            grid,
            downsample: 2,
        };
        let tiles = tile_grid("s", 8, 8, &mask, Magnification::X10, 8, 8, 0.0).unwrap();
        assert_eq!(tiles.len(), 1);
        assert_eq!(tiles[0].tissue_fraction, 0.5);
    }

    #[test]
    fn magnification_round_trip() {
        for m in Magnification::ALL {
            assert_eq!(m.to_string().parse::<Magnification>().unwrap(), m);
        }
        assert!("15X".parse::<Magnification>().is_err());
        assert_eq!(Magnification::X40.mpp(), 0.252);
        assert_eq!(Magnification::X20.mpp(), 0.504);
        assert_eq!(Magnification::X10.mpp(), 0.904);
    }
}
