//! Tissue masking, multi-resolution tiling, and Macenko stain
//! normalisation of slide images.

mod hsv;
mod laplacian;
mod linalg3;
mod macenko;
mod mask;
mod morphology;
mod otsu;
mod tile;
mod tiling;

pub use hsv::{hue_half_degrees, saturation_u8};
pub use laplacian::{laplacian_response, local_laplacian_variance, variance_of_laplacian};
pub use macenko::{macenko_apply, macenko_fit, StainProfile};
pub use mask::{tissue_mask, TissueMask, TissueMaskConfig, TissueMaskOutcome};
pub use morphology::{binary_close, binary_dilate, binary_erode, binary_open, BoolGrid};
pub use otsu::otsu_threshold;
pub use tile::RgbTile;
pub use tiling::{tile_grid, Magnification, TileRecord};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PreprocessError {
    #[error("degenerate histogram: fewer than two populated bins")]
    DegenerateHistogram,
    #[error("patch too small: need at least {needed}x{needed}, got {w}x{h}")]
    PatchTooSmall { needed: u32, w: u32, h: u32 },
    #[error("no stainable pixels above the optical density floor")]
    NoStainablePixels,
    #[error("stain basis is singular")]
    SingularBasis,
    #[error("tile {w}x{h} smaller than crop {crop}")]
    TileTooSmall { w: u32, h: u32, crop: u32 },
    #[error("stride must be positive")]
    ZeroStride,
    #[error("unknown magnification '{0}', expected 40X, 20X or 10X")]
    UnknownMagnification(String),
    #[error("image io failed for {path}: {message}")]
    ImageIo { path: String, message: String },
}
