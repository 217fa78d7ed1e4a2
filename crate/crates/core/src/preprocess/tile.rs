//! 8-bit RGB raster, the unit of masking, normalisation and prediction.

use std::path::Path;

use super::PreprocessError;

/// An interleaved 8-bit RGB image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbTile {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl RgbTile {
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> RgbTile {
        assert_eq!(data.len(), (width * height * 3) as usize);
        RgbTile {
            width,
            height,
            data,
        }
    }

    pub fn filled(width: u32, height: u32, rgb: [u8; 3]) -> RgbTile {
        let mut data = Vec::with_capacity((width * height * 3) as usize);
        for _ in 0..width * height {
            data.extend_from_slice(&rgb);
        }
        RgbTile::new(width, height, data)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        let i = ((y * self.width + x) * 3) as usize;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn set(&mut self, x: u32, y: u32, rgb: [u8; 3]) {
        let i = ((y * self.width + x) * 3) as usize;
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    pub fn pixels(&self) -> impl Iterator<Item = [u8; 3]> + '_ {
        self.data.chunks_exact(3).map(|c| [c[0], c[1], c[2]])
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    /// Rectangular crop; the region must lie inside the image.
    pub fn crop(&self, x: u32, y: u32, w: u32, h: u32) -> RgbTile {
        assert!(x + w <= self.width && y + h <= self.height);
        let mut data = Vec::with_capacity((w * h * 3) as usize);
        for row in y..y + h {
            let start = ((row * self.width + x) * 3) as usize;
            data.extend_from_slice(&self.data[start..start + (w * 3) as usize]);
        }
        RgbTile::new(w, h, data)
    }

    /// Rotate by `k` quarter turns counterclockwise.
    pub fn rotate90(&self, k: u8) -> RgbTile {
        match k % 4 {
            0 => self.clone(),
            1 => {
                let (w, h) = (self.height, self.width);
                let mut out = RgbTile::filled(w, h, [0, 0, 0]);
                for y in 0..self.height {
                    for x in 0..self.width {
                        out.set(y, self.width - 1 - x, self.get(x, y));
                    }
                }
                out
            }
            2 => {
                let mut out = RgbTile::filled(self.width, self.height, [0, 0, 0]);
                for y in 0..self.height {
                    for x in 0..self.width {
                        out.set(self.width - 1 - x, self.height - 1 - y, self.get(x, y));
                    }
                }
                out
            }
            _ => {
                let (w, h) = (self.height, self.width);
                let mut out = RgbTile::filled(w, h, [0, 0, 0]);
                for y in 0..self.height {
                    for x in 0..self.width {
                        out.set(self.height - 1 - y, x, self.get(x, y));
                    }
                }
                out
            }
        }
    }

    /// Mirror horizontally (flip the x axis).
    pub fn mirror_horizontal(&self) -> RgbTile {
        let mut out = self.clone();
        for y in 0..self.height {
            for x in 0..self.width {
                out.set(self.width - 1 - x, y, self.get(x, y));
            }
        }
        out
    }

    /// Luma as f32 (BT.601 weights), row-major.
    pub fn to_gray(&self) -> Vec<f32> {
        self.pixels()
            .map(|[r, g, b]| 0.299 * r as f32 + 0.587 * g as f32 + 0.114 * b as f32)
            .collect()
    }

    pub fn read_png(path: &Path) -> Result<RgbTile, PreprocessError> {
        let img = image::open(path)
            .map_err(|e| PreprocessError::ImageIo {
                path: path.display().to_string(),
                message: e.to_string(),
            })?
            .to_rgb8();
        Ok(RgbTile::new(img.width(), img.height(), img.into_raw()))
    }

    pub fn write_png(&self, path: &Path) -> Result<(), PreprocessError> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|e| PreprocessError::ImageIo {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
        }
        let img = image::RgbImage::from_raw(self.width, self.height, self.data.clone())
            .expect("dimensions match buffer");
        img.save(path).map_err(|e| PreprocessError::ImageIo {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }
}
