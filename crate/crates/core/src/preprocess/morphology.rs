//! Binary morphology with a square structuring element.
//!
//! Neighbourhoods are clipped at the image border (out-of-bounds pixels are
//! ignored), so a solid region wider than the kernel is a fixed point of
//! both opening and closing.

/// A dense boolean grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolGrid {
    pub width: usize,
    pub height: usize,
    pub data: Vec<bool>,
}

impl BoolGrid {
    pub fn new(width: usize, height: usize, data: Vec<bool>) -> BoolGrid {
        assert_eq!(data.len(), width * height);
        BoolGrid {
            width,
            height,
            data,
        }
    }

    pub fn filled(width: usize, height: usize, value: bool) -> BoolGrid {
        BoolGrid {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.data[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        self.data[y * self.width + x] = v;
    }

    pub fn count_true(&self) -> usize {
        self.data.iter().filter(|&&v| v).count()
    }
}

fn window_fold(grid: &BoolGrid, kernel: usize, all: bool) -> BoolGrid {
    assert!(kernel % 2 == 1, "kernel must be odd");
    let r = kernel / 2;
    let mut out = BoolGrid::filled(grid.width, grid.height, false);
    for y in 0..grid.height {
        for x in 0..grid.width {
            let x0 = x.saturating_sub(r);
            let y0 = y.saturating_sub(r);
            let x1 = (x + r).min(grid.width - 1);
            let y1 = (y + r).min(grid.height - 1);
            let mut acc = all;
            'scan: for yy in y0..=y1 {
                for xx in x0..=x1 {
                    let v = grid.get(xx, yy);
                    if all && !v {
                        acc = false;
                        break 'scan;
                    }
                    if !all && v {
                        acc = true;
                        break 'scan;
                    }
                }
            }
            out.set(x, y, acc);
        }
    }
    out
}

/// Erosion: true where every in-bounds kernel neighbour is true.
pub fn binary_erode(grid: &BoolGrid, kernel: usize) -> BoolGrid {
    window_fold(grid, kernel, true)
}

/// Dilation: true where any in-bounds kernel neighbour is true.
pub fn binary_dilate(grid: &BoolGrid, kernel: usize) -> BoolGrid {
    window_fold(grid, kernel, false)
}

/// Opening: erosion then dilation.
pub fn binary_open(grid: &BoolGrid, kernel: usize) -> BoolGrid {
    binary_dilate(&binary_erode(grid, kernel), kernel)
}

/// Closing: dilation then erosion.
pub fn binary_close(grid: &BoolGrid, kernel: usize) -> BoolGrid {
    binary_erode(&binary_dilate(grid, kernel), kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_pixel_removed_by_opening() {
        let mut g = BoolGrid::filled(7, 7, false);
        g.set(3, 3, true);
        let opened = binary_open(&g, 3);
        assert_eq!(opened.count_true(), 0);
    }

    #[test]
    fn single_hole_filled_by_closing() {
        let mut g = BoolGrid::filled(7, 7, true);
        g.set(3, 3, false);
        let closed = binary_close(&g, 3);
        assert_eq!(closed.count_true(), 49);
    }

    #[test]
    fn solid_rectangle_is_fixed_point_of_open_and_close() {
        let mut g = BoolGrid::filled(12, 10, false);
        for y in 2..8 {
            for x in 3..10 {
                g.set(x, y, true);
            }
        }
        assert_eq!(binary_open(&g, 3), g);
        assert_eq!(binary_close(&g, 3), g);
    }

    #[test]
    fn erosion_shrinks_and_dilation_grows() {
        let mut g = BoolGrid::filled(9, 9, false);
        for y in 3..6 {
            for x in 3..6 {
                g.set(x, y, true);
            }
        }
        assert_eq!(binary_erode(&g, 3).count_true(), 1);
        assert_eq!(binary_dilate(&g, 3).count_true(), 25);
    }
}
