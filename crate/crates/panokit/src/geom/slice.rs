//! Square slice views over a 2:1 panorama.
//!
//! A panorama with `W = 2H` decomposes into four square `H x H` windows at a
//! half-height stride, so consecutive windows overlap by 50% and every
//! column is covered by exactly two windows. The last window runs past
//! column `W` and wraps around the +/-180 degree seam, which gives entities
//! sitting on the seam one view where they appear contiguous.

use image::{GenericImageView, ImageBuffer, Pixel};

use crate::error::{Error, Result};
use crate::geom::ErpGrid;

/// One square window over the panorama, in 1-based column coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SliceView {
    /// Leftmost ERP column covered by the window.
    pub start_column: u32,
    /// Window side length; equals the panorama height.
    pub side: u32,
    /// True when the window runs past column `W` and continues at column 1.
    pub wraps: bool,
}

impl SliceView {
    /// ERP pixel `(h, w)` under slice pixel `(x, y)`, both 1-based.
    ///
    /// Rows map through unchanged; columns shift by the window start and
    /// wrap modulo the panorama width.
    pub fn erp_coords(&self, grid: &ErpGrid, x: u32, y: u32) -> Result<(u32, u32)> {
        if x < 1 || x > self.side || y < 1 || y > self.side {
            return Err(Error::InvalidInput(format!(
                "slice pixel ({x}, {y}) outside 1..={}",
                self.side
            )));
        }
        let w = (self.start_column + x - 2) % grid.width + 1;
        Ok((y, w))
    }

    /// ERP columns covered by the window, in window order.
    pub fn columns(&self, grid: &ErpGrid) -> impl Iterator<Item = u32> + '_ {
        let width = grid.width;
        let start = self.start_column;
        (0..self.side).map(move |i| (start + i - 1) % width + 1)
    }
}

/// The four square windows of a 2:1 panorama.
///
/// Windows start at columns `1, 1 + H/2, 1 + H, 1 + 3H/2`; only the last
/// one wraps. Requires `W = 2H` and even `H`.
pub fn slice_views(grid: &ErpGrid) -> Result<Vec<SliceView>> {
    if grid.width != 2 * grid.height {
        return Err(Error::InvalidInput(format!(
            "slice views need a 2:1 panorama, got {}x{}",
            grid.height, grid.width
        )));
    }
    if grid.height % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "slice views need an even height for the half-height stride, got {}",
            grid.height
        )));
    }
    let h = grid.height;
    Ok((0..4)
        .map(|i| {
            let start_column = 1 + i * h / 2;
            SliceView {
                start_column,
                side: h,
                wraps: start_column + h - 1 > grid.width,
            }
        })
        .collect())
}

/// Copy one square window out of an ERP image.
///
/// Output pixel `(x, y)` equals the ERP pixel given by
/// [`SliceView::erp_coords`]; wrapping windows stitch the two image edges
/// together seamlessly.
pub fn extract_slice<I>(
    image: &I,
    view: &SliceView,
) -> Result<ImageBuffer<I::Pixel, Vec<<I::Pixel as Pixel>::Subpixel>>>
where
    I: GenericImageView,
{
    let (width, height) = image.dimensions();
    if height != view.side {
        return Err(Error::GridMismatch(format!(
            "image height {height} does not match slice side {}",
            view.side
        )));
    }
    if view.start_column + view.side - 1 > width && !view.wraps {
        return Err(Error::InvalidInput(
            "window extends past the image but is not marked as wrapping".into(),
        ));
    }
    let grid = ErpGrid::new(height, width)?;
    let mut out = ImageBuffer::new(view.side, view.side);
    for y in 1..=view.side {
        for x in 1..=view.side {
            let (h, w) = view.erp_coords(&grid, x, y)?;
            out.put_pixel(x - 1, y - 1, image.get_pixel(w - 1, h - 1));
        }
    }
    Ok(out)
}
