//! Binary entity masks on an ERP grid.
//!
//! Masks are row-major boolean bitmaps addressed 1-based like the grid
//! itself. Everything that reasons about adjacency or position can treat
//! column `W` as adjacent to column 1, since the underlying panorama is
//! circular.

mod centroid;
mod components;
mod merge;
mod quality;

pub use centroid::{
    circular_centroid, direction_of, direction_with_polar_cap, Direction, DEFAULT_POLAR_CAP_DEG,
};
pub use components::{connected_components, ComponentLabels};
pub use merge::{iou, iou_matrix, merge_groups, merge_masks};
pub use quality::{quality_filter, MaskQualityVerdict, MaskStatus, DEFAULT_MIN_AREA_FRACTION};

use crate::error::{Error, Result};
use crate::geom::{ErpGrid, SliceView};

/// Binary mask over a full ERP grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EntityMask {
    id: String,
    grid: ErpGrid,
    bits: Vec<bool>,
    source_view: Option<SliceView>,
}

impl EntityMask {
    pub fn new(id: impl Into<String>, grid: ErpGrid, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != grid.pixel_count() {
            return Err(Error::InvalidInput(format!(
                "mask has {} bits but the {}x{} grid has {} pixels",
                bits.len(),
                grid.height,
                grid.width,
                grid.pixel_count()
            )));
        }
        Ok(EntityMask {
            id: id.into(),
            grid,
            bits,
            source_view: None,
        })
    }

    pub fn empty(id: impl Into<String>, grid: ErpGrid) -> Self {
        EntityMask {
            id: id.into(),
            grid,
            bits: vec![false; grid.pixel_count()],
            source_view: None,
        }
    }

    /// Build from a predicate over 1-based `(h, w)`.
    pub fn from_fn(id: impl Into<String>, grid: ErpGrid, f: impl Fn(u32, u32) -> bool) -> Self {
        let mut bits = vec![false; grid.pixel_count()];
        let mut i = 0;
        for h in 1..=grid.height {
            for w in 1..=grid.width {
                bits[i] = f(h, w);
                i += 1;
            }
        }
        EntityMask {
            id: id.into(),
            grid,
            bits,
            source_view: None,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn grid(&self) -> ErpGrid {
        self.grid
    }

    pub fn source_view(&self) -> Option<SliceView> {
        self.source_view
    }

    pub fn with_source_view(mut self, view: SliceView) -> Self {
        self.source_view = Some(view);
        self
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    fn index(&self, h: u32, w: u32) -> usize {
        assert!(
            h >= 1 && h <= self.grid.height && w >= 1 && w <= self.grid.width,
            "pixel ({h}, {w}) outside 1..={} x 1..={}",
            self.grid.height,
            self.grid.width
        );
        (h as usize - 1) * self.grid.width as usize + (w as usize - 1)
    }

    /// Foreground test at 1-based `(h, w)`. Panics out of range.
    pub fn get(&self, h: u32, w: u32) -> bool {
        self.bits[self.index(h, w)]
    }

    pub fn set(&mut self, h: u32, w: u32, value: bool) {
        let i = self.index(h, w);
        self.bits[i] = value;
    }

    /// Number of foreground pixels.
    pub fn area(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn area_fraction(&self) -> f64 {
        self.area() as f64 / self.grid.pixel_count() as f64
    }

    /// Restrict the mask to one slice window, in slice coordinates.
    pub fn extract_view(&self, view: &SliceView) -> Result<SliceMask> {
        if view.side != self.grid.height {
            return Err(Error::GridMismatch(format!(
                "slice side {} does not match grid height {}",
                view.side, self.grid.height
            )));
        }
        let mut out = SliceMask::empty(view.side);
        for y in 1..=view.side {
            for x in 1..=view.side {
                let (h, w) = view.erp_coords(&self.grid, x, y)?;
                if self.get(h, w) {
                    out.set(x, y, true);
                }
            }
        }
        Ok(out)
    }
}

/// Binary mask in the local coordinates of one square slice view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceMask {
    side: u32,
    bits: Vec<bool>,
}

impl SliceMask {
    pub fn empty(side: u32) -> Self {
        SliceMask {
            side,
            bits: vec![false; side as usize * side as usize],
        }
    }

    pub fn from_fn(side: u32, f: impl Fn(u32, u32) -> bool) -> Self {
        let mut m = SliceMask::empty(side);
        for y in 1..=side {
            for x in 1..=side {
                if f(x, y) {
                    m.set(x, y, true);
                }
            }
        }
        m
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    fn index(&self, x: u32, y: u32) -> usize {
        assert!(
            x >= 1 && x <= self.side && y >= 1 && y <= self.side,
            "slice pixel ({x}, {y}) outside 1..={}",
            self.side
        );
        (y as usize - 1) * self.side as usize + (x as usize - 1)
    }

    /// Foreground test at 1-based `(x, y)`. Panics out of range.
    pub fn get(&self, x: u32, y: u32) -> bool {
        self.bits[self.index(x, y)]
    }

    pub fn set(&mut self, x: u32, y: u32, value: bool) {
        let i = self.index(x, y);
        self.bits[i] = value;
    }

    pub fn area(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }
}

/// Place a slice-local mask back onto the full panorama.
///
/// Every set slice pixel lands on the ERP pixel given by
/// [`SliceView::erp_coords`]; pixels outside the window stay unset. The
/// result remembers the view it came from.
pub fn project_mask_to_erp(
    slice_mask: &SliceMask,
    view: &SliceView,
    grid: &ErpGrid,
    id: impl Into<String>,
) -> Result<EntityMask> {
    if slice_mask.side != view.side {
        return Err(Error::GridMismatch(format!(
            "slice mask side {} does not match view side {}",
            slice_mask.side, view.side
        )));
    }
    if view.side != grid.height {
        return Err(Error::GridMismatch(format!(
            "view side {} does not match grid height {}",
            view.side, grid.height
        )));
    }
    let mut out = EntityMask::empty(id, *grid);
    for y in 1..=view.side {
        for x in 1..=view.side {
            if slice_mask.get(x, y) {
                let (h, w) = view.erp_coords(grid, x, y)?;
                out.set(h, w, true);
            }
        }
    }
    Ok(out.with_source_view(*view))
}
