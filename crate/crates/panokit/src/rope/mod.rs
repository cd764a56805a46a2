//! Circular, latitude-calibrated rotary position grids for panoramas.
//!
//! Plain rotary grids index columns 1..W left to right, which tears the
//! panorama at the seam: columns 1 and W sit side by side on the sphere but
//! get the largest possible index distance. The circular column index used
//! here folds the index range so adjacent columns always differ by one,
//! including across the seam, and a per-grid scale compensates for the
//! shrinking circumference of latitude circles toward the poles.

mod properties;
mod rotary;

pub use properties::{check_properties, PropertyCheck, PropertyReport};
pub use rotary::{attention_logit, rope_rotate, RotaryConfig};

use crate::error::{Error, Result};
use crate::geom::ErpGrid;

/// Circular column index: `1 + ` the circular distance from column 1.
///
/// For width `W` the index runs `1, 2, ..` up to its peak of
/// `floor(W/2) + 1` mid-row and back down to 2, so the first and last
/// columns land one step apart. Columns outside `1..=W` wrap periodically.
pub fn circular_column_index(column: i64, width: u32) -> Result<u32> {
    if width < 1 {
        return Err(Error::InvalidInput("width must be at least 1".into()));
    }
    let w = width as i64;
    let wrapped = (column - 1).rem_euclid(w) + 1;
    Ok(wrapped.min(w + 2 - wrapped) as u32)
}

/// Global column scale `H / sum_h cos(latitude(h))`.
///
/// Dividing the height by the summed row circumferences (relative to the
/// equator) yields the factor that makes one scaled column step cover, on
/// average, the same arc length as one row step. It is 1 for a single-row
/// grid and approaches pi/2 as the grid gets taller.
pub fn latitude_scale(grid: &ErpGrid) -> f64 {
    let mut sum = 0.0f64;
    for h in 1..=grid.height {
        sum += grid.latitude_of_row(h).to_radians().cos();
    }
    grid.height as f64 / sum
}

/// Per-token rotary positions for an ERP grid.
///
/// Row positions are the plain row indices. Column positions are either the
/// scaled circular index (panorama-aware) or the plain column index
/// (baseline); `column_scale` records the factor applied.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionGrid {
    grid: ErpGrid,
    column_scale: f64,
    row_positions: Vec<f64>,
    column_positions: Vec<f64>,
}

impl PositionGrid {
    pub fn grid(&self) -> ErpGrid {
        self.grid
    }

    pub fn column_scale(&self) -> f64 {
        self.column_scale
    }

    /// Row positions indexed by `h - 1`.
    pub fn row_positions(&self) -> &[f64] {
        &self.row_positions
    }

    /// Column positions indexed by `w - 1`.
    pub fn column_positions(&self) -> &[f64] {
        &self.column_positions
    }

    /// The `(row, column)` position pair encoded for pixel `(h, w)`.
    pub fn encoded(&self, h: u32, w: u32) -> Result<(f64, f64)> {
        if h < 1 || h > self.grid.height || w < 1 || w > self.grid.width {
            return Err(Error::InvalidInput(format!(
                "pixel ({h}, {w}) outside 1..={} x 1..={}",
                self.grid.height, self.grid.width
            )));
        }
        Ok((
            self.row_positions[h as usize - 1],
            self.column_positions[w as usize - 1],
        ))
    }
}

/// Panorama-aware position grid: scaled circular column indices.
pub fn position_grid(grid: &ErpGrid) -> PositionGrid {
    let scale = latitude_scale(grid);
    let column_positions = (1..=grid.width)
        .map(|w| {
            let index = circular_column_index(w as i64, grid.width)
                .expect("grid width is validated at construction");
            scale * index as f64
        })
        .collect();
    PositionGrid {
        grid: *grid,
        column_scale: scale,
        row_positions: (1..=grid.height).map(|h| h as f64).collect(),
        column_positions,
    }
}

/// Baseline grid: plain row and column indices, no scaling.
pub fn mrope_position_grid(grid: &ErpGrid) -> PositionGrid {
    PositionGrid {
        grid: *grid,
        column_scale: 1.0,
        row_positions: (1..=grid.height).map(|h| h as f64).collect(),
        column_positions: (1..=grid.width).map(|w| w as f64).collect(),
    }
}
