//! Mask quality screening: perforation, size, and fragmentation checks.

use crate::mask::components::label_regions;
use crate::mask::{connected_components, EntityMask};

/// Masks smaller than this fraction of the panorama are screened out by
/// default.
pub const DEFAULT_MIN_AREA_FRACTION: f64 = 5e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaskStatus {
    Ok,
    Perforated,
    SmallArea,
    Fragmented,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MaskQualityVerdict {
    pub status: MaskStatus,
    pub component_count: usize,
    pub hole_count: usize,
    pub area_fraction: f64,
}

/// Screen a mask for the defects that make it useless as an entity region.
///
/// All counting is seam-aware. A hole is a background component with no
/// path to the top or bottom image edge, i.e. background fully enclosed by
/// the mask on the panorama cylinder. When several defects coexist the
/// status reports the structural one first: fragmented, then perforated,
/// then small area; an empty mask reports as small area.
pub fn quality_filter(mask: &EntityMask, min_area_fraction: f64) -> MaskQualityVerdict {
    let component_count = connected_components(mask, true).count;
    let hole_count = count_holes(mask);
    let area_fraction = mask.area_fraction();
    let status = if component_count == 0 {
        MaskStatus::SmallArea
    } else if component_count > 1 {
        MaskStatus::Fragmented
    } else if hole_count > 0 {
        MaskStatus::Perforated
    } else if area_fraction < min_area_fraction {
        MaskStatus::SmallArea
    } else {
        MaskStatus::Ok
    };
    MaskQualityVerdict {
        status,
        component_count,
        hole_count,
        area_fraction,
    }
}

/// Background components that cannot reach the top or bottom edge.
fn count_holes(mask: &EntityMask) -> usize {
    let height = mask.grid().height;
    let width = mask.grid().width;
    let background = label_regions(height, width, true, |i| !mask.bits()[i]);
    if background.count == 0 {
        return 0;
    }
    let w = width as usize;
    let mut touches_edge = vec![false; background.count + 1];
    for col in 0..w {
        let top = background.labels[col];
        let bottom = background.labels[(height as usize - 1) * w + col];
        touches_edge[top as usize] = true;
        touches_edge[bottom as usize] = true;
    }
    (1..=background.count)
        .filter(|&label| !touches_edge[label])
        .count()
}
