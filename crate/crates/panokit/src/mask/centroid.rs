//! Mask centroids on the sphere and coarse direction binning.

use crate::error::{Error, Result};
use crate::geom::SphericalPoint;
use crate::mask::EntityMask;

/// Latitude band half-width of the top/bottom bins, in degrees.
pub const DEFAULT_POLAR_CAP_DEG: f64 = 60.0;

/// Coarse viewing direction of a point on the panorama.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Front,
    Right,
    Back,
    Left,
    Top,
    Bottom,
}

impl Direction {
    /// The four lateral bins, in report order.
    pub const LATERAL: [Direction; 4] = [
        Direction::Front,
        Direction::Right,
        Direction::Back,
        Direction::Left,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Direction::Front => "front",
            Direction::Right => "right",
            Direction::Back => "back",
            Direction::Left => "left",
            Direction::Top => "top",
            Direction::Bottom => "bottom",
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "front" => Ok(Direction::Front),
            "right" => Ok(Direction::Right),
            "back" => Ok(Direction::Back),
            "left" => Ok(Direction::Left),
            "top" => Ok(Direction::Top),
            "bottom" => Ok(Direction::Bottom),
            other => Err(Error::InvalidInput(format!("unknown direction '{other}'"))),
        }
    }
}

/// Spherical centroid of a mask.
///
/// Latitude is the plain mean of the pixel latitudes; longitude is the
/// argument of the mean unit vector of the pixel longitudes, so masks that
/// straddle the seam average correctly instead of collapsing toward 0.
///
/// Errors on an empty mask, and when the longitude vectors cancel (for
/// example two pixels 180 degrees apart), which leaves no meaningful mean.
pub fn circular_centroid(mask: &EntityMask) -> Result<SphericalPoint> {
    if mask.is_empty() {
        return Err(Error::EmptyMask(mask.id().to_string()));
    }
    let grid = mask.grid();
    let mut count = 0usize;
    let mut lat_sum = 0.0f64;
    let mut cos_sum = 0.0f64;
    let mut sin_sum = 0.0f64;
    let mut i = 0usize;
    for h in 1..=grid.height {
        let lat = grid.latitude_of_row(h);
        for w in 1..=grid.width {
            if mask.bits()[i] {
                count += 1;
                lat_sum += lat;
                let lon = grid.longitude_of_col(w).to_radians();
                cos_sum += lon.cos();
                sin_sum += lon.sin();
            }
            i += 1;
        }
    }
    let mean_vector_len = (cos_sum * cos_sum + sin_sum * sin_sum).sqrt() / count as f64;
    if mean_vector_len < 1e-9 {
        return Err(Error::DegenerateCentroid);
    }
    let lat = lat_sum / count as f64;
    let lon = sin_sum.atan2(cos_sum).to_degrees();
    SphericalPoint::new(lat, lon)
}

/// Direction bin of a point: polar caps above/below +/-60 degrees latitude,
/// otherwise longitude quadrants with front centered on 0.
pub fn direction_of(point: SphericalPoint) -> Direction {
    direction_with_polar_cap(point, DEFAULT_POLAR_CAP_DEG).expect("default cap is valid")
}

/// [`direction_of`] with a configurable polar-cap latitude.
///
/// Quadrant boundaries stay at +/-45 and +/-135 degrees longitude: front
/// closes at both 45-degree edges, right and left own their outward
/// boundary, back takes everything beyond +/-135.
pub fn direction_with_polar_cap(point: SphericalPoint, polar_cap_deg: f64) -> Result<Direction> {
    if !(0.0..90.0).contains(&polar_cap_deg) {
        return Err(Error::InvalidInput(format!(
            "polar cap must lie in [0, 90), got {polar_cap_deg}"
        )));
    }
    if point.latitude_deg > polar_cap_deg {
        return Ok(Direction::Top);
    }
    if point.latitude_deg < -polar_cap_deg {
        return Ok(Direction::Bottom);
    }
    let lon = point.longitude_deg;
    Ok(if lon.abs() <= 45.0 {
        Direction::Front
    } else if lon > 45.0 && lon <= 135.0 {
        Direction::Right
    } else if (-135.0..-45.0).contains(&lon) {
        Direction::Left
    } else {
        Direction::Back
    })
}
