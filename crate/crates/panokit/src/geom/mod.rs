//! Equirectangular (ERP) pixel grid geometry.
//!
//! An ERP image of height `H` and width `W` covers the full sphere. Rows and
//! columns are 1-based and addressed at pixel centers:
//!
//! - latitude of row `h`:   `90 - (h - 0.5) * (180 / H)` degrees
//! - longitude of column `w`: `(w - 0.5) * (360 / W) - 180` degrees
//!
//! Latitude decreases top to bottom, longitude increases left to right, and
//! columns wrap: column `W` is adjacent to column 1 across the +/-180 degree
//! seam.

mod perspective;
mod slice;

pub use perspective::{cube_face_centers, erp_to_perspective, PerspectiveCamera};
pub use slice::{extract_slice, slice_views, SliceView};

use crate::error::{Error, Result};

/// Pixel grid of an equirectangular image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ErpGrid {
    pub height: u32,
    pub width: u32,
}

impl ErpGrid {
    pub fn new(height: u32, width: u32) -> Result<Self> {
        if height < 1 || width < 1 {
            return Err(Error::InvalidInput(format!(
                "grid dimensions must be at least 1x1, got {height}x{width}"
            )));
        }
        Ok(ErpGrid { height, width })
    }

    pub fn pixel_count(&self) -> usize {
        self.height as usize * self.width as usize
    }

    fn check_pixel(&self, h: u32, w: u32) -> Result<()> {
        if h < 1 || h > self.height || w < 1 || w > self.width {
            return Err(Error::InvalidInput(format!(
                "pixel ({h}, {w}) outside 1..={} x 1..={}",
                self.height, self.width
            )));
        }
        Ok(())
    }

    /// Latitude of the center of row `h`, in degrees.
    pub fn latitude_of_row(&self, h: u32) -> f64 {
        90.0 - (h as f64 - 0.5) * (180.0 / self.height as f64)
    }

    /// Longitude of the center of column `w`, in degrees.
    pub fn longitude_of_col(&self, w: u32) -> f64 {
        (w as f64 - 0.5) * (360.0 / self.width as f64) - 180.0
    }

    /// Spherical coordinates of the center of pixel `(h, w)`.
    pub fn pixel_to_spherical(&self, h: u32, w: u32) -> Result<SphericalPoint> {
        self.check_pixel(h, w)?;
        SphericalPoint::new(self.latitude_of_row(h), self.longitude_of_col(w))
    }

    /// Fractional pixel coordinates `(h, w)` of a point on the sphere.
    ///
    /// The result lands in `[0.5, H + 0.5) x [0.5, W + 0.5)`; integer values
    /// are exact pixel centers. The inverse of [`Self::pixel_to_spherical`]
    /// on every pixel center.
    pub fn spherical_to_pixel(&self, point: SphericalPoint) -> (f64, f64) {
        let h = (90.0 - point.latitude_deg) * self.height as f64 / 180.0 + 0.5;
        let w = (point.longitude_deg + 180.0) * self.width as f64 / 360.0 + 0.5;
        (h, w)
    }
}

/// A direction on the unit sphere, in degrees.
///
/// Latitude lies in `[-90, 90]`; longitude is normalized into `[-180, 180)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SphericalPoint {
    pub latitude_deg: f64,
    pub longitude_deg: f64,
}

impl SphericalPoint {
    pub fn new(latitude_deg: f64, longitude_deg: f64) -> Result<Self> {
        if !latitude_deg.is_finite() || !(-90.0..=90.0).contains(&latitude_deg) {
            return Err(Error::InvalidInput(format!(
                "latitude {latitude_deg} outside [-90, 90]"
            )));
        }
        if !longitude_deg.is_finite() {
            return Err(Error::InvalidInput(format!(
                "longitude {longitude_deg} is not finite"
            )));
        }
        Ok(SphericalPoint {
            latitude_deg,
            longitude_deg: normalize_longitude(longitude_deg),
        })
    }

    /// Unit vector with x toward (0, 0), y toward (0, 90), z toward the
    /// north pole.
    pub fn to_unit_vector(&self) -> [f64; 3] {
        let lat = self.latitude_deg.to_radians();
        let lon = self.longitude_deg.to_radians();
        let (sin_lat, cos_lat) = lat.sin_cos();
        let (sin_lon, cos_lon) = lon.sin_cos();
        [cos_lat * cos_lon, cos_lat * sin_lon, sin_lat]
    }

    /// Inverse of [`Self::to_unit_vector`]. The input need not be normalized
    /// but must be nonzero.
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !norm.is_finite() || norm < 1e-300 {
            return Err(Error::InvalidInput(
                "cannot take the direction of a zero vector".into(),
            ));
        }
        let lat = (v[2] / norm).clamp(-1.0, 1.0).asin().to_degrees();
        let lon = v[1].atan2(v[0]).to_degrees();
        SphericalPoint::new(lat, lon)
    }

    /// Great-circle angle to another direction, in degrees.
    pub fn angle_to(&self, other: &SphericalPoint) -> f64 {
        let a = self.to_unit_vector();
        let b = other.to_unit_vector();
        let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
        dot.clamp(-1.0, 1.0).acos().to_degrees()
    }
}

/// Wrap a longitude into `[-180, 180)`.
pub fn normalize_longitude(lon: f64) -> f64 {
    let wrapped = (lon + 180.0).rem_euclid(360.0) - 180.0;
    // rem_euclid can return exactly 360 when lon is a tiny negative number,
    // which would map to +180; fold it back.
    if wrapped >= 180.0 {
        wrapped - 360.0
    } else {
        wrapped
    }
}
