//! Gnomonic (rectilinear) views of an ERP panorama.
//!
//! A view is defined by a center direction, a field of view, and a square
//! output size. Rays through output pixel centers are intersected with the
//! tangent plane at the view center; ERP samples are taken bilinearly, with
//! columns wrapping across the seam and rows clamped at the poles.

use image::{ImageBuffer, Pixel};

use crate::error::{Error, Result};
use crate::geom::{ErpGrid, SphericalPoint};

/// Pinhole view of the sphere: center direction, field of view, output side.
#[derive(Debug, Clone, Copy)]
pub struct PerspectiveCamera {
    center: SphericalPoint,
    fov_deg: f64,
    side: u32,
    forward: [f64; 3],
    right: [f64; 3],
    up: [f64; 3],
    half_tan: f64,
}

impl PerspectiveCamera {
    pub fn new(center: SphericalPoint, fov_deg: f64, side: u32) -> Result<Self> {
        if !(fov_deg > 0.0 && fov_deg < 180.0) {
            return Err(Error::InvalidInput(format!(
                "field of view must lie in (0, 180) degrees, got {fov_deg}"
            )));
        }
        if side < 1 {
            return Err(Error::InvalidInput("output side must be at least 1".into()));
        }
        let forward = center.to_unit_vector();
        let lon = center.longitude_deg.to_radians();
        let lat = center.latitude_deg.to_radians();
        let (sin_lon, cos_lon) = lon.sin_cos();
        let (sin_lat, cos_lat) = lat.sin_cos();
        // East and north tangent directions. Closed forms stay orthonormal
        // at the poles, where the stored longitude fixes the view roll.
        let right = [-sin_lon, cos_lon, 0.0];
        let up = [-sin_lat * cos_lon, -sin_lat * sin_lon, cos_lat];
        Ok(PerspectiveCamera {
            center,
            fov_deg,
            side,
            forward,
            right,
            up,
            half_tan: (fov_deg / 2.0).to_radians().tan(),
        })
    }

    pub fn center(&self) -> SphericalPoint {
        self.center
    }

    pub fn fov_deg(&self) -> f64 {
        self.fov_deg
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    /// Unit ray through the (possibly fractional) 1-based output pixel
    /// `(x, y)`. `x` grows rightward (toward east at the center row), `y`
    /// grows downward.
    pub fn pixel_to_direction(&self, x: f64, y: f64) -> [f64; 3] {
        let u = (x - 0.5) * 2.0 / self.side as f64 - 1.0;
        let v = (y - 0.5) * 2.0 / self.side as f64 - 1.0;
        let tu = self.half_tan * u;
        let tv = self.half_tan * v;
        let mut d = [0.0; 3];
        for i in 0..3 {
            d[i] = self.forward[i] + tu * self.right[i] - tv * self.up[i];
        }
        let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        [d[0] / norm, d[1] / norm, d[2] / norm]
    }

    /// Fractional 1-based pixel under a direction, or `None` when the
    /// direction points away from the view center (no tangent-plane
    /// intersection). Coordinates outside `[0.5, side + 0.5)` mean the
    /// direction falls outside the field of view.
    pub fn direction_to_pixel(&self, dir: [f64; 3]) -> Option<(f64, f64)> {
        let depth = dot(dir, self.forward);
        if depth <= 1e-12 {
            return None;
        }
        let u = dot(dir, self.right) / depth / self.half_tan;
        let v = -dot(dir, self.up) / depth / self.half_tan;
        let x = (u + 1.0) / 2.0 * self.side as f64 + 0.5;
        let y = (v + 1.0) / 2.0 * self.side as f64 + 0.5;
        Some((x, y))
    }

    /// Whether a direction lies inside the view frustum.
    pub fn contains(&self, dir: [f64; 3]) -> bool {
        let depth = dot(dir, self.forward);
        if depth <= 0.0 {
            return false;
        }
        let u = dot(dir, self.right) / depth / self.half_tan;
        let v = dot(dir, self.up) / depth / self.half_tan;
        u.abs() <= 1.0 + 1e-12 && v.abs() <= 1.0 + 1e-12
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// View centers that turn 90-degree views into the six cube-map faces.
pub fn cube_face_centers() -> [SphericalPoint; 6] {
    [
        SphericalPoint::new(0.0, 0.0).unwrap(),
        SphericalPoint::new(0.0, 90.0).unwrap(),
        SphericalPoint::new(0.0, -180.0).unwrap(),
        SphericalPoint::new(0.0, -90.0).unwrap(),
        SphericalPoint::new(90.0, 0.0).unwrap(),
        SphericalPoint::new(-90.0, 0.0).unwrap(),
    ]
}

/// Render a perspective view of an ERP image.
///
/// Every output pixel casts a ray through the camera, converts it to
/// spherical coordinates, and samples the panorama bilinearly. Horizontal
/// neighbors wrap across the seam; vertical neighbors clamp at the poles.
pub fn erp_to_perspective<P>(
    image: &ImageBuffer<P, Vec<u8>>,
    center: SphericalPoint,
    fov_deg: f64,
    out_side: u32,
) -> Result<ImageBuffer<P, Vec<u8>>>
where
    P: Pixel<Subpixel = u8> + 'static,
{
    let (width, height) = image.dimensions();
    let grid = ErpGrid::new(height, width)?;
    let camera = PerspectiveCamera::new(center, fov_deg, out_side)?;
    let mut out = ImageBuffer::new(out_side, out_side);
    for y in 1..=out_side {
        for x in 1..=out_side {
            let dir = camera.pixel_to_direction(x as f64, y as f64);
            let point = SphericalPoint::from_vector(dir)?;
            let (h, w) = grid.spherical_to_pixel(point);
            out.put_pixel(x - 1, y - 1, sample_bilinear(image, h, w));
        }
    }
    Ok(out)
}

/// Bilinear sample at fractional 1-based pixel coordinates.
fn sample_bilinear<P>(image: &ImageBuffer<P, Vec<u8>>, h: f64, w: f64) -> P
where
    P: Pixel<Subpixel = u8> + 'static,
{
    let (width, height) = image.dimensions();
    let y = h - 1.0;
    let x = w - 1.0;
    let y0 = y.floor();
    let x0 = x.floor();
    let wy = y - y0;
    let wx = x - x0;
    let clamp_row = |r: i64| r.clamp(0, height as i64 - 1) as u32;
    let wrap_col = |c: i64| c.rem_euclid(width as i64) as u32;
    let rows = [clamp_row(y0 as i64), clamp_row(y0 as i64 + 1)];
    let cols = [wrap_col(x0 as i64), wrap_col(x0 as i64 + 1)];
    let weights = [
        (1.0 - wy) * (1.0 - wx),
        (1.0 - wy) * wx,
        wy * (1.0 - wx),
        wy * wx,
    ];
    let mut acc = [0.0f64; 4];
    let corners = [
        (rows[0], cols[0]),
        (rows[0], cols[1]),
        (rows[1], cols[0]),
        (rows[1], cols[1]),
    ];
    let n = P::CHANNEL_COUNT as usize;
    for (weight, (r, c)) in weights.iter().zip(corners) {
        let px = image.get_pixel(c, r);
        for (i, ch) in px.channels().iter().enumerate().take(n) {
            acc[i] += weight * *ch as f64;
        }
    }
    let mut bytes = [0u8; 4];
    for i in 0..n {
        bytes[i] = acc[i].round().clamp(0.0, 255.0) as u8;
    }
    *P::from_slice(&bytes[..n])
}
