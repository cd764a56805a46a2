//! Render gnomonic (perspective) views from a synthetic panorama,
//! including the six canonical cube faces.
//!
//!     cargo run --example perspective_views

use image::{GrayImage, Luma};
use panokit::geom::{cube_face_centers, erp_to_perspective, ErpGrid, SphericalPoint};

fn main() -> panokit::Result<()> {
    let grid = ErpGrid::new(64, 128)?;

    // Brightness encodes latitude: white at the north pole, black at the
    // south pole rows.
    let panorama = GrayImage::from_fn(grid.width, grid.height, |_, y| {
        let latitude = grid.latitude_of_row(y + 1);
        Luma([((latitude + 90.0) / 180.0 * 255.0) as u8])
    });

    for (face, center) in cube_face_centers().into_iter().enumerate() {
        let view = erp_to_perspective(&panorama, center, 90.0, 33)?;
        let middle = view.get_pixel(16, 16).0[0];
        println!(
            "face {face}: center (lat {:>5.1}, lon {:>6.1}) -> middle pixel {middle:>3}",
            center.latitude_deg, center.longitude_deg
        );
    }

    // A view across the seam samples from both image edges without a jump:
    // latitudes vary smoothly, so the rendered rows do too.
    let seam_view = erp_to_perspective(&panorama, SphericalPoint::new(0.0, -180.0)?, 90.0, 9)?;
    println!("\nview centered on the seam (lon -180), one column per row:");
    for y in 0..9 {
        let row: Vec<u8> = (0..9).map(|x| seam_view.get_pixel(x, y).0[0]).collect();
        println!("  {row:?}");
    }
    Ok(())
}
