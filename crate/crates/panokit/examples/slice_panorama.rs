//! Cut a 2:1 panorama into the four overlapping square views and show how
//! the last view stitches the left and right image edges together.
//!
//!     cargo run --example slice_panorama

use image::{GrayImage, Luma};
use panokit::geom::{extract_slice, slice_views, ErpGrid};

fn main() -> panokit::Result<()> {
    let grid = ErpGrid::new(8, 16)?;

    // Column ramp: pixel value = 10 * column, so provenance is readable.
    let panorama = GrayImage::from_fn(16, 8, |x, _| Luma([(10 * (x + 1)) as u8]));

    let views = slice_views(&grid)?;
    println!(
        "grid {}x{} -> {} views\n",
        grid.height,
        grid.width,
        views.len()
    );

    for (index, view) in views.iter().enumerate() {
        let slice = extract_slice(&panorama, view)?;
        let first = slice.get_pixel(0, 0).0[0];
        let last = slice.get_pixel(view.side - 1, 0).0[0];
        println!(
            "view {index}: start column {:>2}, wraps {:<5} first/last pixel {:>3} {:>3}",
            view.start_column, view.wraps, first, last
        );
    }

    // Every panorama column appears in exactly two views.
    let mut coverage = vec![0u32; grid.width as usize];
    for view in &views {
        for column in view.columns(&grid) {
            coverage[(column - 1) as usize] += 1;
        }
    }
    println!("\ncolumn coverage: {coverage:?}");

    // The wrapping view reads columns [13..16, 1..4]: the seam becomes the
    // middle of an ordinary square image.
    let wrapping = views[3];
    let stitched = extract_slice(&panorama, &wrapping)?;
    let row: Vec<u8> = (0..wrapping.side)
        .map(|x| stitched.get_pixel(x, 0).0[0])
        .collect();
    println!("wrapping view row: {row:?}");
    Ok(())
}
