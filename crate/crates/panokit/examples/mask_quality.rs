//! Screen masks for the defects that make them useless as entity regions,
//! then locate the survivors on the sphere.
//!
//!     cargo run --example mask_quality

use panokit::mask::{
    circular_centroid, direction_of, quality_filter, EntityMask, DEFAULT_MIN_AREA_FRACTION,
};
use panokit::ErpGrid;

fn describe(mask: &EntityMask) {
    let verdict = quality_filter(mask, DEFAULT_MIN_AREA_FRACTION);
    println!(
        "{:<12} {:?}: {} components, {} holes, area fraction {:.2e}",
        mask.id(),
        verdict.status,
        verdict.component_count,
        verdict.hole_count,
        verdict.area_fraction
    );
}

fn main() -> panokit::Result<()> {
    let grid = ErpGrid::new(64, 128)?;

    let solid = EntityMask::from_fn("solid", grid, |h, w| {
        (20..=40).contains(&h) && (30..=60).contains(&w)
    });
    let ring = EntityMask::from_fn("ring", grid, |h, w| {
        (20..=40).contains(&h)
            && (30..=60).contains(&w)
            && !((25..=35).contains(&h) && (35..=55).contains(&w))
    });
    let split = EntityMask::from_fn("split", grid, |h, w| {
        (20..=40).contains(&h) && ((30..=40).contains(&w) || (80..=90).contains(&w))
    });
    let speck = EntityMask::from_fn("speck", grid, |h, w| h == 10 && w == 10);
    // Two pieces at the left and right image edges are one region on the
    // cylinder: component counting follows the seam.
    let seam_band = EntityMask::from_fn("seam-band", grid, |h, w| {
        (28..=36).contains(&h) && (w <= 5 || w >= 124)
    });

    for mask in [&solid, &ring, &split, &speck, &seam_band] {
        describe(mask);
    }

    println!();
    for mask in [&solid, &seam_band] {
        let centroid = circular_centroid(mask)?;
        println!(
            "{:<12} centroid ({:+6.2}, {:+7.2}) -> {:?}",
            mask.id(),
            centroid.latitude_deg,
            centroid.longitude_deg,
            direction_of(centroid)
        );
    }
    Ok(())
}
