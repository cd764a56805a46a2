//! Fragment one object across the panorama seam into per-view masks, then
//! reunify the pieces by IoU merging.
//!
//! The wrapping view sees the whole object, the two edge views see half
//! each, so half-vs-whole overlap is IoU 0.5: the threshold decides
//! whether the pieces chain back together.
//!
//!     cargo run --example merge_seam_masks

use panokit::geom::{slice_views, ErpGrid};
use panokit::mask::{iou_matrix, merge_groups, merge_masks, project_mask_to_erp, EntityMask};

fn main() -> panokit::Result<()> {
    let grid = ErpGrid::new(16, 32)?;

    // A band straddling the seam: columns 29..32 and 1..4, rows 5..12.
    let object = EntityMask::from_fn("object", grid, |h, w| {
        (5..=12).contains(&h) && (w >= 29 || w <= 4)
    });
    println!("object: {} pixels across the seam", object.area());

    // Each slice view sees only its window; the wrapping view sees the
    // whole object because the seam is interior to it.
    let mut fragments = Vec::new();
    for (index, view) in slice_views(&grid)?.iter().enumerate() {
        let piece = object.extract_view(view)?;
        if piece.is_empty() {
            println!("view {index}: sees nothing");
            continue;
        }
        let fragment = project_mask_to_erp(&piece, view, &grid, format!("fragment-{index}"))?;
        println!(
            "view {index}: start {:>2}, wraps {:<5} -> {} pixels",
            view.start_column,
            view.wraps,
            fragment.area()
        );
        fragments.push(fragment);
    }

    let matrix = iou_matrix(&fragments)?;
    println!("\npairwise IoU:");
    for row in &matrix {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.3}")).collect();
        println!("  [{}]", cells.join(", "));
    }

    for threshold in [0.7, 0.4] {
        let groups = merge_groups(&fragments, threshold)?;
        let merged = merge_masks(&fragments, threshold)?;
        println!("\nthreshold {threshold}: groups {groups:?}");
        for mask in &merged {
            println!(
                "  merged {:?}: {} pixels, identical to the object: {}",
                mask.id(),
                mask.area(),
                mask.bits() == object.bits()
            );
        }
    }
    Ok(())
}
