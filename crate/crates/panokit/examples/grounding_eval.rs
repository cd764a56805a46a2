//! Score predicted masks against ground truth and print the grounding
//! report, including how direction bins are derived from centroids.
//!
//!     cargo run --example grounding_eval

use panokit::eval::{eval_grounding, GroundingSample};
use panokit::mask::EntityMask;
use panokit::ErpGrid;

fn main() -> panokit::Result<()> {
    let grid = ErpGrid::new(16, 32)?;
    let band =
        |lo: u32, hi: u32| move |h: u32, w: u32| (6..=10).contains(&h) && (lo..=hi).contains(&w);

    let samples = vec![
        // Exact hit, bin derived from the ground-truth centroid.
        GroundingSample {
            id: "exact".into(),
            predicted_mask: EntityMask::from_fn("exact/pred", grid, band(15, 18)),
            gt_mask: EntityMask::from_fn("exact/gt", grid, band(15, 18)),
            direction: None,
        },
        // Prediction shifted by half its width: IoU 1/3.
        GroundingSample {
            id: "shifted".into(),
            predicted_mask: EntityMask::from_fn("shifted/pred", grid, band(17, 20)),
            gt_mask: EntityMask::from_fn("shifted/gt", grid, band(15, 18)),
            direction: None,
        },
        // Ground truth straddles the seam; an explicit bin overrides the
        // derived one.
        GroundingSample {
            id: "seam".into(),
            predicted_mask: EntityMask::from_fn("seam/pred", grid, |h, w| {
                (6..=10).contains(&h) && (w >= 31 || w <= 2)
            }),
            gt_mask: EntityMask::from_fn("seam/gt", grid, |h, w| {
                (6..=10).contains(&h) && (w >= 31 || w <= 2)
            }),
            direction: Some(panokit::Direction::Back),
        },
        // Empty ground truth cannot be scored: recorded as errored.
        GroundingSample {
            id: "blank".into(),
            predicted_mask: EntityMask::from_fn("blank/pred", grid, band(3, 4)),
            gt_mask: EntityMask::empty("blank/gt", grid),
            direction: None,
        },
    ];

    let report = eval_grounding(&samples)?;
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{rendered}");
    Ok(())
}
