//! Probe attention logits across the panorama seam.
//!
//! With circular column positions the left and right neighbours of column 1
//! sit at the same encoded distance, so their logits match exactly; plain
//! 2D mRoPE indexing puts the wrap neighbour W-1 steps away.
//!
//!     cargo run --example attention_seam_probe

use panokit::rope::{attention_logit, mrope_position_grid, position_grid, RotaryConfig};
use panokit::{ErpGrid, PositionGrid};

fn logit_between(
    grid: &PositionGrid,
    config: &RotaryConfig,
    query: &[f64],
    key: &[f64],
    a: (u32, u32),
    b: (u32, u32),
) -> panokit::Result<f64> {
    attention_logit(
        query,
        key,
        grid.encoded(a.0, a.1)?,
        grid.encoded(b.0, b.1)?,
        config,
    )
}

fn main() -> panokit::Result<()> {
    let grid = ErpGrid::new(8, 16)?;
    let circular = position_grid(&grid);
    let baseline = mrope_position_grid(&grid);
    let config = RotaryConfig::new(64)?;

    let query: Vec<f64> = (0..64).map(|i| (0.37 * i as f64).sin()).collect();
    let key: Vec<f64> = (0..64).map(|i| (0.23 * i as f64 + 1.0).cos()).collect();

    println!("query at row 4, column 1; keys at its two horizontal neighbours\n");
    for (name, positions) in [("circular", &circular), ("baseline", &baseline)] {
        let right = logit_between(positions, &config, &query, &key, (4, 1), (4, 2))?;
        let wrap = logit_between(positions, &config, &query, &key, (4, 1), (4, 16))?;
        println!(
            "{name:<9} logit to col 2: {right:+.6}   to col 16: {wrap:+.6}   gap {:.2e}",
            (right - wrap).abs()
        );
    }

    // The rotation acts on position differences, so sliding both tokens by
    // the same offset leaves the logit unchanged wherever the encoded
    // deltas agree.
    println!("\nneighbour logits along row 4 (circular):");
    for w in 1..grid.width {
        let logit = logit_between(&circular, &config, &query, &key, (4, w), (4, w + 1))?;
        println!("  col {w:>2} -> {:>2}: {logit:+.6}", w + 1);
    }
    Ok(())
}
