//! Compare the circular position grid against plain 2D mRoPE indexing and
//! run the structural self-checks on the column index.
//!
//!     cargo run --example position_grids

use panokit::rope::{check_properties, mrope_position_grid, position_grid};
use panokit::ErpGrid;

fn main() -> panokit::Result<()> {
    let grid = ErpGrid::new(2, 8)?;
    let circular = position_grid(&grid);
    let baseline = mrope_position_grid(&grid);

    println!("grid {}x{}", grid.height, grid.width);
    println!("column scale gamma = {:.6}", circular.column_scale());
    println!("circular columns:  {:?}", circular.column_positions());
    println!("baseline columns:  {:?}", baseline.column_positions());
    println!("rows (shared):     {:?}", circular.row_positions());

    // Columns 1 and W are adjacent on the cylinder; the circular encoding
    // gives them neighbouring positions, the baseline puts them W-1 apart.
    let (_, first) = circular.encoded(1, 1)?;
    let (_, last) = circular.encoded(1, grid.width)?;
    println!(
        "seam gap, circular: |{first:.4} - {last:.4}| = {:.4}",
        (first - last).abs()
    );
    let (_, first) = baseline.encoded(1, 1)?;
    let (_, last) = baseline.encoded(1, grid.width)?;
    println!(
        "seam gap, baseline: |{first:.4} - {last:.4}| = {:.4}",
        (first - last).abs()
    );

    for width in [5, 8, 64, 1024] {
        let report = check_properties(width)?;
        println!("\nW = {width}");
        for check in &report.checks {
            let flag = if check.pass { "pass" } else { "FAIL" };
            println!("  {flag}  {:<22} {}", check.property, check.details);
        }
    }
    Ok(())
}
