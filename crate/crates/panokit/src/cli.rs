//! Command-line adapter over the library.
//!
//! Every subcommand parses its inputs, calls the matching library
//! operation, writes machine-readable output to `--out`, and prints a
//! short human summary to stdout. Exit codes: 0 success, 1 input-domain
//! error, 2 environment error (missing file, missing credential,
//! unreachable judge).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use image::DynamicImage;

use crate::error::{Error, Result};
use crate::eval::{eval_captioning, eval_grounding, EvalReport};
use crate::geom::{erp_to_perspective, extract_slice, slice_views, ErpGrid, SphericalPoint};
use crate::io;
use crate::judge::{build_judge, JudgeConfig, JudgeMode};
use crate::mask::{merge_groups, merge_masks};
use crate::rope::{check_properties, mrope_position_grid, position_grid};

#[derive(Parser)]
#[command(
    name = "panokit",
    version,
    about = "Panorama geometry, masks, and scoring tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum JudgeKind {
    Mock,
    Http,
}

#[derive(Subcommand)]
enum Command {
    /// Render a perspective view from an equirectangular panorama.
    Project {
        /// Input panorama image (PNG).
        #[arg(long)]
        image: PathBuf,
        /// View center latitude in degrees.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        center_lat: f64,
        /// View center longitude in degrees.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        center_lon: f64,
        /// Horizontal and vertical field of view in degrees.
        #[arg(long, default_value_t = 90.0)]
        fov: f64,
        /// Output image side in pixels.
        #[arg(long, default_value_t = 512)]
        side: u32,
        /// Output image path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Cut a 2:1 panorama into the four overlapping square views.
    Slice {
        /// Input panorama image (PNG), width = 2 x height.
        #[arg(long)]
        image: PathBuf,
        /// Output directory for slice_?.png and views.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Merge overlapping masks from a manifest by IoU grouping.
    MergeMasks {
        /// Input mask manifest (JSONL: {id, path, source_view?}).
        #[arg(long)]
        manifest: PathBuf,
        /// IoU threshold; masks merge when IoU is strictly above it.
        #[arg(long, default_value_t = 0.7)]
        threshold: f64,
        /// Output directory for merged PNGs and manifest.jsonl.
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit the positional-encoding grid for an HxW token layout.
    RopeGrid {
        /// Token rows.
        #[arg(long)]
        h: u32,
        /// Token columns.
        #[arg(long)]
        w: u32,
        /// Emit the plain (h, w) baseline grid instead.
        #[arg(long, default_value_t = false)]
        mrope: bool,
        /// Output JSON path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the circular column index properties for one width.
    RopeCheck {
        /// Token columns.
        #[arg(long)]
        w: u32,
        /// Output JSON report path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a grounding run from a JSONL sample manifest.
    EvalGrounding {
        /// Samples (JSONL: {id, pred_mask_path, gt_mask_path}).
        #[arg(long)]
        samples: PathBuf,
        /// Accepted for symmetry with eval-caption; grounding scoring is
        /// plain arithmetic and ignores it.
        #[arg(long, default_value_t = 4)]
        jobs: usize,
        /// Output JSON report path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Score a captioning run through a yes/no judge.
    EvalCaption {
        /// Samples (JSONL: {id, key_phrases, predicted_caption, direction?}).
        #[arg(long)]
        samples: PathBuf,
        /// Judge backend.
        #[arg(long, value_enum, default_value_t = JudgeKind::Mock)]
        judge: JudgeKind,
        /// Judge endpoint URL (http mode).
        #[arg(long)]
        endpoint: Option<String>,
        /// Judge model name (http mode).
        #[arg(long)]
        model: Option<String>,
        /// Environment variable holding the judge API token.
        #[arg(long, default_value = "JUDGE_API_KEY")]
        auth_env: String,
        /// Per-request timeout in seconds.
        #[arg(long, default_value_t = 30)]
        timeout: u64,
        /// Transport retries per question.
        #[arg(long, default_value_t = 2)]
        retries: u32,
        /// Maximum judge questions in flight.
        #[arg(long, default_value_t = 4)]
        jobs: usize,
        /// Output JSON report path.
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default()).try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Project {
            image,
            center_lat,
            center_lon,
            fov,
            side,
            out,
        } => project(&image, center_lat, center_lon, fov, side, &out),
        Command::Slice { image, out } => slice(&image, &out),
        Command::MergeMasks {
            manifest,
            threshold,
            out,
        } => merge(&manifest, threshold, &out),
        Command::RopeGrid { h, w, mrope, out } => rope_grid(h, w, mrope, &out),
        Command::RopeCheck { w, out } => rope_check(w, &out),
        Command::EvalGrounding {
            samples,
            jobs: _,
            out,
        } => grounding(&samples, &out),
        Command::EvalCaption {
            samples,
            judge,
            endpoint,
            model,
            auth_env,
            timeout,
            retries,
            jobs,
            out,
        } => caption(
            &samples, judge, endpoint, model, auth_env, timeout, retries, jobs, &out,
        ),
    }
}

/// Project or slice while keeping the input's channel layout: grayscale
/// stays grayscale, everything else goes through RGB.
fn project_dynamic(
    image: &DynamicImage,
    center: SphericalPoint,
    fov: f64,
    side: u32,
) -> Result<DynamicImage> {
    Ok(match image {
        DynamicImage::ImageLuma8(img) => {
            DynamicImage::ImageLuma8(erp_to_perspective(img, center, fov, side)?)
        }
        DynamicImage::ImageRgb8(img) => {
            DynamicImage::ImageRgb8(erp_to_perspective(img, center, fov, side)?)
        }
        other => DynamicImage::ImageRgb8(erp_to_perspective(&other.to_rgb8(), center, fov, side)?),
    })
}

fn slice_dynamic(image: &DynamicImage, view: &crate::geom::SliceView) -> Result<DynamicImage> {
    Ok(match image {
        DynamicImage::ImageLuma8(img) => DynamicImage::ImageLuma8(extract_slice(img, view)?),
        DynamicImage::ImageRgb8(img) => DynamicImage::ImageRgb8(extract_slice(img, view)?),
        other => DynamicImage::ImageRgb8(extract_slice(&other.to_rgb8(), view)?),
    })
}

fn project(
    image_path: &Path,
    center_lat: f64,
    center_lon: f64,
    fov: f64,
    side: u32,
    out: &Path,
) -> Result<()> {
    let image = io::read_image(image_path)?;
    let center = SphericalPoint::new(center_lat, center_lon)?;
    let view = project_dynamic(&image, center, fov, side)?;
    io::write_image(&view, out)?;
    println!(
        "projected {} at (lat {center_lat}, lon {center_lon}), fov {fov} -> {} ({side}x{side})",
        image_path.display(),
        out.display()
    );
    Ok(())
}

fn slice(image_path: &Path, out: &Path) -> Result<()> {
    let image = io::read_image(image_path)?;
    let grid = ErpGrid::new(image.height(), image.width())?;
    let views = slice_views(&grid)?;
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    for (index, view) in views.iter().enumerate() {
        let slice = slice_dynamic(&image, view)?;
        let path = out.join(format!("slice_{index}.png"));
        io::write_image(&slice, &path)?;
        println!(
            "slice {index}: columns from {} ({}){} -> {}",
            view.start_column,
            view.side,
            if view.wraps { ", wraps" } else { "" },
            path.display()
        );
    }
    io::write_json_pretty(&views, &out.join("views.json"))?;
    println!(
        "wrote {} views -> {}",
        views.len(),
        out.join("views.json").display()
    );
    Ok(())
}

fn merge(manifest: &Path, threshold: f64, out: &Path) -> Result<()> {
    let masks = io::read_mask_manifest(manifest)?;
    let groups = merge_groups(&masks, threshold)?;
    let merged = merge_masks(&masks, threshold)?;
    let id_groups: Vec<Vec<String>> = groups
        .iter()
        .map(|group| group.iter().map(|&i| masks[i].id().to_string()).collect())
        .collect();
    let manifest_out = io::write_merged_masks(out, &merged, &id_groups)?;
    println!(
        "merged {} masks into {} at threshold {threshold} -> {}",
        masks.len(),
        merged.len(),
        manifest_out.display()
    );
    Ok(())
}

fn rope_grid(h: u32, w: u32, mrope: bool, out: &Path) -> Result<()> {
    let grid = ErpGrid::new(h, w)?;
    let positions = if mrope {
        mrope_position_grid(&grid)
    } else {
        position_grid(&grid)
    };
    io::write_json_pretty(&io::PositionGridFile::from(&positions), out)?;
    println!(
        "wrote {} position grid {h}x{w} (gamma {:.6}) -> {}",
        if mrope { "baseline" } else { "panoramic" },
        positions.column_scale(),
        out.display()
    );
    Ok(())
}

fn rope_check(w: u32, out: &Path) -> Result<()> {
    let report = check_properties(w)?;
    io::write_json_pretty(&report, out)?;
    for check in &report.checks {
        println!(
            "{}: {} ({})",
            check.property,
            if check.pass { "pass" } else { "FAIL" },
            check.details
        );
    }
    if !report.all_pass() {
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.property.as_str())
            .collect();
        return Err(Error::InvalidInput(format!(
            "properties failed for W={w}: {}",
            failing.join(", ")
        )));
    }
    println!(
        "all {} properties pass for W={w} -> {}",
        report.checks.len(),
        out.display()
    );
    Ok(())
}

fn print_report(report: &EvalReport) {
    let cell = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.2}"));
    println!(
        "front {}  right {}  back {}  left {}  omnidirection {}",
        cell(report.per_direction.front),
        cell(report.per_direction.right),
        cell(report.per_direction.back),
        cell(report.per_direction.left),
        cell(report.omnidirection),
    );
    let mut tail = format!(
        "scored {}  errored {}",
        report.counts.scored, report.counts.errored
    );
    if !report.errored_ids.is_empty() {
        tail.push_str(&format!(" ({})", report.errored_ids.join(", ")));
    }
    if report.counts.fallback_answers > 0 {
        tail.push_str(&format!(
            "  fallback answers {}",
            report.counts.fallback_answers
        ));
    }
    println!("{tail}");
}

fn grounding(samples_path: &Path, out: &Path) -> Result<()> {
    let samples = io::read_grounding_samples(samples_path)?;
    let report = eval_grounding(&samples)?;
    io::write_json_pretty(&report, out)?;
    print_report(&report);
    println!("wrote grounding report -> {}", out.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn caption(
    samples_path: &Path,
    judge_kind: JudgeKind,
    endpoint: Option<String>,
    model: Option<String>,
    auth_env: String,
    timeout: u64,
    retries: u32,
    jobs: usize,
    out: &Path,
) -> Result<()> {
    let samples = io::read_caption_samples(samples_path)?;
    let config = JudgeConfig {
        mode: match judge_kind {
            JudgeKind::Mock => JudgeMode::Mock,
            JudgeKind::Http => JudgeMode::Http,
        },
        endpoint_url: endpoint,
        model_name: model,
        auth_env,
        timeout_secs: timeout,
        max_retries: retries,
        concurrency_limit: jobs,
        template: Default::default(),
    };
    let judge = build_judge(&config)?;
    let report = eval_captioning(&samples, judge.as_ref(), &config.template)?;
    io::write_json_pretty(&report, out)?;
    print_report(&report);
    println!("wrote captioning report -> {}", out.display());
    Ok(())
}
