//! File formats: mask PNGs, JSONL manifests, and JSON reports.
//!
//! Masks travel as 8-bit grayscale PNG, 0 background and 255 foreground;
//! any nonzero value reads back as foreground. Manifests are JSONL with
//! one record per line, and every path inside a manifest is resolved
//! relative to the manifest's own directory.

use std::io::BufRead;
use std::path::{Path, PathBuf};

use image::{DynamicImage, GrayImage};
use serde::de::DeserializeOwned;

use crate::error::{Error, Result};
use crate::eval::{CaptionSample, GroundingSample};
use crate::geom::{ErpGrid, SliceView};
use crate::mask::{Direction, EntityMask};
use crate::rope::PositionGrid;

/// One mask manifest line. `source_view` survives the round trip when the
/// mask came out of a slice; `merged_from` appears only in merge output.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MaskManifestEntry {
    pub id: String,
    pub path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_view: Option<SliceView>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub merged_from: Option<Vec<String>>,
}

/// One grounding benchmark line.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GroundingRecord {
    pub id: String,
    pub pred_mask_path: String,
    pub gt_mask_path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
}

/// One captioning benchmark line.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CaptionRecord {
    pub id: String,
    pub key_phrases: Vec<String>,
    pub predicted_caption: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
}

/// Serialized position grid: `g` holds the row encodings, `x` the column
/// encodings, `gamma` the latitude scale baked into `x`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PositionGridFile {
    #[serde(rename = "H")]
    pub height: u32,
    #[serde(rename = "W")]
    pub width: u32,
    pub gamma: f64,
    pub g: Vec<f64>,
    pub x: Vec<f64>,
}

impl From<&PositionGrid> for PositionGridFile {
    fn from(grid: &PositionGrid) -> Self {
        PositionGridFile {
            height: grid.grid().height,
            width: grid.grid().width,
            gamma: grid.column_scale(),
            g: grid.row_positions().to_vec(),
            x: grid.column_positions().to_vec(),
        }
    }
}

/// Write a mask as grayscale PNG, 0 background / 255 foreground.
pub fn write_mask_png(mask: &EntityMask, path: &Path) -> Result<()> {
    let grid = mask.grid();
    let image = GrayImage::from_fn(grid.width, grid.height, |x, y| {
        image::Luma([if mask.get(y + 1, x + 1) { 255 } else { 0 }])
    });
    image.save(path).map_err(|e| Error::image(path, e))
}

/// Read a mask PNG; the grid comes from the image dimensions and any
/// nonzero pixel is foreground. Color images are converted to luma first.
pub fn read_mask_png(id: &str, path: &Path) -> Result<EntityMask> {
    let gray = read_image(path)?.into_luma8();
    let grid = ErpGrid::new(gray.height(), gray.width())?;
    let bits = gray.pixels().map(|p| p.0[0] != 0).collect();
    EntityMask::new(id, grid, bits)
}

pub fn read_image(path: &Path) -> Result<DynamicImage> {
    image::open(path).map_err(|e| Error::image(path, e))
}

pub fn write_image(image: &DynamicImage, path: &Path) -> Result<()> {
    image.save(path).map_err(|e| Error::image(path, e))
}

fn manifest_base(path: &Path) -> PathBuf {
    match path.parent() {
        Some(parent) if parent != Path::new("") => parent.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    for (index, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line)
            .map_err(|e| Error::json(format!("{}:{}", path.display(), index + 1), e))?;
        records.push(record);
    }
    Ok(records)
}

fn write_jsonl<T: serde::Serialize>(records: &[T], path: &Path) -> Result<()> {
    let mut out = Vec::new();
    for record in records {
        let line = serde_json::to_string(record)
            .map_err(|e| Error::json(path.display().to_string(), e))?;
        out.extend_from_slice(line.as_bytes());
        out.push(b'\n');
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Load a mask manifest and the masks it points to.
///
/// All masks must share one grid and ids must be unique; `merged_from`
/// fields on input lines are ignored.
pub fn read_mask_manifest(path: &Path) -> Result<Vec<EntityMask>> {
    let entries: Vec<MaskManifestEntry> = read_jsonl(path)?;
    let base = manifest_base(path);
    let mut seen = std::collections::HashSet::new();
    let mut masks: Vec<EntityMask> = Vec::with_capacity(entries.len());
    for entry in &entries {
        if !seen.insert(entry.id.clone()) {
            return Err(Error::InvalidInput(format!(
                "{}: duplicate mask id {:?}",
                path.display(),
                entry.id
            )));
        }
        let mut mask = read_mask_png(&entry.id, &base.join(&entry.path))?;
        if let Some(view) = entry.source_view {
            mask = mask.with_source_view(view);
        }
        if let Some(first) = masks.first() {
            if first.grid() != mask.grid() {
                return Err(Error::GridMismatch(format!(
                    "{}: mask {:?} is {}x{} but {:?} is {}x{}",
                    path.display(),
                    entry.id,
                    mask.grid().height,
                    mask.grid().width,
                    first.id(),
                    first.grid().height,
                    first.grid().width,
                )));
            }
        }
        masks.push(mask);
    }
    Ok(masks)
}

/// Write merged masks and their manifest into `out_dir`; returns the
/// manifest path. PNGs are named by position so arbitrary ids stay out of
/// file names; the manifest carries the ids and the merged-from lists.
pub fn write_merged_masks(
    out_dir: &Path,
    merged: &[EntityMask],
    groups: &[Vec<String>],
) -> Result<PathBuf> {
    assert_eq!(merged.len(), groups.len(), "one group per merged mask");
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut entries = Vec::with_capacity(merged.len());
    for (index, (mask, group)) in merged.iter().zip(groups).enumerate() {
        let name = format!("merged_{index:03}.png");
        write_mask_png(mask, &out_dir.join(&name))?;
        entries.push(MaskManifestEntry {
            id: mask.id().to_string(),
            path: name,
            source_view: None,
            merged_from: Some(group.clone()),
        });
    }
    let manifest = out_dir.join("manifest.jsonl");
    write_jsonl(&entries, &manifest)?;
    Ok(manifest)
}

/// Load grounding samples, reading each referenced mask PNG.
pub fn read_grounding_samples(path: &Path) -> Result<Vec<GroundingSample>> {
    let records: Vec<GroundingRecord> = read_jsonl(path)?;
    let base = manifest_base(path);
    records
        .into_iter()
        .map(|record| {
            Ok(GroundingSample {
                predicted_mask: read_mask_png(&record.id, &base.join(&record.pred_mask_path))?,
                gt_mask: read_mask_png(&record.id, &base.join(&record.gt_mask_path))?,
                id: record.id,
                direction: record.direction,
            })
        })
        .collect()
}

/// Load captioning samples.
pub fn read_caption_samples(path: &Path) -> Result<Vec<CaptionSample>> {
    let records: Vec<CaptionRecord> = read_jsonl(path)?;
    Ok(records
        .into_iter()
        .map(|record| CaptionSample {
            id: record.id,
            key_phrases: record.key_phrases,
            predicted_caption: record.predicted_caption,
            direction: record.direction,
        })
        .collect())
}

/// Pretty-printed JSON with a trailing newline. Struct field order is
/// fixed, so equal values always produce identical bytes.
pub fn write_json_pretty<T: serde::Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::json(path.display().to_string(), e))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
