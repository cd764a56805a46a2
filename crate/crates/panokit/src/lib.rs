//! Tools for working with 360-degree panoramas stored as equirectangular
//! (ERP) images: pixel/angle conversions, overlapping square slice views,
//! perspective reprojection, entity-mask merging and quality checks,
//! circular rotary position grids, and benchmark scoring with a pluggable
//! yes/no judge.
//!
//! The crate is organized by what each piece does:
//!
//! - [`geom`]: the ERP pixel grid, slice-view decomposition, gnomonic views
//! - [`mask`]: binary entity masks, IoU merging, components, centroids
//! - [`rope`]: circular column indices and rotary position grids
//! - [`eval`]: grounding and captioning report computation
//! - [`judge`]: mock and HTTP yes/no judge clients
//! - [`io`]: PNG masks, JSONL manifests, JSON reports

pub mod cli;
pub mod error;
pub mod eval;
pub mod geom;
pub mod io;
pub mod judge;
pub mod mask;
pub mod rope;

pub use error::{Error, Result};
pub use geom::{ErpGrid, PerspectiveCamera, SliceView, SphericalPoint};
pub use mask::{Direction, EntityMask, MaskQualityVerdict, MaskStatus};
pub use rope::{PositionGrid, RotaryConfig};
