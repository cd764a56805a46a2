//! Two-axis rotary embedding on position pairs.
//!
//! Channel pairs split into a vertical block driven by the row position and
//! a horizontal block driven by the column position. Each pair `(a, b)`
//! rotates by `position * frequency`, with per-axis frequencies
//! `base^(-i / pairs_in_axis)` exactly as in one-dimensional rotary
//! embeddings.

use crate::error::{Error, Result};

/// Rotary layout: embedding width, frequency base, axis split.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RotaryConfig {
    head_dim: usize,
    base: f64,
    vertical_fraction: f64,
}

impl RotaryConfig {
    /// Default layout: base 10000, half the pairs on each axis.
    pub fn new(head_dim: usize) -> Result<Self> {
        RotaryConfig {
            head_dim: 2,
            base: 10_000.0,
            vertical_fraction: 0.5,
        }
        .with_head_dim(head_dim)
    }

    fn with_head_dim(mut self, head_dim: usize) -> Result<Self> {
        if head_dim < 2 || head_dim % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "head_dim must be an even number of at least 2, got {head_dim}"
            )));
        }
        self.head_dim = head_dim;
        Ok(self)
    }

    pub fn with_base(mut self, base: f64) -> Result<Self> {
        if !(base.is_finite() && base > 0.0) {
            return Err(Error::InvalidInput(format!(
                "frequency base must be a positive finite number, got {base}"
            )));
        }
        self.base = base;
        Ok(self)
    }

    /// Fraction of channel pairs assigned to the vertical axis; the rest
    /// take the horizontal axis. Rounded to a whole number of pairs.
    pub fn with_vertical_fraction(mut self, fraction: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::InvalidInput(format!(
                "vertical fraction must lie in [0, 1], got {fraction}"
            )));
        }
        self.vertical_fraction = fraction;
        Ok(self)
    }

    pub fn head_dim(&self) -> usize {
        self.head_dim
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn vertical_fraction(&self) -> f64 {
        self.vertical_fraction
    }

    pub fn pairs(&self) -> usize {
        self.head_dim / 2
    }

    /// Pairs driven by the row position: the leading contiguous block.
    pub fn vertical_pairs(&self) -> usize {
        (self.pairs() as f64 * self.vertical_fraction).round() as usize
    }

    pub fn horizontal_pairs(&self) -> usize {
        self.pairs() - self.vertical_pairs()
    }

    /// Rotation angle of channel pair `pair` at position `(row, column)`.
    fn pair_angle(&self, pair: usize, position: (f64, f64)) -> f64 {
        let vertical = self.vertical_pairs();
        if pair < vertical {
            position.0 * frequency(self.base, pair, vertical)
        } else {
            position.1 * frequency(self.base, pair - vertical, self.horizontal_pairs())
        }
    }
}

/// `base^(-index / pairs)`: the standard rotary frequency ladder per axis.
fn frequency(base: f64, index: usize, pairs: usize) -> f64 {
    base.powf(-(index as f64) / pairs as f64)
}

/// Rotate a vector to its position. Pure; the input is unchanged.
///
/// Pair `i` occupies channels `(2i, 2i+1)`. Rotation preserves the norm of
/// every pair, so the whole map is an isometry.
pub fn rope_rotate(
    vector: &[f64],
    position: (f64, f64),
    config: &RotaryConfig,
) -> Result<Vec<f64>> {
    if vector.len() != config.head_dim() {
        return Err(Error::InvalidInput(format!(
            "vector length {} does not match head_dim {}",
            vector.len(),
            config.head_dim()
        )));
    }
    let mut out = vec![0.0; vector.len()];
    for pair in 0..config.pairs() {
        let (sin, cos) = config.pair_angle(pair, position).sin_cos();
        let a = vector[2 * pair];
        let b = vector[2 * pair + 1];
        out[2 * pair] = a * cos - b * sin;
        out[2 * pair + 1] = a * sin + b * cos;
    }
    Ok(out)
}

/// Dot product of two rotated vectors.
///
/// Because each pair rotation is a plane rotation, the result depends on
/// the positions only through their difference.
pub fn attention_logit(
    query: &[f64],
    key: &[f64],
    query_position: (f64, f64),
    key_position: (f64, f64),
    config: &RotaryConfig,
) -> Result<f64> {
    let q = rope_rotate(query, query_position, config)?;
    let k = rope_rotate(key, key_position, config)?;
    Ok(q.iter().zip(&k).map(|(a, b)| a * b).sum())
}
