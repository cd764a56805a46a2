//! IoU computation and overlap-driven mask merging.

use crate::error::{Error, Result};
use crate::mask::EntityMask;

/// Intersection over union of two masks on the same grid.
///
/// Undefined (an error) when both masks are empty.
pub fn iou(a: &EntityMask, b: &EntityMask) -> Result<f64> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch(format!(
            "masks '{}' and '{}' live on different grids",
            a.id(),
            b.id()
        )));
    }
    let mut intersection = 0usize;
    let mut union = 0usize;
    for (&x, &y) in a.bits().iter().zip(b.bits()) {
        intersection += (x && y) as usize;
        union += (x || y) as usize;
    }
    if union == 0 {
        return Err(Error::EmptyIou);
    }
    Ok(intersection as f64 / union as f64)
}

/// Pairwise IoU matrix.
///
/// Symmetric with a unit diagonal for non-empty masks. A pair of empty
/// masks scores 0 rather than erroring, so bookkeeping over mask lists that
/// legitimately contain empty masks stays total; that convention also puts
/// 0 on the diagonal for an empty mask.
pub fn iou_matrix(masks: &[EntityMask]) -> Result<Vec<Vec<f64>>> {
    let n = masks.len();
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let value = match iou(&masks[i], &masks[j]) {
                Ok(v) => v,
                Err(Error::EmptyIou) => 0.0,
                Err(e) => return Err(e),
            };
            matrix[i][j] = value;
            matrix[j][i] = value;
        }
    }
    Ok(matrix)
}

/// Group indices by the transitive closure of `iou > threshold` (strict).
///
/// Groups come out ordered by their smallest member index, members in input
/// order. Masks overlapping nothing form singleton groups.
pub fn merge_groups(masks: &[EntityMask], threshold: f64) -> Result<Vec<Vec<usize>>> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::InvalidInput(format!(
            "merge threshold must lie in [0, 1], got {threshold}"
        )));
    }
    let n = masks.len();
    let matrix = iou_matrix(masks)?;
    let mut forest = DisjointSets::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if matrix[i][j] > threshold {
                forest.union(i, j);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let root = forest.find(i);
        if group_of_root[root] == usize::MAX {
            group_of_root[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of_root[root]].push(i);
    }
    Ok(groups)
}

/// Replace each overlap group with the pixelwise union of its members.
///
/// The merged mask takes the id of the group's first member (smallest input
/// index); input order of groups is preserved. No pixel is created or lost:
/// the union of the outputs equals the union of the inputs.
pub fn merge_masks(masks: &[EntityMask], threshold: f64) -> Result<Vec<EntityMask>> {
    let groups = merge_groups(masks, threshold)?;
    let mut out = Vec::with_capacity(groups.len());
    for group in groups {
        let mut merged = masks[group[0]].clone();
        if group.len() == 1 {
            out.push(merged);
            continue;
        }
        let mut bits = merged.bits().to_vec();
        for &i in &group[1..] {
            for (dst, &src) in bits.iter_mut().zip(masks[i].bits()) {
                *dst |= src;
            }
        }
        merged = EntityMask::new(masks[group[0]].id(), merged.grid(), bits)?;
        out.push(merged);
    }
    Ok(out)
}

/// Union-find with path halving and union by size.
struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}
