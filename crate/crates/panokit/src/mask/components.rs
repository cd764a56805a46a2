//! Connected-component labeling with optional seam adjacency.

use crate::mask::EntityMask;

/// Labeling result: `labels` is row-major, 0 for background, `1..=count`
/// for foreground components in first-encounter (scan) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabels {
    pub count: usize,
    pub labels: Vec<u32>,
}

/// Label 4-connected foreground components.
///
/// With `seam_aware` set, column `W` and column 1 of the same row are
/// neighbors, so entities crossing the +/-180 degree seam count as one
/// component.
pub fn connected_components(mask: &EntityMask, seam_aware: bool) -> ComponentLabels {
    label_regions(mask.grid().height, mask.grid().width, seam_aware, |i| {
        mask.bits()[i]
    })
}

/// BFS labeling over an arbitrary foreground predicate on a grid.
///
/// Shared by foreground components and by hole counting, which labels the
/// complement.
pub(crate) fn label_regions(
    height: u32,
    width: u32,
    seam_aware: bool,
    foreground: impl Fn(usize) -> bool,
) -> ComponentLabels {
    let h = height as usize;
    let w = width as usize;
    let mut labels = vec![0u32; h * w];
    let mut count = 0usize;
    let mut queue = std::collections::VecDeque::new();
    for start in 0..h * w {
        if labels[start] != 0 || !foreground(start) {
            continue;
        }
        count += 1;
        let label = count as u32;
        labels[start] = label;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            let row = i / w;
            let col = i % w;
            let mut push = |j: usize| {
                if labels[j] == 0 && foreground(j) {
                    labels[j] = label;
                    queue.push_back(j);
                }
            };
            if row > 0 {
                push(i - w);
            }
            if row + 1 < h {
                push(i + w);
            }
            if col > 0 {
                push(i - 1);
            } else if seam_aware && w > 1 {
                push(i + w - 1);
            }
            if col + 1 < w {
                push(i + 1);
            } else if seam_aware && w > 1 {
                push(i + 1 - w);
            }
        }
    }
    ComponentLabels { count, labels }
}
