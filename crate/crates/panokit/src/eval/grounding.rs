//! Grounding task scoring: predicted mask against ground truth by IoU.

use crate::error::{Error, Result};
use crate::eval::{EvalReport, EvalTask, ReportBuilder};
use crate::mask::{circular_centroid, direction_of, iou, Direction, EntityMask};

/// One grounding benchmark entry.
#[derive(Debug, Clone)]
pub struct GroundingSample {
    pub id: String,
    pub predicted_mask: EntityMask,
    pub gt_mask: EntityMask,
    /// Direction bin; derived from the ground-truth centroid when absent.
    pub direction: Option<Direction>,
}

/// IoU of a candidate mask against a non-empty reference entity.
///
/// This is the same score grounding evaluation assigns per sample; it also
/// serves as the mask reliability measure (how well a candidate covers a
/// known entity).
pub fn reliability_score(candidate_mask: &EntityMask, entity_mask: &EntityMask) -> Result<f64> {
    if entity_mask.is_empty() {
        return Err(Error::EmptyMask(entity_mask.id().to_string()));
    }
    iou(candidate_mask, entity_mask)
}

/// Score a grounding run.
///
/// Sample score is `iou(predicted, gt)`. Samples with an empty ground-truth
/// mask, or whose direction cannot be derived (centroid degenerate), are
/// recorded as errored and excluded from every mean. A mismatched grid
/// between predicted and ground truth fails the whole call: that is a
/// malformed benchmark, not a bad sample.
pub fn eval_grounding(samples: &[GroundingSample]) -> Result<EvalReport> {
    if samples.is_empty() {
        return Err(Error::InvalidInput(
            "grounding evaluation needs at least one sample".into(),
        ));
    }
    let mut builder = ReportBuilder::new(EvalTask::Grounding);
    for sample in samples {
        if sample.gt_mask.is_empty() {
            builder.add_errored(&sample.id);
            continue;
        }
        let direction = match sample.direction {
            Some(direction) => direction,
            None => match circular_centroid(&sample.gt_mask) {
                Ok(centroid) => direction_of(centroid),
                Err(Error::DegenerateCentroid) => {
                    builder.add_errored(&sample.id);
                    continue;
                }
                Err(other) => return Err(other),
            },
        };
        let score = iou(&sample.predicted_mask, &sample.gt_mask)?;
        builder.add_scored(Some(direction), score);
    }
    Ok(builder.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ErpGrid;

    /// Mask covering an inclusive 1-based column range on every row.
    fn band(grid: ErpGrid, id: &str, cols: std::ops::RangeInclusive<u32>) -> EntityMask {
        EntityMask::from_fn(id, grid, |_, w| cols.contains(&w))
    }

    fn grid() -> ErpGrid {
        // 8x16: column centers at longitude -168.75 + 22.5*(w-1).
        ErpGrid::new(8, 16).unwrap()
    }

    #[test]
    fn perfect_predictions_score_100_everywhere() {
        let gt = band(grid(), "gt", 7..=9); // centered near longitude 0
        let samples = vec![GroundingSample {
            id: "s1".into(),
            predicted_mask: gt.clone(),
            gt_mask: gt,
            direction: None,
        }];
        let report = eval_grounding(&samples).unwrap();
        assert_eq!(report.per_direction.front, Some(100.0));
        assert_eq!(report.omnidirection, Some(100.0));
        assert_eq!(report.counts.scored, 1);
    }

    #[test]
    fn the_two_sample_fixture_reports_50_100_75() {
        // Bands 7..=9 vs 8..=10 intersect in 2 columns and union over 4,
        // so the front sample scores exactly 0.5.
        let gt_front = band(grid(), "gt-front", 7..=9);
        let pred_front = band(grid(), "pred-front", 8..=10);
        assert_eq!(iou(&pred_front, &gt_front).unwrap(), 0.5);

        let gt_back = band(grid(), "gt-back", 1..=1); // longitude -168.75: back bin
        let samples = vec![
            GroundingSample {
                id: "front".into(),
                predicted_mask: pred_front,
                gt_mask: gt_front,
                direction: None,
            },
            GroundingSample {
                id: "back".into(),
                predicted_mask: gt_back.clone(),
                gt_mask: gt_back,
                direction: None,
            },
        ];
        let report = eval_grounding(&samples).unwrap();
        assert_eq!(report.per_direction.front, Some(50.0));
        assert_eq!(report.per_direction.back, Some(100.0));
        assert_eq!(report.per_direction.right, None);
        assert_eq!(report.omnidirection, Some(75.0));
        assert_eq!(report.counts.front, 1);
        assert_eq!(report.counts.back, 1);
    }

    #[test]
    fn an_empty_prediction_scores_zero_without_erroring() {
        let gt = band(grid(), "gt", 7..=9);
        let empty = EntityMask::empty("pred", grid());
        let report = eval_grounding(&[GroundingSample {
            id: "s".into(),
            predicted_mask: empty,
            gt_mask: gt,
            direction: None,
        }])
        .unwrap();
        assert_eq!(report.omnidirection, Some(0.0));
        assert_eq!(report.counts.errored, 0);
    }

    #[test]
    fn empty_ground_truth_marks_the_sample_errored() {
        let gt_good = band(grid(), "gt", 7..=9);
        let report = eval_grounding(&[
            GroundingSample {
                id: "bad".into(),
                predicted_mask: gt_good.clone(),
                gt_mask: EntityMask::empty("gt-empty", grid()),
                direction: None,
            },
            GroundingSample {
                id: "good".into(),
                predicted_mask: gt_good.clone(),
                gt_mask: gt_good,
                direction: None,
            },
        ])
        .unwrap();
        assert_eq!(report.errored_ids, vec!["bad"]);
        assert_eq!(report.counts.errored, 1);
        assert_eq!(report.counts.scored, 1);
        // The errored sample pulls down nothing.
        assert_eq!(report.omnidirection, Some(100.0));
    }

    #[test]
    fn direction_comes_from_the_gt_centroid_when_absent() {
        // Columns 11..=12 sit at longitudes 56.25 and 78.75: right bin.
        let gt = band(grid(), "gt", 11..=12);
        let report = eval_grounding(&[GroundingSample {
            id: "s".into(),
            predicted_mask: gt.clone(),
            gt_mask: gt,
            direction: None,
        }])
        .unwrap();
        assert_eq!(report.per_direction.right, Some(100.0));
    }

    #[test]
    fn a_provided_direction_wins_over_the_centroid() {
        let gt = band(grid(), "gt", 7..=9); // centroid says front
        let report = eval_grounding(&[GroundingSample {
            id: "s".into(),
            predicted_mask: gt.clone(),
            gt_mask: gt,
            direction: Some(Direction::Left),
        }])
        .unwrap();
        assert_eq!(report.per_direction.left, Some(100.0));
        assert_eq!(report.per_direction.front, None);
    }

    #[test]
    fn polar_samples_count_only_toward_omnidirection() {
        // Two cells on the top row (latitude 78.75); a full row would have
        // no mean longitude at all.
        let polar = EntityMask::from_fn("gt", grid(), |h, w| h == 1 && w <= 2);
        let report = eval_grounding(&[GroundingSample {
            id: "s".into(),
            predicted_mask: polar.clone(),
            gt_mask: polar,
            direction: None,
        }])
        .unwrap();
        assert_eq!(report.per_direction, Default::default());
        assert_eq!(report.counts.top, 1);
        assert_eq!(report.omnidirection, Some(100.0));
    }

    #[test]
    fn a_degenerate_centroid_is_a_sample_error() {
        // Two antipodal equal-weight columns cancel the longitude vector.
        let grid = ErpGrid::new(1, 4).unwrap(); // longitudes -135, -45, 45, 135
        let gt = EntityMask::from_fn("gt", grid, |_, w| w == 2 || w == 4);
        let report = eval_grounding(&[GroundingSample {
            id: "cancelled".into(),
            predicted_mask: gt.clone(),
            gt_mask: gt,
            direction: None,
        }])
        .unwrap();
        assert_eq!(report.errored_ids, vec!["cancelled"]);
        assert_eq!(report.omnidirection, None);
    }

    #[test]
    fn mismatched_grids_fail_the_whole_call() {
        let gt = band(grid(), "gt", 7..=9);
        let other = band(ErpGrid::new(4, 8).unwrap(), "pred", 1..=2);
        assert!(eval_grounding(&[GroundingSample {
            id: "s".into(),
            predicted_mask: other,
            gt_mask: gt,
            direction: None,
        }])
        .is_err());
    }

    #[test]
    fn an_empty_sample_list_is_rejected() {
        assert!(eval_grounding(&[]).is_err());
    }

    #[test]
    fn reliability_score_matches_the_grounding_score() {
        let gt = band(grid(), "gt", 7..=9);
        let pred = band(grid(), "pred", 8..=10);
        assert_eq!(reliability_score(&pred, &gt).unwrap(), 0.5);
        assert!(reliability_score(&pred, &EntityMask::empty("e", grid())).is_err());
    }

    #[test]
    fn half_overlapping_equal_rectangles_score_one_third() {
        // Overlap is half of each rectangle: |I| = A/2, |U| = 3A/2.
        let a = band(grid(), "a", 1..=4);
        let b = band(grid(), "b", 3..=6);
        assert!((reliability_score(&a, &b).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn reports_are_permutation_invariant_up_to_error_order() {
        let gt1 = band(grid(), "g1", 7..=9);
        let p1 = band(grid(), "p1", 8..=10);
        let gt2 = band(grid(), "g2", 1..=1);
        let s1 = GroundingSample {
            id: "a".into(),
            predicted_mask: p1,
            gt_mask: gt1,
            direction: None,
        };
        let s2 = GroundingSample {
            id: "b".into(),
            predicted_mask: gt2.clone(),
            gt_mask: gt2,
            direction: None,
        };
        let forward = eval_grounding(&[s1.clone(), s2.clone()]).unwrap();
        let reverse = eval_grounding(&[s2, s1]).unwrap();
        assert_eq!(forward.per_direction, reverse.per_direction);
        assert_eq!(forward.omnidirection, reverse.omnidirection);
        assert_eq!(forward.counts, reverse.counts);
    }
}
