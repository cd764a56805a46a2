//! Benchmark scoring: grounding via mask overlap, captioning via key-phrase
//! recall through a yes/no judge, aggregated into per-direction reports.

mod captioning;
mod grounding;

pub use captioning::{build_judge_questions, eval_captioning, recall_from_answers, CaptionSample};
pub use grounding::{eval_grounding, reliability_score, GroundingSample};

use crate::mask::Direction;

/// Which benchmark task a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalTask {
    Grounding,
    Captioning,
}

/// Mean score per lateral direction, already scaled to 0..100 with two
/// decimals. `None` means no sample landed in that bin.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct DirectionScores {
    pub front: Option<f64>,
    pub right: Option<f64>,
    pub back: Option<f64>,
    pub left: Option<f64>,
}

/// Sample tallies behind the means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct EvalCounts {
    pub front: usize,
    pub right: usize,
    pub back: usize,
    pub left: usize,
    pub top: usize,
    pub bottom: usize,
    pub undirected: usize,
    pub scored: usize,
    pub errored: usize,
    /// Judge replies that could not be parsed and were scored as "no".
    pub fallback_answers: usize,
}

/// Scored benchmark run.
///
/// `omnidirection` is the sample-weighted mean over every scored sample,
/// including top/bottom/undirected ones that the four lateral columns do
/// not show. Scores are stored ×100, rounded to two decimals, so the
/// serialized report matches the tabular presentation exactly.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EvalReport {
    pub task: EvalTask,
    pub per_direction: DirectionScores,
    pub omnidirection: Option<f64>,
    pub counts: EvalCounts,
    pub errored_ids: Vec<String>,
}

/// Scale a mean in [0, 1] to a percentage with two decimals.
fn round_pct(mean: f64) -> f64 {
    (mean * 10000.0).round() / 100.0
}

/// Order-stable accumulator shared by both tasks.
struct ReportBuilder {
    task: EvalTask,
    lateral_sums: [f64; 4],
    lateral_counts: [usize; 4],
    top: usize,
    bottom: usize,
    undirected: usize,
    total_sum: f64,
    total_count: usize,
    errored_ids: Vec<String>,
    fallback_answers: usize,
}

impl ReportBuilder {
    fn new(task: EvalTask) -> Self {
        ReportBuilder {
            task,
            lateral_sums: [0.0; 4],
            lateral_counts: [0; 4],
            top: 0,
            bottom: 0,
            undirected: 0,
            total_sum: 0.0,
            total_count: 0,
            errored_ids: Vec::new(),
            fallback_answers: 0,
        }
    }

    fn add_scored(&mut self, direction: Option<Direction>, score: f64) {
        self.total_sum += score;
        self.total_count += 1;
        match direction {
            Some(Direction::Front) => self.bin(0, score),
            Some(Direction::Right) => self.bin(1, score),
            Some(Direction::Back) => self.bin(2, score),
            Some(Direction::Left) => self.bin(3, score),
            Some(Direction::Top) => self.top += 1,
            Some(Direction::Bottom) => self.bottom += 1,
            None => self.undirected += 1,
        }
    }

    fn bin(&mut self, index: usize, score: f64) {
        self.lateral_sums[index] += score;
        self.lateral_counts[index] += 1;
    }

    fn add_errored(&mut self, id: &str) {
        self.errored_ids.push(id.to_string());
    }

    fn add_fallbacks(&mut self, n: usize) {
        self.fallback_answers += n;
    }

    fn finish(self) -> EvalReport {
        let mean = |index: usize| {
            (self.lateral_counts[index] > 0)
                .then(|| round_pct(self.lateral_sums[index] / self.lateral_counts[index] as f64))
        };
        EvalReport {
            task: self.task,
            per_direction: DirectionScores {
                front: mean(0),
                right: mean(1),
                back: mean(2),
                left: mean(3),
            },
            omnidirection: (self.total_count > 0)
                .then(|| round_pct(self.total_sum / self.total_count as f64)),
            counts: EvalCounts {
                front: self.lateral_counts[0],
                right: self.lateral_counts[1],
                back: self.lateral_counts[2],
                left: self.lateral_counts[3],
                top: self.top,
                bottom: self.bottom,
                undirected: self.undirected,
                scored: self.total_count,
                errored: self.errored_ids.len(),
                fallback_answers: self.fallback_answers,
            },
            errored_ids: self.errored_ids,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentage_rounding_uses_two_decimals() {
        assert_eq!(round_pct(0.5), 50.0);
        assert_eq!(round_pct(2.0 / 3.0), 66.67);
        assert_eq!(round_pct(0.123_456), 12.35);
        assert_eq!(round_pct(1.0), 100.0);
        assert_eq!(round_pct(0.0), 0.0);
    }

    #[test]
    fn builder_keeps_non_lateral_samples_out_of_the_columns() {
        let mut b = ReportBuilder::new(EvalTask::Grounding);
        b.add_scored(Some(Direction::Front), 0.5);
        b.add_scored(Some(Direction::Top), 1.0);
        b.add_scored(None, 0.0);
        let report = b.finish();
        assert_eq!(report.per_direction.front, Some(50.0));
        assert_eq!(report.per_direction.right, None);
        assert_eq!(report.omnidirection, Some(50.0));
        assert_eq!(report.counts.front, 1);
        assert_eq!(report.counts.top, 1);
        assert_eq!(report.counts.undirected, 1);
        assert_eq!(report.counts.scored, 3);
    }

    #[test]
    fn omnidirection_is_sample_weighted_not_a_mean_of_means() {
        let mut b = ReportBuilder::new(EvalTask::Grounding);
        b.add_scored(Some(Direction::Front), 1.0);
        b.add_scored(Some(Direction::Front), 1.0);
        b.add_scored(Some(Direction::Front), 1.0);
        b.add_scored(Some(Direction::Back), 0.0);
        let report = b.finish();
        assert_eq!(report.per_direction.front, Some(100.0));
        assert_eq!(report.per_direction.back, Some(0.0));
        // Mean of direction means would be 50; sample weighting gives 75.
        assert_eq!(report.omnidirection, Some(75.0));
    }

    #[test]
    fn an_all_errored_run_has_no_scores() {
        let mut b = ReportBuilder::new(EvalTask::Captioning);
        b.add_errored("a");
        b.add_errored("b");
        let report = b.finish();
        assert_eq!(report.omnidirection, None);
        assert_eq!(report.counts.errored, 2);
        assert_eq!(report.errored_ids, vec!["a", "b"]);
    }

    #[test]
    fn report_serialization_has_a_stable_field_order() {
        let mut b = ReportBuilder::new(EvalTask::Grounding);
        b.add_scored(Some(Direction::Front), 1.0);
        let json = serde_json::to_string(&b.finish()).unwrap();
        let task = json.find("\"task\"").unwrap();
        let per_direction = json.find("\"per_direction\"").unwrap();
        let omni = json.find("\"omnidirection\"").unwrap();
        let counts = json.find("\"counts\"").unwrap();
        let errored = json.find("\"errored_ids\"").unwrap();
        assert!(task < per_direction && per_direction < omni);
        assert!(omni < counts && counts < errored);
        assert!(json.contains("\"task\":\"grounding\""));
    }
}
