//! Captioning task scoring: key-phrase recall through a yes/no judge.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::eval::{EvalReport, EvalTask, ReportBuilder};
use crate::judge::{Judge, JudgeReply, QuestionTemplate};
use crate::mask::Direction;

/// One captioning benchmark entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaptionSample {
    pub id: String,
    pub key_phrases: Vec<String>,
    pub predicted_caption: String,
    /// Direction bin; samples without one count only toward the
    /// omnidirection mean.
    pub direction: Option<Direction>,
}

fn normalize_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

impl CaptionSample {
    /// Key phrases must be non-empty and pairwise distinct once whitespace
    /// runs are collapsed; duplicates would double-count coverage.
    pub fn validate(&self) -> Result<()> {
        if self.key_phrases.is_empty() {
            return Err(Error::InvalidInput(format!(
                "sample {}: key_phrases must be non-empty",
                self.id
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for phrase in &self.key_phrases {
            let normalized = normalize_whitespace(phrase);
            if normalized.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "sample {}: blank key phrase",
                    self.id
                )));
            }
            if !seen.insert(normalized) {
                return Err(Error::InvalidInput(format!(
                    "sample {}: duplicate key phrase {phrase:?}",
                    self.id
                )));
            }
        }
        Ok(())
    }
}

/// Render one judge question per key phrase, in phrase order.
pub fn build_judge_questions(
    sample: &CaptionSample,
    template: &QuestionTemplate,
) -> Vec<(String, String)> {
    sample
        .key_phrases
        .iter()
        .map(|phrase| {
            (
                phrase.clone(),
                template.render(phrase, &sample.predicted_caption),
            )
        })
        .collect()
}

/// Fraction of yes answers.
pub fn recall_from_answers(answers: &[bool]) -> Result<f64> {
    if answers.is_empty() {
        return Err(Error::InvalidInput(
            "recall needs at least one answer".into(),
        ));
    }
    Ok(answers.iter().filter(|&&a| a).count() as f64 / answers.len() as f64)
}

/// Score a captioning run.
///
/// Every (sample, phrase) question is fanned out over up to
/// `judge.concurrency_limit()` worker threads and the replies are
/// re-associated by position, so the report is identical no matter how the
/// judge interleaves. A sample whose judge calls fail even after the
/// client's retries is recorded as errored and excluded from means.
/// `counts.fallback_answers` tallies every reply the judge had to score as
/// "no" because it never parsed, whether or not its sample survived.
pub fn eval_captioning(
    samples: &[CaptionSample],
    judge: &dyn Judge,
    template: &QuestionTemplate,
) -> Result<EvalReport> {
    if samples.is_empty() {
        return Err(Error::InvalidInput(
            "captioning evaluation needs at least one sample".into(),
        ));
    }
    for sample in samples {
        sample.validate()?;
    }

    let questions: Vec<String> = samples
        .iter()
        .flat_map(|sample| {
            build_judge_questions(sample, template)
                .into_iter()
                .map(|(_, question)| question)
        })
        .collect();
    let replies: Vec<OnceLock<Result<JudgeReply>>> =
        questions.iter().map(|_| OnceLock::new()).collect();
    let cursor = AtomicUsize::new(0);
    let workers = judge.concurrency_limit().clamp(1, questions.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = cursor.fetch_add(1, Ordering::Relaxed);
                if index >= questions.len() {
                    break;
                }
                let reply = judge.ask(&questions[index]);
                replies[index]
                    .set(reply)
                    .unwrap_or_else(|_| unreachable!("each question is claimed once"));
            });
        }
    });

    let mut builder = ReportBuilder::new(EvalTask::Captioning);
    let mut next = 0usize;
    for sample in samples {
        let span = &replies[next..next + sample.key_phrases.len()];
        next += sample.key_phrases.len();
        let mut answers = Vec::with_capacity(span.len());
        let mut failed = false;
        for slot in span {
            match slot.get().expect("all questions were answered") {
                Ok(reply) => {
                    if reply.unparseable_fallback {
                        builder.add_fallbacks(1);
                    }
                    answers.push(reply.answer);
                }
                Err(_) => failed = true,
            }
        }
        if failed {
            builder.add_errored(&sample.id);
            continue;
        }
        builder.add_scored(sample.direction, recall_from_answers(&answers)?);
    }
    Ok(builder.finish())
}
