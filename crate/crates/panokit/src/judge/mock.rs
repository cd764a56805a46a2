//! Offline judge that answers by normalized substring matching.

use crate::error::Result;
use crate::judge::{Judge, JudgeReply, QuestionTemplate};

/// Lowercase, map every non-alphanumeric character to a space, and collapse
/// runs of spaces. "Red-couch!" and "red couch" normalize identically.
pub fn normalize_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for c in text.chars() {
        if c.is_alphanumeric() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.extend(c.to_lowercase());
        } else {
            pending_space = true;
        }
    }
    out
}

/// Deterministic judge for tests and offline runs.
///
/// It splits the question back into phrase and caption using the same
/// template that rendered it, then answers yes iff the normalized caption
/// contains the normalized phrase. Questions that do not match the template
/// are an input error, not a "no".
pub struct MockJudge {
    template: QuestionTemplate,
    concurrency_limit: usize,
}

impl MockJudge {
    pub fn new(template: QuestionTemplate, concurrency_limit: usize) -> Self {
        MockJudge {
            template,
            concurrency_limit: concurrency_limit.max(1),
        }
    }
}

impl Default for MockJudge {
    fn default() -> Self {
        MockJudge::new(QuestionTemplate::default(), 4)
    }
}

impl Judge for MockJudge {
    fn ask(&self, question: &str) -> Result<JudgeReply> {
        let (phrase, caption) = self.template.parse(question)?;
        let answer = normalize_text(&caption).contains(&normalize_text(&phrase));
        Ok(JudgeReply {
            answer,
            unparseable_fallback: false,
        })
    }

    fn concurrency_limit(&self) -> usize {
        self.concurrency_limit
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn ask(phrase: &str, caption: &str) -> bool {
        let judge = MockJudge::default();
        let question = QuestionTemplate::default().render(phrase, caption);
        judge.ask(&question).unwrap().answer
    }

    #[test]
    fn normalization_strips_case_and_punctuation() {
        assert_eq!(normalize_text("Red-Couch!"), "red couch");
        assert_eq!(normalize_text("  a   b "), "a b");
        assert_eq!(normalize_text("..."), "");
        assert_eq!(normalize_text("Wi-Fi 6"), "wi fi 6");
    }

    #[test]
    fn matching_is_case_and_punctuation_insensitive() {
        assert!(ask("red couch", "A RED, couch sits by the wall."));
        assert!(ask("red-couch", "a red couch"));
        assert!(!ask("green door", "A red couch sits by the wall."));
    }

    #[test]
    fn phrase_must_appear_contiguously_after_normalization() {
        assert!(!ask("red wall", "A red couch sits by the wall."));
        assert!(ask("couch sits", "A red couch sits by the wall."));
    }

    #[test]
    fn free_form_questions_are_template_mismatches() {
        let judge = MockJudge::default();
        assert!(matches!(
            judge.ask("Is the sky blue?"),
            Err(Error::TemplateMismatch(_))
        ));
    }

    #[test]
    fn answers_never_use_the_fallback_flag() {
        let judge = MockJudge::default();
        let q = QuestionTemplate::default().render("a", "a");
        assert!(!judge.ask(&q).unwrap().unparseable_fallback);
    }
}
