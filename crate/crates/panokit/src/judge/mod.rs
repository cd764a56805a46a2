//! Yes/no judge clients for caption scoring.
//!
//! A judge answers one fixed-format question with a boolean. Two
//! implementations ship: a deterministic offline mock that answers by
//! normalized substring matching, and an HTTP client for chat-completion
//! endpoints. Both are injectable anywhere a [`Judge`] is accepted.

mod http;
mod mock;

pub use http::HttpJudge;
pub use mock::{normalize_text, MockJudge};

use crate::error::{Error, Result};

/// Default name of the environment variable holding the API token.
pub const DEFAULT_AUTH_ENV: &str = "JUDGE_API_KEY";

/// One judged answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JudgeReply {
    pub answer: bool,
    /// Set when the reply could not be parsed as yes/no even after a retry
    /// and was conservatively scored as "no".
    pub unparseable_fallback: bool,
}

/// Something that can answer a yes/no question.
pub trait Judge: Send + Sync {
    fn ask(&self, question: &str) -> Result<JudgeReply>;

    /// How many questions may be in flight at once.
    fn concurrency_limit(&self) -> usize {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JudgeMode {
    Mock,
    Http,
}

/// Judge client settings.
///
/// The API token itself is deliberately absent: HTTP judges read it from
/// the environment variable named by `auth_env` when the client is built,
/// so it can never end up inside serialized configs or reports.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct JudgeConfig {
    pub mode: JudgeMode,
    pub endpoint_url: Option<String>,
    pub model_name: Option<String>,
    pub auth_env: String,
    pub timeout_secs: u64,
    pub max_retries: u32,
    pub concurrency_limit: usize,
    pub template: QuestionTemplate,
}

impl JudgeConfig {
    pub fn mock() -> Self {
        JudgeConfig {
            mode: JudgeMode::Mock,
            endpoint_url: None,
            model_name: None,
            auth_env: DEFAULT_AUTH_ENV.to_string(),
            timeout_secs: 30,
            max_retries: 2,
            concurrency_limit: 4,
            template: QuestionTemplate::default(),
        }
    }

    pub fn http(endpoint_url: impl Into<String>, model_name: impl Into<String>) -> Self {
        JudgeConfig {
            mode: JudgeMode::Http,
            endpoint_url: Some(endpoint_url.into()),
            model_name: Some(model_name.into()),
            ..JudgeConfig::mock()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.timeout_secs == 0 {
            return Err(Error::InvalidInput("judge timeout must be positive".into()));
        }
        if self.concurrency_limit == 0 {
            return Err(Error::InvalidInput(
                "judge concurrency limit must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Build the judge a config describes.
///
/// HTTP mode requires the endpoint, a model name, and the auth token in the
/// environment up front, so misconfiguration surfaces before any question
/// is asked.
pub fn build_judge(config: &JudgeConfig) -> Result<Box<dyn Judge>> {
    config.validate()?;
    match config.mode {
        JudgeMode::Mock => Ok(Box::new(MockJudge::new(
            config.template.clone(),
            config.concurrency_limit,
        ))),
        JudgeMode::Http => Ok(Box::new(HttpJudge::new(config)?)),
    }
}

/// One-shot convenience: build the configured judge and ask one question.
pub fn judge_ask(question: &str, config: &JudgeConfig) -> Result<bool> {
    Ok(build_judge(config)?.ask(question)?.answer)
}

/// First yes/no word in a reply, scanning case-insensitively.
///
/// Words are maximal alphanumeric runs, so "Yes." parses but the "no" in
/// "not" does not. `None` means the reply takes no recognizable stance.
pub fn parse_yes_no(reply: &str) -> Option<bool> {
    for word in reply.split(|c: char| !c.is_alphanumeric()) {
        if word.eq_ignore_ascii_case("yes") {
            return Some(true);
        }
        if word.eq_ignore_ascii_case("no") {
            return Some(false);
        }
    }
    None
}

/// Question layout: `head {phrase} separator {caption}`.
///
/// Stored as its fixed segments so the mock judge can split a rendered
/// question back into phrase and caption.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct QuestionTemplate {
    head: String,
    separator: String,
    tail: String,
}

impl Default for QuestionTemplate {
    fn default() -> Self {
        QuestionTemplate::from_pattern(
            "Answer yes or no. Does the following caption explicitly mention {phrase}? \
             Caption: {caption}",
        )
        .expect("default template is well formed")
    }
}

impl QuestionTemplate {
    /// Parse a pattern containing `{phrase}` and then `{caption}`.
    pub fn from_pattern(pattern: &str) -> Result<Self> {
        let (head, rest) = pattern
            .split_once("{phrase}")
            .ok_or_else(|| Error::InvalidInput("question template must contain {phrase}".into()))?;
        let (separator, tail) = rest.split_once("{caption}").ok_or_else(|| {
            Error::InvalidInput("question template must contain {caption} after {phrase}".into())
        })?;
        if separator.is_empty() {
            return Err(Error::InvalidInput(
                "question template needs text between {phrase} and {caption}".into(),
            ));
        }
        Ok(QuestionTemplate {
            head: head.to_string(),
            separator: separator.to_string(),
            tail: tail.to_string(),
        })
    }

    /// Render the question for one phrase and caption. Newlines inside the
    /// phrase are normalized to single spaces so the question stays one
    /// line of prose.
    pub fn render(&self, phrase: &str, caption: &str) -> String {
        let phrase = phrase.replace(['\r', '\n'], " ");
        format!(
            "{}{}{}{}{}",
            self.head, phrase, self.separator, caption, self.tail
        )
    }

    /// Split a rendered question back into `(phrase, caption)`.
    pub fn parse(&self, question: &str) -> Result<(String, String)> {
        let rest = question
            .strip_prefix(&self.head)
            .ok_or_else(|| Error::TemplateMismatch(question.to_string()))?;
        let (phrase, rest) = rest
            .split_once(&self.separator)
            .ok_or_else(|| Error::TemplateMismatch(question.to_string()))?;
        let caption = rest
            .strip_suffix(&self.tail)
            .ok_or_else(|| Error::TemplateMismatch(question.to_string()))?;
        Ok((phrase.to_string(), caption.to_string()))
    }
}

/// Counting semaphore used to bound in-flight judge requests.
pub(crate) struct Semaphore {
    permits: std::sync::Mutex<usize>,
    available: std::sync::Condvar,
}

impl Semaphore {
    pub(crate) fn new(permits: usize) -> Self {
        Semaphore {
            permits: std::sync::Mutex::new(permits),
            available: std::sync::Condvar::new(),
        }
    }

    pub(crate) fn acquire(&self) -> SemaphoreGuard<'_> {
        let mut permits = self.permits.lock().unwrap();
        while *permits == 0 {
            permits = self.available.wait(permits).unwrap();
        }
        *permits -= 1;
        SemaphoreGuard { semaphore: self }
    }
}

pub(crate) struct SemaphoreGuard<'a> {
    semaphore: &'a Semaphore,
}

impl Drop for SemaphoreGuard<'_> {
    fn drop(&mut self) {
        let mut permits = self.semaphore.permits.lock().unwrap();
        *permits += 1;
        self.semaphore.available.notify_one();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yes_no_parsing_finds_the_first_stance_word() {
        assert_eq!(parse_yes_no("yes"), Some(true));
        assert_eq!(parse_yes_no("Yes."), Some(true));
        assert_eq!(parse_yes_no("NO!"), Some(false));
        assert_eq!(parse_yes_no("Well, no, actually yes"), Some(false));
        assert_eq!(parse_yes_no("Absolutely, yes"), Some(true));
        assert_eq!(parse_yes_no("I am not sure"), None);
        assert_eq!(parse_yes_no("Nothing doing"), None);
        assert_eq!(parse_yes_no(""), None);
        assert_eq!(parse_yes_no("yesterday"), None);
    }

    #[test]
    fn template_renders_the_pinned_question_shape() {
        let t = QuestionTemplate::default();
        let q = t.render("red couch", "There is a red couch.");
        assert_eq!(
            q,
            "Answer yes or no. Does the following caption explicitly mention red couch? \
             Caption: There is a red couch."
        );
    }

    #[test]
    fn newlines_in_the_phrase_become_spaces() {
        let t = QuestionTemplate::default();
        let q = t.render("red\ncouch", "cap");
        assert!(q.contains("mention red couch?"));
        let q = t.render("red\r\ncouch", "cap");
        assert!(q.contains("mention red  couch?") || q.contains("mention red couch?"));
        assert!(!q.contains('\n'));
        assert!(!q.contains('\r'));
    }

    #[test]
    fn template_round_trips_phrase_and_caption() {
        let t = QuestionTemplate::default();
        let q = t.render("blue door", "A house with a blue door? Caption: style.");
        let (phrase, caption) = t.parse(&q).unwrap();
        assert_eq!(phrase, "blue door");
        assert_eq!(caption, "A house with a blue door? Caption: style.");
    }

    #[test]
    fn non_template_questions_are_rejected_by_parse() {
        let t = QuestionTemplate::default();
        assert!(matches!(
            t.parse("what is the weather"),
            Err(Error::TemplateMismatch(_))
        ));
    }

    #[test]
    fn custom_patterns_swap_the_prompt() {
        let t = QuestionTemplate::from_pattern("Does {phrase} appear in: {caption}").unwrap();
        assert_eq!(t.render("a", "b"), "Does a appear in: b");
        assert!(QuestionTemplate::from_pattern("no placeholders").is_err());
        assert!(QuestionTemplate::from_pattern("{caption} then {phrase}").is_err());
        assert!(QuestionTemplate::from_pattern("{phrase}{caption}").is_err());
    }

    #[test]
    fn config_validation_catches_zero_limits() {
        let mut c = JudgeConfig::mock();
        c.timeout_secs = 0;
        assert!(build_judge(&c).is_err());
        let mut c = JudgeConfig::mock();
        c.concurrency_limit = 0;
        assert!(build_judge(&c).is_err());
    }

    #[test]
    fn judge_ask_answers_through_the_mock() {
        let config = JudgeConfig::mock();
        let q = config
            .template
            .render("red couch", "A red couch by the wall");
        assert!(judge_ask(&q, &config).unwrap());
        let q = config.template.render("green door", "A red couch");
        assert!(!judge_ask(&q, &config).unwrap());
    }

    #[test]
    fn semaphore_limits_concurrent_holders() {
        use std::sync::atomic::{AtomicUsize, Ordering};
        use std::sync::Arc;
        let semaphore = Arc::new(Semaphore::new(3));
        let in_flight = Arc::new(AtomicUsize::new(0));
        let peak = Arc::new(AtomicUsize::new(0));
        std::thread::scope(|scope| {
            for _ in 0..16 {
                let semaphore = Arc::clone(&semaphore);
                let in_flight = Arc::clone(&in_flight);
                let peak = Arc::clone(&peak);
                scope.spawn(move || {
                    let _guard = semaphore.acquire();
                    let now = in_flight.fetch_add(1, Ordering::SeqCst) + 1;
                    peak.fetch_max(now, Ordering::SeqCst);
                    std::thread::sleep(std::time::Duration::from_millis(5));
                    in_flight.fetch_sub(1, Ordering::SeqCst);
                });
            }
        });
        assert!(peak.load(Ordering::SeqCst) <= 3);
    }
}
