//! Judge backed by a chat-completion style HTTP endpoint.

use std::time::Duration;

use crate::error::{Error, Result};
use crate::judge::{parse_yes_no, Judge, JudgeConfig, JudgeReply, Semaphore};

/// Bearer token that refuses to print itself.
struct Secret(String);

impl std::fmt::Debug for Secret {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("[redacted]")
    }
}

/// Blocking HTTP judge.
///
/// Sends `{"model", "messages", "temperature": 0}` and reads the first
/// choice's message content. Transport failures and 5xx responses are
/// retried up to `max_retries` times; a well-formed reply that still
/// contains no yes/no is re-asked once and then scored as "no" with the
/// fallback flag set. The bearer token comes from the environment variable
/// named in the config, read once when the client is built, and is never
/// logged or serialized.
pub struct HttpJudge {
    endpoint: String,
    model: String,
    token: Secret,
    client: reqwest::blocking::Client,
    max_retries: u32,
    semaphore: Semaphore,
    concurrency_limit: usize,
}

impl std::fmt::Debug for HttpJudge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HttpJudge")
            .field("endpoint", &self.endpoint)
            .field("model", &self.model)
            .field("token", &self.token)
            .field("max_retries", &self.max_retries)
            .field("concurrency_limit", &self.concurrency_limit)
            .finish()
    }
}

impl HttpJudge {
    pub fn new(config: &JudgeConfig) -> Result<Self> {
        let endpoint = config
            .endpoint_url
            .clone()
            .ok_or_else(|| Error::InvalidInput("http judge requires an endpoint url".into()))?;
        let model = config
            .model_name
            .clone()
            .ok_or_else(|| Error::InvalidInput("http judge requires a model name".into()))?;
        let token = std::env::var(&config.auth_env).map_err(|_| {
            Error::Environment(format!(
                "auth token environment variable {} is not set",
                config.auth_env
            ))
        })?;
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(config.timeout_secs))
            .build()
            .map_err(|e| Error::Environment(format!("http client setup failed: {e}")))?;
        Ok(HttpJudge {
            endpoint,
            model,
            token: Secret(token),
            client,
            max_retries: config.max_retries,
            semaphore: Semaphore::new(config.concurrency_limit),
            concurrency_limit: config.concurrency_limit,
        })
    }

    /// One request/response cycle. `Err` here means "retryable at the
    /// transport level"; `Ok` carries the reply text.
    fn request_once(&self, question: &str) -> std::result::Result<String, String> {
        let body = serde_json::json!({
            "model": self.model,
            "messages": [{"role": "user", "content": question}],
            "temperature": 0,
        });
        let response = self
            .client
            .post(&self.endpoint)
            .bearer_auth(&self.token.0)
            .json(&body)
            .send()
            .map_err(|e| format!("transport error: {e}"))?;
        let status = response.status();
        if status.is_server_error() {
            return Err(format!("server error: {status}"));
        }
        if !status.is_success() {
            // Client errors will not improve on retry, so surface them as a
            // plain string the caller stops on immediately.
            return Err(format!("fatal: endpoint returned {status}"));
        }
        let value: serde_json::Value = response
            .json()
            .map_err(|e| format!("malformed response body: {e}"))?;
        value["choices"][0]["message"]["content"]
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| "response missing choices[0].message.content".to_string())
    }

    fn ask_with_retries(&self, question: &str) -> Result<JudgeReply> {
        let mut transport_failures = 0u32;
        let mut unparseable_replies = 0u32;
        loop {
            match self.request_once(question) {
                Ok(text) => match parse_yes_no(&text) {
                    Some(answer) => {
                        return Ok(JudgeReply {
                            answer,
                            unparseable_fallback: false,
                        })
                    }
                    None => {
                        unparseable_replies += 1;
                        if unparseable_replies > 1 {
                            let snippet: String = text.chars().take(80).collect();
                            log::warn!(
                                "judge reply not parseable as yes/no after retry, \
                                 scoring as no: {snippet:?}"
                            );
                            return Ok(JudgeReply {
                                answer: false,
                                unparseable_fallback: true,
                            });
                        }
                    }
                },
                Err(message) => {
                    if message.starts_with("fatal:") {
                        return Err(Error::JudgeUnavailable(message));
                    }
                    transport_failures += 1;
                    if transport_failures > self.max_retries {
                        return Err(Error::JudgeUnavailable(format!(
                            "{message} (after {transport_failures} attempts)"
                        )));
                    }
                    std::thread::sleep(Duration::from_millis(100));
                }
            }
        }
    }
}

impl Judge for HttpJudge {
    fn ask(&self, question: &str) -> Result<JudgeReply> {
        let _permit = self.semaphore.acquire();
        self.ask_with_retries(question)
    }

    fn concurrency_limit(&self) -> usize {
        self.concurrency_limit
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::{Read, Write};
    use std::net::TcpListener;

    /// Serve canned chat-completion bodies, one connection per entry.
    /// Entries are `(status_line, content)` where `content` becomes
    /// `choices[0].message.content`; a `None` content sends broken JSON.
    fn stub_server(replies: Vec<(&'static str, Option<&'static str>)>) -> String {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        std::thread::spawn(move || {
            for (status, content) in replies {
                let (mut stream, _) = listener.accept().unwrap();
                let mut buf = Vec::new();
                let mut byte = [0u8; 1];
                // Read headers.
                while !buf.ends_with(b"\r\n\r\n") {
                    if stream.read(&mut byte).unwrap() == 0 {
                        break;
                    }
                    buf.push(byte[0]);
                }
                let headers = String::from_utf8_lossy(&buf);
                let length: usize = headers
                    .lines()
                    .find_map(|l| {
                        l.to_ascii_lowercase()
                            .strip_prefix("content-length:")
                            .map(|v| v.trim().parse().unwrap())
                    })
                    .unwrap_or(0);
                let mut body = vec![0u8; length];
                stream.read_exact(&mut body).unwrap();
                let payload = match content {
                    Some(text) => serde_json::json!({
                        "choices": [{"message": {"role": "assistant", "content": text}}]
                    })
                    .to_string(),
                    None => "{not json".to_string(),
                };
                let response = format!(
                    "HTTP/1.1 {status}\r\ncontent-type: application/json\r\n\
                     content-length: {}\r\nconnection: close\r\n\r\n{payload}",
                    payload.len()
                );
                stream.write_all(response.as_bytes()).unwrap();
            }
        });
        format!("http://{addr}/v1/chat/completions")
    }

    fn config_for(endpoint: &str, auth_env: &str) -> JudgeConfig {
        std::env::set_var(auth_env, "test-token");
        let mut config = JudgeConfig::http(endpoint, "test-model");
        config.auth_env = auth_env.to_string();
        config.timeout_secs = 5;
        config
    }

    #[test]
    fn a_yes_reply_is_parsed() {
        let endpoint = stub_server(vec![("200 OK", Some("Yes, it mentions it."))]);
        let judge = HttpJudge::new(&config_for(&endpoint, "PANOKIT_TEST_TOKEN_A")).unwrap();
        let reply = judge.ask("q").unwrap();
        assert!(reply.answer);
        assert!(!reply.unparseable_fallback);
    }

    #[test]
    fn server_errors_are_retried_then_succeed() {
        let endpoint = stub_server(vec![
            ("500 Internal Server Error", Some("ignored")),
            ("200 OK", Some("no")),
        ]);
        let judge = HttpJudge::new(&config_for(&endpoint, "PANOKIT_TEST_TOKEN_B")).unwrap();
        let reply = judge.ask("q").unwrap();
        assert!(!reply.answer);
    }

    #[test]
    fn retries_exhaust_into_an_unavailable_error() {
        let endpoint = stub_server(vec![
            ("500 Internal Server Error", Some("x")),
            ("500 Internal Server Error", Some("x")),
            ("500 Internal Server Error", Some("x")),
        ]);
        let mut config = config_for(&endpoint, "PANOKIT_TEST_TOKEN_C");
        config.max_retries = 2;
        let judge = HttpJudge::new(&config).unwrap();
        assert!(matches!(judge.ask("q"), Err(Error::JudgeUnavailable(_))));
    }

    #[test]
    fn evasive_replies_retry_once_then_score_no_with_flag() {
        let endpoint = stub_server(vec![
            ("200 OK", Some("It is hard to say.")),
            ("200 OK", Some("Truly ambiguous.")),
        ]);
        let judge = HttpJudge::new(&config_for(&endpoint, "PANOKIT_TEST_TOKEN_D")).unwrap();
        let reply = judge.ask("q").unwrap();
        assert!(!reply.answer);
        assert!(reply.unparseable_fallback);
    }

    #[test]
    fn an_evasive_reply_followed_by_a_clear_one_is_not_a_fallback() {
        let endpoint = stub_server(vec![("200 OK", Some("Hmm.")), ("200 OK", Some("Yes."))]);
        let judge = HttpJudge::new(&config_for(&endpoint, "PANOKIT_TEST_TOKEN_E")).unwrap();
        let reply = judge.ask("q").unwrap();
        assert!(reply.answer);
        assert!(!reply.unparseable_fallback);
    }

    #[test]
    fn broken_json_counts_against_the_transport_budget() {
        let endpoint = stub_server(vec![("200 OK", None), ("200 OK", Some("yes"))]);
        let judge = HttpJudge::new(&config_for(&endpoint, "PANOKIT_TEST_TOKEN_F")).unwrap();
        assert!(judge.ask("q").unwrap().answer);
    }

    #[test]
    fn missing_token_is_an_environment_error_at_startup() {
        let mut config = JudgeConfig::http("http://127.0.0.1:9/", "m");
        config.auth_env = "PANOKIT_TEST_TOKEN_UNSET".to_string();
        std::env::remove_var(&config.auth_env);
        match HttpJudge::new(&config) {
            Err(Error::Environment(msg)) => assert!(msg.contains("PANOKIT_TEST_TOKEN_UNSET")),
            other => panic!("expected environment error, got {other:?}"),
        }
    }

    #[test]
    fn missing_endpoint_or_model_is_an_input_error() {
        let mut config = JudgeConfig::http("http://e/", "m");
        config.endpoint_url = None;
        assert!(matches!(
            HttpJudge::new(&config),
            Err(Error::InvalidInput(_))
        ));
        let mut config = JudgeConfig::http("http://e/", "m");
        config.model_name = None;
        assert!(matches!(
            HttpJudge::new(&config),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn client_errors_fail_without_retry() {
        let endpoint = stub_server(vec![("401 Unauthorized", Some("x"))]);
        let judge = HttpJudge::new(&config_for(&endpoint, "PANOKIT_TEST_TOKEN_G")).unwrap();
        match judge.ask("q") {
            Err(Error::JudgeUnavailable(msg)) => assert!(msg.contains("401")),
            other => panic!("expected unavailable, got {other:?}"),
        }
    }

    #[test]
    fn debug_output_never_shows_the_token() {
        let endpoint = "http://127.0.0.1:9/";
        let config = config_for(endpoint, "PANOKIT_TEST_TOKEN_H");
        let judge = HttpJudge::new(&config).unwrap();
        let rendered = format!("{judge:?}");
        assert!(!rendered.contains("test-token"));
        assert!(rendered.contains("[redacted]"));
    }
}
