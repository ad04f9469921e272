//! Client side of the sentence-scoring protocol.
//!
//! Formality, sentiment, agency, entailment and POS tagging all sit behind one
//! request/response schema (see [`protocol`]). [`MockScorer`] implements it
//! in-process so the whole audit runs without any model.

mod client;
mod http;
mod mock;
pub mod protocol;

use std::sync::Arc;
use std::time::Duration;

use thiserror::Error;

pub use client::{validate_response, ClientConfig, ScoringClient};
pub use http::HttpScorer;
pub use mock::{MockScorer, MOCK_MODEL_ID};
pub use protocol::{Health, Item, ItemResult, PosTag, ScoreRequest, ScoreResponse, Task};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScoringError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("batch {batch_id}: transport failure: {message}")]
    Transport { batch_id: String, message: String },
    #[error("batch {batch_id}: timed out")]
    Timeout { batch_id: String },
    #[error("batch {batch_id}: protocol error: {message}")]
    Protocol { batch_id: String, message: String },
    #[error("batch {batch_id}: giving up after {attempts} attempt(s): {last}")]
    Exhausted { batch_id: String, attempts: u32, last: String },
}

impl ScoringError {
    pub fn is_retryable(&self) -> bool {
        matches!(self, ScoringError::Transport { .. } | ScoringError::Timeout { .. })
    }
}

/// A scoring backend. Implementations must be safe to call from several threads.
pub trait Scorer: Send + Sync {
    fn score(&self, request: &ScoreRequest) -> Result<ScoreResponse, ScoringError>;
    fn health(&self) -> Health;
}

/// Which backend to talk to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScorerSpec {
    Mock,
    Url(String),
}

impl std::str::FromStr for ScorerSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("mock") {
            Ok(ScorerSpec::Mock)
        } else if s.starts_with("http://") || s.starts_with("https://") {
            Ok(ScorerSpec::Url(s.to_string()))
        } else {
            Err(format!("scorer must be `mock` or an http(s) URL, got {s:?}"))
        }
    }
}

impl ScorerSpec {
    pub fn build(&self, timeout: Duration, token: Option<String>) -> Arc<dyn Scorer> {
        match self {
            ScorerSpec::Mock => Arc::new(MockScorer::new()),
            ScorerSpec::Url(url) => Arc::new(HttpScorer::new(url, timeout, token)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scorer_spec_parsing() {
        assert_eq!("mock".parse::<ScorerSpec>().unwrap(), ScorerSpec::Mock);
        assert_eq!(
            "http://localhost:8000".parse::<ScorerSpec>().unwrap(),
            ScorerSpec::Url("http://localhost:8000".into())
        );
        assert!("ftp://x".parse::<ScorerSpec>().is_err());
    }

    #[test]
    fn dead_endpoint_is_unavailable() {
        // port 9 (discard) on localhost is not expected to run an HTTP server
        let s = HttpScorer::new("http://127.0.0.1:9", Duration::from_millis(200), None);
        assert!(!s.health().is_ok());
    }
}
