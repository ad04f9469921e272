use std::time::Duration;

use super::protocol::{Health, HealthBody, ScoreRequest, ScoreResponse, PROTOCOL_HEADER, PROTOCOL_VERSION};
use super::{Scorer, ScoringError};

/// Backend that talks to a scoring service over HTTP.
pub struct HttpScorer {
    base_url: String,
    agent: ureq::Agent,
    token: Option<String>,
}

impl HttpScorer {
    pub fn new(base_url: &str, timeout: Duration, token: Option<String>) -> Self {
        let agent = ureq::AgentBuilder::new().timeout(timeout).build();
        HttpScorer { base_url: base_url.trim_end_matches('/').to_string(), agent, token }
    }

    pub fn base_url(&self) -> &str {
        &self.base_url
    }

    fn with_headers(&self, req: ureq::Request) -> ureq::Request {
        let req = req.set(PROTOCOL_HEADER, PROTOCOL_VERSION);
        match &self.token {
            Some(t) => req.set("Authorization", &format!("Bearer {t}")),
            None => req,
        }
    }
}

impl Scorer for HttpScorer {
    fn score(&self, request: &ScoreRequest) -> Result<ScoreResponse, ScoringError> {
        let batch_id = request.batch_id.clone();
        let body = serde_json::to_string(request)
            .map_err(|e| ScoringError::Protocol { batch_id: batch_id.clone(), message: e.to_string() })?;
        let call = self
            .with_headers(self.agent.post(&format!("{}/score", self.base_url)))
            .set("Content-Type", "application/json")
            .send_string(&body);
        let response = match call {
            Ok(r) => r,
            Err(ureq::Error::Status(code, r)) => {
                let detail = r.into_string().unwrap_or_default();
                let message = format!("HTTP {code}: {detail}");
                return Err(if code >= 500 {
                    ScoringError::Transport { batch_id, message }
                } else {
                    ScoringError::Protocol { batch_id, message }
                });
            }
            Err(ureq::Error::Transport(t)) => {
                let message = t.to_string();
                let timed_out = matches!(t.kind(), ureq::ErrorKind::Io) && message.to_lowercase().contains("timed out");
                return Err(if timed_out {
                    ScoringError::Timeout { batch_id }
                } else {
                    ScoringError::Transport { batch_id, message }
                });
            }
        };
        let text = response
            .into_string()
            .map_err(|e| ScoringError::Transport { batch_id: batch_id.clone(), message: e.to_string() })?;
        serde_json::from_str(&text).map_err(|e| ScoringError::Protocol { batch_id, message: format!("bad body: {e}") })
    }

    fn health(&self) -> Health {
        let call = self.with_headers(self.agent.get(&format!("{}/health", self.base_url))).call();
        let body = match call {
            Ok(r) => r.into_string(),
            Err(e) => return Health::Unavailable { reason: e.to_string() },
        };
        let body: HealthBody = match body.map_err(|e| e.to_string()).and_then(|b| serde_json::from_str(&b).map_err(|e| e.to_string())) {
            Ok(b) => b,
            Err(reason) => return Health::Unavailable { reason },
        };
        if body.status != "ok" {
            return Health::Unavailable { reason: format!("status {:?}", body.status) };
        }
        if let Some(v) = &body.protocol_version {
            if v != PROTOCOL_VERSION {
                return Health::Unavailable { reason: format!("protocol version {v} unsupported") };
            }
        }
        Health::Ok { models: body.models }
    }
}
