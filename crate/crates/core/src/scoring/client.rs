use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::protocol::{Health, Item, ItemResult, PosTag, ScoreRequest, ScoreResponse, Task};
use super::{Scorer, ScoringError};

const PROB_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClientConfig {
    pub batch_size: usize,
    pub max_retries: u32,
    pub initial_backoff_ms: u64,
    pub max_in_flight: usize,
}

impl Default for ClientConfig {
    fn default() -> Self {
        ClientConfig { batch_size: 64, max_retries: 3, initial_backoff_ms: 100, max_in_flight: 4 }
    }
}

/// Batching, retrying front end over a [`Scorer`] backend.
///
/// Items are split into batches of `batch_size`; up to `max_in_flight`
/// batches are outstanding at once. Results always come back in input order.
pub struct ScoringClient {
    backend: Arc<dyn Scorer>,
    config: ClientConfig,
    next_batch: AtomicU64,
}

impl ScoringClient {
    pub fn new(backend: Arc<dyn Scorer>, config: ClientConfig) -> Self {
        ScoringClient { backend, config, next_batch: AtomicU64::new(1) }
    }

    pub fn config(&self) -> &ClientConfig {
        &self.config
    }

    pub fn health(&self) -> Health {
        self.backend.health()
    }

    /// Binary classification; each vector is `[negative, positive]`.
    pub fn classify_batch(&self, task: Task, sentences: &[String]) -> Result<Vec<[f64; 2]>, ScoringError> {
        if task.class_count() != Some(2) {
            return Err(ScoringError::Precondition(format!("{task} is not a binary classification task")));
        }
        let items = sentences.iter().cloned().map(Item::Text).collect();
        self.dispatch(task, items)?
            .into_iter()
            .map(|r| match r {
                ItemResult::Probabilities(p) => Ok([p[0], p[1]]),
                ItemResult::Tags(_) => unreachable!("validated shape"),
            })
            .collect()
    }

    /// Entailment scoring; each vector is `[entailment, neutral, contradiction]`.
    pub fn nli_batch(&self, pairs: &[(String, String)]) -> Result<Vec<[f64; 3]>, ScoringError> {
        let items = pairs.iter().map(|(p, h)| Item::Pair(p.clone(), h.clone())).collect();
        self.dispatch(Task::Nli, items)?
            .into_iter()
            .map(|r| match r {
                ItemResult::Probabilities(p) => Ok([p[0], p[1], p[2]]),
                ItemResult::Tags(_) => unreachable!("validated shape"),
            })
            .collect()
    }

    pub fn pos_tag_batch(&self, sentences: &[String]) -> Result<Vec<Vec<(String, PosTag)>>, ScoringError> {
        let items = sentences.iter().cloned().map(Item::Text).collect();
        self.dispatch(Task::Pos, items)?
            .into_iter()
            .map(|r| match r {
                ItemResult::Tags(t) => Ok(t),
                ItemResult::Probabilities(_) => unreachable!("validated shape"),
            })
            .collect()
    }

    fn dispatch(&self, task: Task, items: Vec<Item>) -> Result<Vec<ItemResult>, ScoringError> {
        if items.is_empty() {
            return Err(ScoringError::Precondition("no items to score".into()));
        }
        let size = self.config.batch_size.max(1);
        let requests: Vec<ScoreRequest> = items
            .chunks(size)
            .map(|chunk| ScoreRequest {
                task,
                items: chunk.to_vec(),
                batch_id: format!("{}-{:08}", task, self.next_batch.fetch_add(1, Ordering::Relaxed)),
            })
            .collect();
        for req in &requests {
            req.check().map_err(ScoringError::Precondition)?;
        }

        let workers = self.config.max_in_flight.max(1).min(requests.len());
        let responses: Vec<Result<ScoreResponse, ScoringError>> = if workers <= 1 {
            requests.iter().map(|r| self.send_with_retry(r)).collect()
        } else {
            let slots: Mutex<Vec<Option<Result<ScoreResponse, ScoringError>>>> =
                Mutex::new((0..requests.len()).map(|_| None).collect());
            let cursor = AtomicUsize::new(0);
            std::thread::scope(|scope| {
                for _ in 0..workers {
                    scope.spawn(|| loop {
                        let i = cursor.fetch_add(1, Ordering::Relaxed);
                        let Some(req) = requests.get(i) else { break };
                        let out = self.send_with_retry(req);
                        slots.lock().expect("result slots poisoned")[i] = Some(out);
                    });
                }
            });
            slots
                .into_inner()
                .expect("result slots poisoned")
                .into_iter()
                .map(|s| s.expect("every batch dispatched"))
                .collect()
        };

        let mut out = Vec::new();
        for (req, resp) in requests.iter().zip(responses) {
            out.extend(validate_response(req, resp?)?);
        }
        Ok(out)
    }

    fn send_with_retry(&self, request: &ScoreRequest) -> Result<ScoreResponse, ScoringError> {
        let mut attempt = 0;
        loop {
            match self.backend.score(request) {
                Ok(resp) => return Ok(resp),
                Err(e) if e.is_retryable() && attempt < self.config.max_retries => {
                    let wait = self.config.initial_backoff_ms.saturating_mul(1u64 << attempt.min(16));
                    std::thread::sleep(Duration::from_millis(wait));
                    attempt += 1;
                }
                Err(e) if e.is_retryable() => {
                    return Err(ScoringError::Exhausted {
                        batch_id: request.batch_id.clone(),
                        attempts: attempt + 1,
                        last: e.to_string(),
                    })
                }
                Err(e) => return Err(e),
            }
        }
    }
}

/// Checks a response against its request and clamps probabilities into [0, 1].
pub fn validate_response(request: &ScoreRequest, response: ScoreResponse) -> Result<Vec<ItemResult>, ScoringError> {
    let protocol = |message: String| ScoringError::Protocol { batch_id: request.batch_id.clone(), message };
    if response.batch_id != request.batch_id {
        return Err(protocol(format!("response batch_id {:?} does not match request", response.batch_id)));
    }
    if response.results.len() != request.items.len() {
        return Err(protocol(format!(
            "expected {} results, got {}",
            request.items.len(),
            response.results.len()
        )));
    }
    let mut out = Vec::with_capacity(response.results.len());
    for (i, result) in response.results.into_iter().enumerate() {
        match (request.task.class_count(), result) {
            (Some(k), ItemResult::Probabilities(p)) => {
                if p.len() != k {
                    return Err(protocol(format!("item {i}: expected {k} probabilities, got {}", p.len())));
                }
                if p.iter().any(|&v| !v.is_finite() || v < -PROB_TOLERANCE || v > 1.0 + PROB_TOLERANCE) {
                    return Err(protocol(format!("item {i}: probability outside [0, 1]")));
                }
                let sum: f64 = p.iter().sum();
                if (sum - 1.0).abs() > PROB_TOLERANCE {
                    return Err(protocol(format!("item {i}: probabilities sum to {sum}")));
                }
                out.push(ItemResult::Probabilities(p.into_iter().map(|v| v.clamp(0.0, 1.0)).collect()));
            }
            (Some(k), ItemResult::Tags(t)) if t.is_empty() => {
                return Err(protocol(format!("item {i}: expected {k} probabilities, got an empty list")));
            }
            (None, ItemResult::Tags(t)) => out.push(ItemResult::Tags(t)),
            (None, ItemResult::Probabilities(_)) => {
                return Err(protocol(format!("item {i}: expected token/tag pairs")));
            }
            (Some(_), ItemResult::Tags(_)) => {
                return Err(protocol(format!("item {i}: expected probabilities, got token/tag pairs")));
            }
        }
    }
    Ok(out)
}
