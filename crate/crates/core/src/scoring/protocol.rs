//! Wire types for the sentence-scoring protocol, version 1.
//!
//! `POST /score` with a JSON [`ScoreRequest`] body and a `protocol_version: 1`
//! header; the server answers with a [`ScoreResponse`]. `GET /health` returns
//! a [`HealthBody`].
//!
//! Class orders are fixed: binary tasks return `[negative, positive]`
//! (informal/formal, negative/positive sentiment, communal/agentic); `nli`
//! returns `[entailment, neutral, contradiction]`. POS results are lists of
//! `[token, tag]` with tags from [`PosTag`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const PROTOCOL_VERSION: &str = "1";
pub const PROTOCOL_HEADER: &str = "protocol_version";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Formality,
    Sentiment,
    Agency,
    Nli,
    Pos,
}

impl Task {
    pub const ALL: [Task; 5] = [Task::Formality, Task::Sentiment, Task::Agency, Task::Nli, Task::Pos];

    pub fn as_str(self) -> &'static str {
        match self {
            Task::Formality => "formality",
            Task::Sentiment => "sentiment",
            Task::Agency => "agency",
            Task::Nli => "nli",
            Task::Pos => "pos",
        }
    }

    /// Length of the probability vector, or `None` for tagging.
    pub fn class_count(self) -> Option<usize> {
        match self {
            Task::Formality | Task::Sentiment | Task::Agency => Some(2),
            Task::Nli => Some(3),
            Task::Pos => None,
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Coarse part-of-speech tag set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Adj,
    Verb,
    Pron,
    Other,
}

/// A request item: a sentence, or a `[premise, hypothesis]` pair for `nli`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Item {
    Text(String),
    Pair(String, String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRequest {
    pub task: Task,
    pub items: Vec<Item>,
    pub batch_id: String,
}

impl ScoreRequest {
    /// Items must be non-empty, and pairs appear exactly when the task is `nli`.
    pub fn check(&self) -> Result<(), String> {
        if self.items.is_empty() {
            return Err("items must be non-empty".into());
        }
        let want_pairs = self.task == Task::Nli;
        for (i, item) in self.items.iter().enumerate() {
            let is_pair = matches!(item, Item::Pair(..));
            if is_pair != want_pairs {
                return Err(format!(
                    "item {i}: task {} expects {}",
                    self.task,
                    if want_pairs { "[premise, hypothesis] pairs" } else { "sentence strings" }
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ItemResult {
    Tags(Vec<(String, PosTag)>),
    Probabilities(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreResponse {
    pub batch_id: String,
    pub results: Vec<ItemResult>,
    pub model_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HealthBody {
    pub status: String,
    #[serde(default)]
    pub protocol_version: Option<String>,
    #[serde(default)]
    pub models: BTreeMap<Task, String>,
}

/// Endpoint status. Unavailability is a value, not an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Health {
    Ok { models: BTreeMap<Task, String> },
    Unavailable { reason: String },
}

impl Health {
    pub fn is_ok(&self) -> bool {
        matches!(self, Health::Ok { .. })
    }

    pub fn model_id(&self, task: Task) -> Option<&str> {
        match self {
            Health::Ok { models } => models.get(&task).map(String::as_str),
            Health::Unavailable { .. } => None,
        }
    }
}
