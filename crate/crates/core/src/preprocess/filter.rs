use serde::{Deserialize, Serialize};

/// A run of one non-whitespace character at least this long is repetitive.
pub const CHAR_RUN_LIMIT: usize = 20;
/// A run of one whitespace-delimited token at least this long is repetitive.
pub const TOKEN_RUN_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailReason {
    Empty,
    Repetitive,
    OffTask,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(FailReason),
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

fn longest_char_run(text: &str) -> usize {
    let mut best = 0;
    let mut run = 0;
    let mut prev = None;
    for c in text.chars() {
        if c.is_whitespace() {
            run = 0;
            prev = None;
            continue;
        }
        run = if prev == Some(c) { run + 1 } else { 1 };
        prev = Some(c);
        best = best.max(run);
    }
    best
}

fn longest_token_run(text: &str) -> usize {
    let mut best = 0;
    let mut run = 0;
    let mut prev = None;
    for tok in text.split_whitespace() {
        run = if prev == Some(tok) { run + 1 } else { 1 };
        prev = Some(tok);
        best = best.max(run);
    }
    best
}

/// Accepts a generation that is non-empty, free of long repeated runs, and
/// mentions "recommend". Checks apply in that order.
pub fn filter_generation(text: &str) -> Verdict {
    if text.trim().is_empty() {
        return Verdict::Fail(FailReason::Empty);
    }
    if longest_char_run(text) >= CHAR_RUN_LIMIT || longest_token_run(text) >= TOKEN_RUN_LIMIT {
        return Verdict::Fail(FailReason::Repetitive);
    }
    if !text.to_lowercase().contains("recommend") {
        return Verdict::Fail(FailReason::OffTask);
    }
    Verdict::Pass
}

/// Share of generations that passed the filter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuccessRate {
    pub passed: usize,
    pub total: usize,
}

impl SuccessRate {
    pub fn from_verdicts<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> Self {
        let mut rate = SuccessRate::default();
        for v in verdicts {
            rate.total += 1;
            if v.passed() {
                rate.passed += 1;
            }
        }
        rate
    }

    pub fn fraction(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.passed as f64 / self.total as f64
        }
    }

    pub fn percent(&self) -> f64 {
        100.0 * self.fraction()
    }
}
