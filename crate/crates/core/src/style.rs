//! Language-style bias: per-document fractions of formal, positive and
//! agentic sentences, and Welch tests of male against female fractions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Document, Gender, GenderedCorpora};
use crate::num::Scalar;
use crate::scoring::{ScoringClient, ScoringError, Task};
use crate::stats::{significance_stars, welch_t_test, Alternative, StatsError, TTest};

/// A sentence counts as positive-class when its positive probability reaches this.
pub const DECISION_THRESHOLD: f64 = 0.5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StyleError {
    #[error("document {doc_id} has no sentences")]
    NoSentences { doc_id: String },
    #[error("document {doc_id}: {found} label(s) for {expected} sentence(s)")]
    LabelMismatch { doc_id: String, expected: usize, found: usize },
    #[error("document {doc_id} has no {aspect} score")]
    MissingScore { doc_id: String, aspect: Aspect },
    #[error("{aspect}: {source}")]
    Stats {
        aspect: Aspect,
        #[source]
        source: StatsError,
    },
    #[error(transparent)]
    Scoring(#[from] ScoringError),
}

/// Style dimension; declaration order is the report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aspect {
    Formality,
    Positivity,
    Agency,
}

impl Aspect {
    pub const ALL: [Aspect; 3] = [Aspect::Formality, Aspect::Positivity, Aspect::Agency];

    pub fn as_str(self) -> &'static str {
        match self {
            Aspect::Formality => "formality",
            Aspect::Positivity => "positivity",
            Aspect::Agency => "agency",
        }
    }

    /// Scoring task whose positive class is this aspect's label.
    pub fn task(self) -> Task {
        match self {
            Aspect::Formality => Task::Formality,
            Aspect::Positivity => Task::Sentiment,
            Aspect::Agency => Task::Agency,
        }
    }
}

impl fmt::Display for Aspect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Fraction of a document's sentences carrying an aspect's positive label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct StyleScore<F> {
    pub doc_id: String,
    pub aspect: Aspect,
    pub fraction: F,
    pub labeled: usize,
    pub n_sentences: usize,
}

/// Thresholds `[negative, positive]` probability pairs into labels.
pub fn labels_from_probabilities(probs: &[[f64; 2]]) -> Vec<bool> {
    probs.iter().map(|p| p[1] >= DECISION_THRESHOLD).collect()
}

/// Scores sentences for one aspect and returns their labels.
pub fn classify_sentences(client: &ScoringClient, aspect: Aspect, sentences: &[String]) -> Result<Vec<bool>, ScoringError> {
    if sentences.is_empty() {
        return Ok(Vec::new());
    }
    Ok(labels_from_probabilities(&client.classify_batch(aspect.task(), sentences)?))
}

/// `labels` holds one entry per segmented sentence of `doc`.
pub fn style_percentages<F: Scalar>(doc: &Document, aspect: Aspect, labels: &[bool]) -> Result<StyleScore<F>, StyleError> {
    let n = doc.sentences().len();
    style_fraction(&doc.id, aspect, labels, n)
}

pub(crate) fn style_fraction<F: Scalar>(
    doc_id: &str,
    aspect: Aspect,
    labels: &[bool],
    n_sentences: usize,
) -> Result<StyleScore<F>, StyleError> {
    if n_sentences == 0 {
        return Err(StyleError::NoSentences { doc_id: doc_id.to_string() });
    }
    if labels.len() != n_sentences {
        return Err(StyleError::LabelMismatch { doc_id: doc_id.to_string(), expected: n_sentences, found: labels.len() });
    }
    let labeled = labels.iter().filter(|&&l| l).count();
    Ok(StyleScore {
        doc_id: doc_id.to_string(),
        aspect,
        fraction: F::from_usize_lossy(labeled) / F::from_usize_lossy(n_sentences),
        labeled,
        n_sentences,
    })
}

/// One row of the style report: a Welch test of male against female fractions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct BiasTestResult<F> {
    pub aspect: Aspect,
    pub t_statistic: F,
    pub p_value: F,
    pub df: F,
    pub mean_m: F,
    pub mean_f: F,
    pub std_m: F,
    pub std_f: F,
    pub n_m: usize,
    pub n_f: usize,
    pub alternative: Alternative,
    pub stars: u8,
}

impl<F: Scalar> BiasTestResult<F> {
    pub fn from_test(aspect: Aspect, t: TTest<F>) -> Self {
        BiasTestResult {
            aspect,
            stars: significance_stars(t.p_value),
            t_statistic: t.t_statistic,
            p_value: t.p_value,
            df: t.df,
            mean_m: t.mean_a,
            mean_f: t.mean_b,
            std_m: t.std_a,
            std_f: t.std_b,
            n_m: t.n_a,
            n_f: t.n_b,
            alternative: t.alternative,
        }
    }

    /// Starred at the 0.1 level only.
    pub fn is_weak(&self) -> bool {
        self.stars == 1
    }
}

/// Per-document scores for each aspect.
pub type StyleScores<F> = BTreeMap<Aspect, Vec<StyleScore<F>>>;

/// One test per aspect present in `scores`, in [`Aspect::ALL`] order, of
/// male fractions greater than female fractions.
pub fn style_bias_report<F: Scalar>(
    corpora: &GenderedCorpora,
    scores: &StyleScores<F>,
) -> Result<Vec<BiasTestResult<F>>, StyleError> {
    let mut rows = Vec::new();
    for aspect in Aspect::ALL {
        let Some(per_doc) = scores.get(&aspect) else { continue };
        let by_id: HashMap<&str, F> = per_doc.iter().map(|s| (s.doc_id.as_str(), s.fraction)).collect();
        let sample = |g: Gender| -> Result<Vec<F>, StyleError> {
            corpora
                .docs(g)
                .iter()
                .map(|d| by_id.get(d.id.as_str()).copied().ok_or(StyleError::MissingScore { doc_id: d.id.clone(), aspect }))
                .collect()
        };
        let (m, f) = (sample(Gender::Male)?, sample(Gender::Female)?);
        let t = welch_t_test(&m, &f, Alternative::Greater).map_err(|source| StyleError::Stats { aspect, source })?;
        rows.push(BiasTestResult::from_test(aspect, t));
    }
    Ok(rows)
}
