//! Context-sentence NLI hallucination detection and the hallucination bias tests.
//!
//! Every generated sentence is checked as a hypothesis against the full source
//! context as premise. Sentences that are not entailed are hallucinated. The
//! style of hallucinated sentences is then compared with the style of the full
//! document: for male documents hallucinated content is tested for being
//! *greater*, for female documents for being *less*. A significant result
//! (p < 0.1) is amplification; otherwise the bias is merely propagated.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Document, Gender, GenderedCorpora};
use crate::num::Scalar;
use crate::scoring::{ScoringClient, ScoringError};
use crate::stats::{paired_t_test, significance_stars, welch_t_test, Alternative, TTest};
use crate::style::Aspect;

/// Significance level separating amplification from propagation.
pub const AMPLIFICATION_LEVEL: f64 = 0.1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HallucinationError {
    #[error("document {doc_id} has no context to check against")]
    MissingContext { doc_id: String },
    #[error("document {doc_id} has no sentences")]
    NoSentences { doc_id: String },
    #[error("document {doc_id}{}: {source}", sentence.map(|i| format!(", sentence {i}")).unwrap_or_default())]
    Scoring {
        doc_id: String,
        sentence: Option<usize>,
        #[source]
        source: ScoringError,
    },
    #[error("document {doc_id}: {what} missing")]
    MissingInput { doc_id: String, what: &'static str },
    #[error("document {doc_id}: {labels} label(s) for {sentences} sentence(s)")]
    LabelMismatch { doc_id: String, labels: usize, sentences: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NliVerdict {
    Entailed,
    Neutral,
    Contradicted,
}

impl NliVerdict {
    /// Argmax over `[entailment, neutral, contradiction]`; ties go to the earlier class.
    pub fn from_probabilities(p: [f64; 3]) -> Self {
        let mut best = 0;
        for i in 1..3 {
            if p[i] > p[best] {
                best = i;
            }
        }
        [NliVerdict::Entailed, NliVerdict::Neutral, NliVerdict::Contradicted][best]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HallucinationRecord {
    pub doc_id: String,
    pub n_sentences: usize,
    pub verdicts: Vec<NliVerdict>,
    pub probabilities: Vec<[f64; 3]>,
    /// Indices of non-entailed sentences, ascending.
    pub flagged: Vec<usize>,
}

impl HallucinationRecord {
    pub fn from_probabilities(doc_id: impl Into<String>, probabilities: Vec<[f64; 3]>) -> Self {
        let verdicts: Vec<NliVerdict> = probabilities.iter().map(|&p| NliVerdict::from_probabilities(p)).collect();
        let flagged = verdicts.iter().enumerate().filter(|(_, &v)| v != NliVerdict::Entailed).map(|(i, _)| i).collect();
        HallucinationRecord { doc_id: doc_id.into(), n_sentences: verdicts.len(), verdicts, probabilities, flagged }
    }
}

fn premise_and_hypotheses(doc: &Document) -> Result<(&str, Vec<String>), HallucinationError> {
    let context = doc.context.as_deref().ok_or_else(|| HallucinationError::MissingContext { doc_id: doc.id.clone() })?;
    let sentences: Vec<String> = doc.sentences().into_iter().map(|s| s.text).collect();
    if sentences.is_empty() {
        return Err(HallucinationError::NoSentences { doc_id: doc.id.clone() });
    }
    Ok((context, sentences))
}

pub fn detect_hallucinations(doc: &Document, client: &ScoringClient) -> Result<HallucinationRecord, HallucinationError> {
    let (premise, sentences) = premise_and_hypotheses(doc)?;
    let pairs: Vec<(String, String)> = sentences.into_iter().map(|s| (premise.to_string(), s)).collect();
    match client.nli_batch(&pairs) {
        Ok(probs) => Ok(HallucinationRecord::from_probabilities(&doc.id, probs)),
        Err(source) => Err(locate_failure(&doc.id, &pairs, client, source)),
    }
}

// Re-scores sentence by sentence so the error can name the failing sentence.
fn locate_failure(doc_id: &str, pairs: &[(String, String)], client: &ScoringClient, fallback: ScoringError) -> HallucinationError {
    for (i, pair) in pairs.iter().enumerate() {
        if let Err(source) = client.nli_batch(std::slice::from_ref(pair)) {
            return HallucinationError::Scoring { doc_id: doc_id.to_string(), sentence: Some(i), source };
        }
    }
    HallucinationError::Scoring { doc_id: doc_id.to_string(), sentence: None, source: fallback }
}

/// Detects hallucinations for many documents with one batched request stream.
/// Records come back in the order of `docs`.
pub fn detect_all(docs: &[&Document], client: &ScoringClient) -> Result<Vec<HallucinationRecord>, HallucinationError> {
    let mut pairs = Vec::new();
    let mut sizes = Vec::with_capacity(docs.len());
    for doc in docs {
        let (premise, sentences) = premise_and_hypotheses(doc)?;
        sizes.push(sentences.len());
        pairs.extend(sentences.into_iter().map(|s| (premise.to_string(), s)));
    }
    if pairs.is_empty() {
        return Ok(Vec::new());
    }
    let probs = match client.nli_batch(&pairs) {
        Ok(p) => p,
        Err(_) => {
            // Localize the failure to a document.
            for doc in docs {
                detect_hallucinations(doc, client)?;
            }
            return Err(HallucinationError::Scoring {
                doc_id: String::new(),
                sentence: None,
                source: ScoringError::Precondition("batch failed but no single document reproduces it".into()),
            });
        }
    };
    let mut it = probs.into_iter();
    Ok(docs
        .iter()
        .zip(sizes)
        .map(|(doc, n)| HallucinationRecord::from_probabilities(&doc.id, it.by_ref().take(n).collect()))
        .collect())
}

/// Style fractions of one document: over all sentences, and over flagged ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct DocFractions<F> {
    pub doc_id: String,
    pub full: F,
    /// `None` when no sentence was flagged.
    pub hallucinated: Option<F>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct HallucinationSamples<F> {
    pub aspect: Aspect,
    pub male: Vec<DocFractions<F>>,
    pub female: Vec<DocFractions<F>>,
}

impl<F: Scalar> HallucinationSamples<F> {
    pub fn docs(&self, gender: Gender) -> &[DocFractions<F>] {
        match gender {
            Gender::Male => &self.male,
            Gender::Female => &self.female,
        }
    }

    /// Hallucinated fractions; documents with nothing flagged are left out.
    pub fn hallucinated(&self, gender: Gender) -> Vec<F> {
        self.docs(gender).iter().filter_map(|d| d.hallucinated).collect()
    }

    pub fn full(&self, gender: Gender) -> Vec<F> {
        self.docs(gender).iter().map(|d| d.full).collect()
    }

    /// `(hallucinated, full)` for documents with at least one flagged sentence.
    pub fn paired(&self, gender: Gender) -> (Vec<F>, Vec<F>) {
        self.docs(gender).iter().filter_map(|d| d.hallucinated.map(|h| (h, d.full))).unzip()
    }

    pub fn excluded(&self, gender: Gender) -> usize {
        self.docs(gender).iter().filter(|d| d.hallucinated.is_none()).count()
    }
}

/// Builds full and hallucinated fractions for one aspect. `labels` maps each
/// document id to its per-sentence labels.
pub fn hallucination_style_samples<F: Scalar>(
    corpora: &GenderedCorpora,
    records: &BTreeMap<String, HallucinationRecord>,
    aspect: Aspect,
    labels: &BTreeMap<String, Vec<bool>>,
) -> Result<HallucinationSamples<F>, HallucinationError> {
    let fractions = |g: Gender| -> Result<Vec<DocFractions<F>>, HallucinationError> {
        corpora
            .docs(g)
            .iter()
            .map(|doc| {
                let missing = |what| HallucinationError::MissingInput { doc_id: doc.id.clone(), what };
                let rec = records.get(&doc.id).ok_or_else(|| missing("hallucination record"))?;
                let lab = labels.get(&doc.id).ok_or_else(|| missing("sentence labels"))?;
                doc_fractions(&doc.id, rec, lab)
            })
            .collect()
    };
    Ok(HallucinationSamples { aspect, male: fractions(Gender::Male)?, female: fractions(Gender::Female)? })
}

pub fn doc_fractions<F: Scalar>(
    doc_id: &str,
    record: &HallucinationRecord,
    labels: &[bool],
) -> Result<DocFractions<F>, HallucinationError> {
    if labels.len() != record.n_sentences || labels.is_empty() {
        return Err(HallucinationError::LabelMismatch {
            doc_id: doc_id.to_string(),
            labels: labels.len(),
            sentences: record.n_sentences,
        });
    }
    let frac = |hits: usize, n: usize| F::from_usize_lossy(hits) / F::from_usize_lossy(n);
    let full = frac(labels.iter().filter(|&&l| l).count(), labels.len());
    let hallucinated = (!record.flagged.is_empty())
        .then(|| frac(record.flagged.iter().filter(|&&i| labels[i]).count(), record.flagged.len()));
    Ok(DocFractions { doc_id: doc_id.to_string(), full, hallucinated })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestMode {
    /// Unpaired Welch test of hallucinated against full fractions.
    #[default]
    Welch,
    /// Paired test over documents with at least one hallucinated sentence.
    Paired,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Amplification,
    Propagation,
    /// No test could be run, e.g. too few hallucinated documents.
    #[serde(rename = "none")]
    Undetermined,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Amplification => "amplification",
            Classification::Propagation => "propagation",
            Classification::Undetermined => "none",
        })
    }
}

/// Test of hallucinated (`a`) against full-document (`b`) fractions for one gender and aspect.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct HallucinationBiasResult<F: Scalar> {
    pub gender: Gender,
    pub aspect: Aspect,
    pub mode: TestMode,
    pub result: Option<TTest<F>>,
    pub stars: u8,
    pub classification: Classification,
    /// Documents left out because nothing in them was flagged.
    pub excluded_docs: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Stereotype direction for hallucinated content: up for male, down for female.
pub fn direction(gender: Gender) -> Alternative {
    match gender {
        Gender::Male => Alternative::Greater,
        Gender::Female => Alternative::Less,
    }
}

pub fn hallucination_bias_test<F: Scalar>(
    samples: &HallucinationSamples<F>,
    gender: Gender,
    mode: TestMode,
) -> HallucinationBiasResult<F> {
    let alt = direction(gender);
    let outcome = match mode {
        TestMode::Welch => welch_t_test(&samples.hallucinated(gender), &samples.full(gender), alt),
        TestMode::Paired => {
            let (h, f) = samples.paired(gender);
            paired_t_test(&h, &f, alt)
        }
    };
    let base = HallucinationBiasResult {
        gender,
        aspect: samples.aspect,
        mode,
        result: None,
        stars: 0,
        classification: Classification::Undetermined,
        excluded_docs: samples.excluded(gender),
        note: None,
    };
    match outcome {
        Ok(t) => {
            let significant = t.p_value < F::lit(AMPLIFICATION_LEVEL);
            HallucinationBiasResult {
                stars: significance_stars(t.p_value),
                classification: if significant { Classification::Amplification } else { Classification::Propagation },
                result: Some(t),
                ..base
            }
        }
        Err(e) => HallucinationBiasResult { note: Some(format!("test not run: {e}")), ..base },
    }
}

/// Male then female result for each aspect sample, in the order given.
pub fn hallucination_bias_report<F: Scalar>(
    samples: &[HallucinationSamples<F>],
    mode: TestMode,
) -> Vec<HallucinationBiasResult<F>> {
    samples
        .iter()
        .flat_map(|s| Gender::BOTH.iter().map(move |&g| hallucination_bias_test(s, g, mode)))
        .collect()
}
