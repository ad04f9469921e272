//! Word Embedding Association Test effect size.
//!
//! `s(w) = mean_a cos(w, a) - mean_b cos(w, b)` and
//! `d = (mean_X s - mean_Y s) / std_{X ∪ Y} s` with the population standard
//! deviation. Positive `d` means the targets `X` lean toward attributes `A`.

use serde::{Deserialize, Serialize};

use super::embedding::cosine;
use super::{EmbeddingTable, LexicalError};
use crate::num::{mean, population_std_sorted, Scalar};

/// Words dropped from each list because the embedding table lacks them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OovReport {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub a: Vec<String>,
    pub b: Vec<String>,
}

impl OovReport {
    pub fn total(&self) -> usize {
        self.x.len() + self.y.len() + self.a.len() + self.b.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct WeatResult<F> {
    pub effect_size: F,
    pub skipped: OovReport,
}

fn resolve<'t, F: Scalar, S: AsRef<str>>(
    words: &[S],
    emb: &'t EmbeddingTable<F>,
    name: &'static str,
    skipped: &mut Vec<String>,
) -> Result<Vec<&'t [F]>, LexicalError> {
    let mut out = Vec::with_capacity(words.len());
    for w in words {
        match emb.get(w.as_ref()) {
            Some(v) => out.push(v),
            None => skipped.push(w.as_ref().to_string()),
        }
    }
    if out.is_empty() {
        return Err(LexicalError::EmptyList(name));
    }
    Ok(out)
}

pub fn weat_effect_size<F: Scalar, S: AsRef<str>>(
    x: &[S],
    y: &[S],
    a: &[S],
    b: &[S],
    emb: &EmbeddingTable<F>,
) -> Result<WeatResult<F>, LexicalError> {
    let mut skipped = OovReport::default();
    let xv = resolve(x, emb, "X", &mut skipped.x)?;
    let yv = resolve(y, emb, "Y", &mut skipped.y)?;
    let av = resolve(a, emb, "A", &mut skipped.a)?;
    let bv = resolve(b, emb, "B", &mut skipped.b)?;

    let assoc = |w: &[F]| {
        let to_a: Vec<F> = av.iter().map(|v| cosine(w, v)).collect();
        let to_b: Vec<F> = bv.iter().map(|v| cosine(w, v)).collect();
        mean(&to_a).expect("non-empty") - mean(&to_b).expect("non-empty")
    };
    let sx: Vec<F> = xv.iter().map(|w| assoc(w)).collect();
    let sy: Vec<F> = yv.iter().map(|w| assoc(w)).collect();
    let all: Vec<F> = sx.iter().chain(&sy).copied().collect();
    let spread = population_std_sorted(&all).expect("non-empty");
    if spread.is_zero() {
        return Err(LexicalError::ZeroSpread);
    }
    let effect_size = (mean(&sx).expect("non-empty") - mean(&sy).expect("non-empty")) / spread;
    Ok(WeatResult { effect_size, skipped })
}
