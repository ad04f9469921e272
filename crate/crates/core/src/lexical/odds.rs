//! Odds ratios.
//!
//! For a word with counts `E_m`, `E_f` in tables of totals `T_m`, `T_f`:
//!
//! ```text
//! OR = [E_m / (T_m - E_m)] / [E_f / (T_f - E_f)]
//! ```
//!
//! The value is evaluated as the single integer fraction
//! `E_m (T_f - E_f) / ((T_m - E_m) E_f)`, so the only rounding is the final
//! division. A zero denominator with a positive numerator is `+inf`; `0/0` is
//! an error.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LexicalError, LexiconCategory, WordCounts};
use crate::num::Scalar;

/// Frequency floor for per-word odds ratios. Category ratios use none.
pub const DEFAULT_MIN_COUNT: u64 = 3;

/// A non-negative odds ratio, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrValue<F> {
    Finite(F),
    Infinite,
}

impl<F: Scalar> OrValue<F> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, OrValue::Infinite)
    }

    pub fn finite(&self) -> Option<F> {
        match *self {
            OrValue::Finite(v) => Some(v),
            OrValue::Infinite => None,
        }
    }

    /// `+inf` for the infinite case.
    pub fn to_scalar(&self) -> F {
        self.finite().unwrap_or_else(F::infinity)
    }

    /// Total order with `Infinite` above every finite value.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (OrValue::Infinite, OrValue::Infinite) => Ordering::Equal,
            (OrValue::Infinite, _) => Ordering::Greater,
            (_, OrValue::Infinite) => Ordering::Less,
            (OrValue::Finite(a), OrValue::Finite(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
        }
    }
}

impl<F: Scalar> fmt::Display for OrValue<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrValue::Finite(v) => write!(f, "{v}"),
            OrValue::Infinite => f.write_str("inf"),
        }
    }
}

impl<F: Scalar> Serialize for OrValue<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OrValue::Finite(v) => v.serialize(s),
            OrValue::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de, F: Scalar> Deserialize<'de> for OrValue<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr<F> {
            Num(F),
            Text(String),
        }
        match Repr::<F>::deserialize(d)? {
            Repr::Num(v) => Ok(OrValue::Finite(v)),
            Repr::Text(t) if t == "inf" => Ok(OrValue::Infinite),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("expected number or \"inf\", got {t:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct OddsRatioResult<F> {
    /// Word or category name.
    pub key: String,
    pub male_count: u64,
    pub female_count: u64,
    pub or_value: OrValue<F>,
    /// Whether the combined count reaches the frequency floor.
    pub included: bool,
}

fn ratio<F: Scalar>(key: &str, e_m: u64, t_m: u64, e_f: u64, t_f: u64) -> Result<OrValue<F>, LexicalError> {
    let num = u128::from(e_m) * u128::from(t_f - e_f);
    let den = u128::from(t_m - e_m) * u128::from(e_f);
    match (num, den) {
        (0, 0) => Err(LexicalError::Undefined(key.to_string())),
        (_, 0) => Ok(OrValue::Infinite),
        (n, d) => {
            let n = F::from_u128(n).expect("count product representable");
            let d = F::from_u128(d).expect("count product representable");
            Ok(OrValue::Finite(n / d))
        }
    }
}

fn check_pos(male: &WordCounts, female: &WordCounts) -> Result<(), LexicalError> {
    if male.pos != female.pos {
        return Err(LexicalError::PosMismatch { male: male.pos, female: female.pos });
    }
    Ok(())
}

/// Per-word odds ratio; `included` is false when `E_m + E_f < min_count`.
pub fn odds_ratio<F: Scalar>(
    word: &str,
    male: &WordCounts,
    female: &WordCounts,
    min_count: u64,
) -> Result<OddsRatioResult<F>, LexicalError> {
    check_pos(male, female)?;
    let word = word.to_lowercase();
    let (e_m, e_f) = (male.get(&word), female.get(&word));
    if e_m == 0 && e_f == 0 {
        return Err(LexicalError::Absent(word));
    }
    let or_value = ratio(&word, e_m, male.total, e_f, female.total)?;
    Ok(OddsRatioResult { included: e_m + e_f >= min_count, key: word, male_count: e_m, female_count: e_f, or_value })
}

/// Odds ratio of a whole category: every token matching any of its patterns
/// counts as one occurrence of the category.
pub fn category_odds_ratio<F: Scalar>(
    category: &LexiconCategory,
    male: &WordCounts,
    female: &WordCounts,
) -> Result<OddsRatioResult<F>, LexicalError> {
    check_pos(male, female)?;
    let (e_m, e_f) = (male.matching(category), female.matching(category));
    if e_m == 0 && e_f == 0 {
        return Err(LexicalError::Absent(category.name.clone()));
    }
    let or_value = ratio(&category.name, e_m, male.total, e_f, female.total)?;
    Ok(OddsRatioResult { key: category.name.clone(), male_count: e_m, female_count: e_f, or_value, included: true })
}

/// The `k` most male-salient and `k` most female-salient words.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "F: Scalar")]
pub struct SalientWords<F> {
    /// Highest odds ratios first.
    pub top_male: Vec<OddsRatioResult<F>>,
    /// Lowest odds ratios first.
    pub top_female: Vec<OddsRatioResult<F>>,
    /// Set when fewer than `2k` words pass the frequency floor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Ranks every included word by odds ratio (descending, `+inf` first; ties by
/// higher combined count, then alphabetically) and takes both ends.
///
/// With fewer than `2k` included words the two lists split what exists without
/// overlapping, and a warning is attached.
pub fn salient_words<F: Scalar>(
    male: &WordCounts,
    female: &WordCounts,
    k: usize,
    min_count: u64,
) -> Result<SalientWords<F>, LexicalError> {
    check_pos(male, female)?;
    let k = k.max(1);
    let mut vocab: Vec<&String> = male.counts.keys().chain(female.counts.keys()).collect();
    vocab.sort();
    vocab.dedup();
    let mut ranked = Vec::new();
    for w in vocab {
        let r = odds_ratio::<F>(w, male, female, min_count)?;
        if r.included {
            ranked.push(r);
        }
    }
    ranked.sort_by(|a, b| {
        b.or_value
            .total_cmp(&a.or_value)
            .then_with(|| (b.male_count + b.female_count).cmp(&(a.male_count + a.female_count)))
            .then_with(|| a.key.cmp(&b.key))
    });
    let n = ranked.len();
    let warning = (n < 2 * k).then(|| format!("only {n} word(s) reach the frequency floor of {min_count}; wanted {}", 2 * k));
    let n_male = k.min(n);
    let n_female = k.min(n - n_male);
    let top_female = ranked[n - n_female..].iter().rev().cloned().collect();
    ranked.truncate(n_male);
    Ok(SalientWords { top_male: ranked, top_female, warning })
}
