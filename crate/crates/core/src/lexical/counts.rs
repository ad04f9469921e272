use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{extract_pos_words, LexicalError, LexiconCategory, PosFilter, Tagger};
use crate::corpus::{Document, Gender};

/// Per-gender frequency table of (lowercased) words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordCounts {
    pub gender: Gender,
    pub pos: PosFilter,
    pub counts: BTreeMap<String, u64>,
    pub total: u64,
}

impl WordCounts {
    pub fn new(gender: Gender, pos: PosFilter) -> Self {
        WordCounts { gender, pos, counts: BTreeMap::new(), total: 0 }
    }

    pub fn from_words<I, S>(gender: Gender, pos: PosFilter, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut c = Self::new(gender, pos);
        for w in words {
            c.add(w.as_ref(), 1);
        }
        c
    }

    /// Builds a table from explicit `(word, count)` pairs; zero counts are dropped.
    pub fn from_counts<'a>(gender: Gender, pos: PosFilter, pairs: impl IntoIterator<Item = (&'a str, u64)>) -> Self {
        let mut c = Self::new(gender, pos);
        for (w, n) in pairs {
            c.add(w, n);
        }
        c
    }

    pub fn add(&mut self, word: &str, n: u64) {
        if n == 0 {
            return;
        }
        *self.counts.entry(word.to_lowercase()).or_insert(0) += n;
        self.total += n;
    }

    /// Adds another table's counts. Count addition commutes, so merge order never matters.
    pub fn merge(&mut self, other: &WordCounts) {
        for (w, &n) in &other.counts {
            *self.counts.entry(w.clone()).or_insert(0) += n;
        }
        self.total += other.total;
    }

    pub fn get(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    /// Summed occurrences of every word matching the category.
    pub fn matching(&self, category: &LexiconCategory) -> u64 {
        self.counts.iter().filter(|(w, _)| category.matches(w)).map(|(_, &n)| n).sum()
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }
}

/// Counts POS-filtered words over every document of one gender.
pub fn count_words(
    docs: &[Document],
    gender: Gender,
    pos: PosFilter,
    tagger: &dyn Tagger,
) -> Result<WordCounts, LexicalError> {
    let mut counts = WordCounts::new(gender, pos);
    for doc in docs {
        for w in extract_pos_words(doc, pos, tagger)? {
            counts.add(&w, 1);
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_track_counts() {
        let mut c = WordCounts::from_words(Gender::Male, PosFilter::Adjective, ["Kind", "kind", "smart"]);
        assert_eq!(c.get("kind"), 2);
        assert_eq!(c.total, 3);
        c.add("warm", 0);
        assert_eq!(c.distinct(), 2);
        let other = WordCounts::from_counts(Gender::Male, PosFilter::Adjective, [("warm", 4)]);
        c.merge(&other);
        assert_eq!(c.total, 7);
        assert_eq!(c.total, c.counts.values().sum::<u64>());
    }

    #[test]
    fn category_matching() {
        let c = WordCounts::from_counts(Gender::Female, PosFilter::AllTokens, [("kind", 2), ("kindness", 3), ("kin", 7)]);
        let cat = LexiconCategory::new("Test", &["kind*"]).unwrap();
        assert_eq!(c.matching(&cat), 5);
    }
}
