//! Lexical-content bias: POS-filtered word counts, odds ratios, salient words,
//! lexicon categories and WEAT effect sizes.

mod counts;
mod embedding;
mod lexicon;
mod odds;
mod tagging;
mod weat;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scoring::PosTag;

pub use counts::{count_words, WordCounts};
pub use embedding::EmbeddingTable;
pub use lexicon::{Lexicon, LexiconCategory, Pattern, WeatWordLists};
pub use odds::{
    category_odds_ratio, odds_ratio, salient_words, OddsRatioResult, OrValue, SalientWords, DEFAULT_MIN_COUNT,
};
pub use tagging::{extract_pos_words, PretaggedTagger, ScorerTagger, Tagger};
pub use weat::{weat_effect_size, OovReport, WeatResult};

#[derive(Debug, Error)]
pub enum LexicalError {
    #[error("bad lexicon pattern {pattern:?}: {reason}")]
    BadPattern { pattern: String, reason: String },
    #[error("lexicon category {0:?} has no patterns")]
    EmptyCategory(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("count tables disagree on POS filter ({male} vs {female})")]
    PosMismatch { male: PosFilter, female: PosFilter },
    #[error("{0:?} occurs in neither corpus")]
    Absent(String),
    #[error("odds ratio for {0:?} is 0/0")]
    Undefined(String),
    #[error("embedding for {word:?}: {reason}")]
    BadVector { word: String, reason: String },
    #[error("word list {0} is empty after removing out-of-vocabulary words")]
    EmptyList(&'static str),
    #[error("association scores have zero spread; effect size undefined")]
    ZeroSpread,
    #[error("document {doc_id}: tagging failed: {message}")]
    Tagging { doc_id: String, message: String },
}

/// Which words are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PosFilter {
    Noun,
    Adjective,
    AllTokens,
}

impl PosFilter {
    pub fn as_str(self) -> &'static str {
        match self {
            PosFilter::Noun => "noun",
            PosFilter::Adjective => "adjective",
            PosFilter::AllTokens => "all_tokens",
        }
    }

    pub fn accepts(self, tag: PosTag) -> bool {
        match self {
            PosFilter::Noun => tag == PosTag::Noun,
            PosFilter::Adjective => tag == PosTag::Adj,
            PosFilter::AllTokens => true,
        }
    }
}

impl std::fmt::Display for PosFilter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
