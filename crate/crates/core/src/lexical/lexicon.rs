//! Trait lexicons with literal and prefix (`word*`) entries.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::LexicalError;

const BUNDLED_LEXICON: &str = include_str!("../../data/lexicon.txt");
const BUNDLED_WEAT: &str = include_str!("../../data/weat_lists.txt");

/// One lexicon entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Pattern {
    Literal(String),
    Prefix(String),
}

impl Pattern {
    pub fn parse(raw: &str) -> Result<Self, LexicalError> {
        let raw = raw.trim().trim_matches('\'');
        let bad = |reason: &str| LexicalError::BadPattern { pattern: raw.to_string(), reason: reason.to_string() };
        if raw.is_empty() {
            return Err(bad("empty"));
        }
        if raw.chars().any(|c| c.is_uppercase()) {
            return Err(bad("patterns must be lowercase"));
        }
        match raw.strip_suffix('*') {
            Some(stem) if stem.contains('*') => Err(bad("'*' may only appear at the end")),
            Some("") => Err(bad("bare '*'")),
            Some(stem) => Ok(Pattern::Prefix(stem.to_string())),
            None if raw.contains('*') => Err(bad("'*' may only appear at the end")),
            None => Ok(Pattern::Literal(raw.to_string())),
        }
    }

    /// `token` is expected lowercased.
    pub fn matches(&self, token: &str) -> bool {
        match self {
            Pattern::Literal(w) => token == w,
            Pattern::Prefix(stem) => token.starts_with(stem.as_str()),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Literal(w) => f.write_str(w),
            Pattern::Prefix(s) => write!(f, "{s}*"),
        }
    }
}

impl TryFrom<String> for Pattern {
    type Error = LexicalError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Pattern::parse(&value)
    }
}

impl From<Pattern> for String {
    fn from(p: Pattern) -> String {
        p.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconCategory {
    pub name: String,
    pub patterns: Vec<Pattern>,
}

impl LexiconCategory {
    pub fn new(name: impl Into<String>, patterns: &[&str]) -> Result<Self, LexicalError> {
        let name = name.into();
        if patterns.is_empty() {
            return Err(LexicalError::EmptyCategory(name));
        }
        let patterns = patterns.iter().map(|p| Pattern::parse(p)).collect::<Result<_, _>>()?;
        Ok(LexiconCategory { name, patterns })
    }

    pub fn matches(&self, token: &str) -> bool {
        self.patterns.iter().any(|p| p.matches(token))
    }
}

/// An ordered collection of categories.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lexicon {
    pub categories: Vec<LexiconCategory>,
}

impl Lexicon {
    /// The nine trait categories (Ability, Standout, Leadership, Masculine,
    /// Feminine, Agentic, Communal, Professional, Personal).
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_LEXICON).expect("bundled lexicon parses")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexicalError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| LexicalError::Io { path: path.display().to_string(), source: e })?;
        Self::parse(&text)
    }

    /// Parses `Name: pat, pat, ...` lines. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, LexicalError> {
        let mut categories = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, rest) = line.split_once(':').ok_or_else(|| LexicalError::Parse {
                line: idx + 1,
                message: "expected `Category: pattern, ...`".into(),
            })?;
            let patterns: Vec<&str> = rest.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
            categories.push(LexiconCategory::new(name.trim(), &patterns)?);
        }
        Ok(Lexicon { categories })
    }

    pub fn get(&self, name: &str) -> Option<&LexiconCategory> {
        self.categories.iter().find(|c| c.name.eq_ignore_ascii_case(name))
    }

    /// Whether `token` falls in any category.
    pub fn matches_any(&self, token: &str) -> bool {
        self.categories.iter().any(|c| c.matches(token))
    }
}

/// Word lists for the two association tests: popular names and career/family words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeatWordLists {
    pub male_names: Vec<String>,
    pub female_names: Vec<String>,
    pub career_words: Vec<String>,
    pub family_words: Vec<String>,
}

impl WeatWordLists {
    pub fn bundled() -> Self {
        let mut lists = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
        for line in BUNDLED_WEAT.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
            let (name, rest) = line.split_once(':').expect("bundled list line");
            let slot = match name.trim() {
                "Male Names" => 0,
                "Female Names" => 1,
                "Career Words" => 2,
                "Family Words" => 3,
                other => panic!("unexpected bundled list {other}"),
            };
            lists[slot] = rest.split(',').map(|w| w.trim().to_string()).collect();
        }
        let [male_names, female_names, career_words, family_words] = lists;
        WeatWordLists { male_names, female_names, career_words, family_words }
    }
}
