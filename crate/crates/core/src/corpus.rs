//! Documents, gendered corpora and the deterministic sentence splitter.
//!
//! Corpora are stored as line-delimited JSON, one [`Document`] per line:
//!
//! ```text
//! {"id":"a","gender":"male","text":"Hi.","source_id":"s1","metadata":{"occupation":"chef"}}
//! ```
//!
//! `context`, `prompt`, `source_id` and `metadata` are optional.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: malformed record: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: missing field `{field}`")]
    MissingField { line: usize, field: &'static str },
    #[error("line {line}: unknown gender value {value:?}")]
    UnknownGender { line: usize, value: String },
    #[error("duplicate document id {id:?}")]
    DuplicateId { id: String },
    #[error("document {id:?}: {reason}")]
    InvalidDocument { id: String, reason: String },
    #[error("source {source_id:?} has more than one {gender} document")]
    AmbiguousPair { source_id: String, gender: Gender },
}

/// Binary gender label carried by every document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Male,
    Female,
}

impl Gender {
    pub const BOTH: [Gender; 2] = [Gender::Male, Gender::Female];

    pub fn opposite(self) -> Gender {
        match self {
            Gender::Male => Gender::Female,
            Gender::Female => Gender::Male,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Gender::Male => "male",
            Gender::Female => "female",
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Gender {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "male" | "m" => Ok(Gender::Male),
            "female" | "f" => Ok(Gender::Female),
            other => Err(other.to_string()),
        }
    }
}

/// One generated document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub gender: Gender,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompt: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_id: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, Value>,
}

impl Document {
    pub fn new(id: impl Into<String>, gender: Gender, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            gender,
            text: text.into(),
            context: None,
            prompt: None,
            source_id: None,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_context(mut self, source_id: impl Into<String>, context: impl Into<String>) -> Self {
        self.source_id = Some(source_id.into());
        self.context = Some(context.into());
        self
    }

    pub fn with_source(mut self, source_id: impl Into<String>) -> Self {
        self.source_id = Some(source_id.into());
        self
    }

    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.into(), value.into());
        self
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.text.trim().is_empty() {
            return Err(CorpusError::InvalidDocument { id: self.id.clone(), reason: "text is empty".into() });
        }
        if self.context.is_some() && self.source_id.is_none() {
            return Err(CorpusError::InvalidDocument {
                id: self.id.clone(),
                reason: "context present without source_id".into(),
            });
        }
        Ok(())
    }

    /// Sentence spans of `text`, tagged with this document's id.
    pub fn sentences(&self) -> Vec<SentenceSpan> {
        split_sentences_for(&self.id, &self.text)
    }

    pub fn metadata_str(&self, key: &str) -> Option<&str> {
        self.metadata.get(key).and_then(Value::as_str)
    }
}

/// The two document sets under audit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenderedCorpora {
    pub name: String,
    pub male_docs: Vec<Document>,
    pub female_docs: Vec<Document>,
}

impl GenderedCorpora {
    /// Partitions `docs` by gender after validating each document and id uniqueness.
    pub fn from_documents(name: impl Into<String>, docs: Vec<Document>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        let mut male_docs = Vec::new();
        let mut female_docs = Vec::new();
        for doc in docs {
            doc.validate()?;
            if !seen.insert(doc.id.clone()) {
                return Err(CorpusError::DuplicateId { id: doc.id });
            }
            match doc.gender {
                Gender::Male => male_docs.push(doc),
                Gender::Female => female_docs.push(doc),
            }
        }
        Ok(GenderedCorpora { name: name.into(), male_docs, female_docs })
    }

    pub fn docs(&self, gender: Gender) -> &[Document] {
        match gender {
            Gender::Male => &self.male_docs,
            Gender::Female => &self.female_docs,
        }
    }

    /// All documents, male first, each list in file order.
    pub fn iter(&self) -> impl Iterator<Item = &Document> {
        self.male_docs.iter().chain(self.female_docs.iter())
    }

    pub fn len(&self) -> usize {
        self.male_docs.len() + self.female_docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn counts(&self) -> GenderCounts {
        GenderCounts { male: self.male_docs.len(), female: self.female_docs.len() }
    }

    /// Per-gender counts grouped by a string metadata key (e.g. `occupation`).
    pub fn counts_by_metadata(&self, key: &str) -> BTreeMap<String, GenderCounts> {
        let mut out: BTreeMap<String, GenderCounts> = BTreeMap::new();
        for doc in self.iter() {
            let bucket = doc.metadata_str(key).unwrap_or("").to_string();
            let entry = out.entry(bucket).or_default();
            match doc.gender {
                Gender::Male => entry.male += 1,
                Gender::Female => entry.female += 1,
            }
        }
        out
    }

    /// Keeps only documents accepted by `keep`, preserving order.
    pub fn retain(&self, mut keep: impl FnMut(&Document) -> bool) -> GenderedCorpora {
        GenderedCorpora {
            name: self.name.clone(),
            male_docs: self.male_docs.iter().filter(|d| keep(d)).cloned().collect(),
            female_docs: self.female_docs.iter().filter(|d| keep(d)).cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenderCounts {
    pub male: usize,
    pub female: usize,
}

#[derive(Deserialize)]
struct RawRecord {
    id: Option<String>,
    gender: Option<String>,
    text: Option<String>,
    #[serde(default)]
    context: Option<String>,
    #[serde(default)]
    prompt: Option<String>,
    #[serde(default)]
    source_id: Option<String>,
    #[serde(default)]
    metadata: BTreeMap<String, Value>,
}

/// Reads line-delimited records from `reader`. Blank lines are skipped.
pub fn read_corpus<R: BufRead>(reader: R, name: &str) -> Result<GenderedCorpora, CorpusError> {
    let mut docs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| CorpusError::Io { path: name.to_string(), source: e })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord = serde_json::from_str(&line)
            .map_err(|e| CorpusError::Malformed { line: line_no, message: e.to_string() })?;
        let id = raw.id.ok_or(CorpusError::MissingField { line: line_no, field: "id" })?;
        let gender_raw = raw.gender.ok_or(CorpusError::MissingField { line: line_no, field: "gender" })?;
        let gender = match gender_raw.as_str() {
            "male" => Gender::Male,
            "female" => Gender::Female,
            _ => return Err(CorpusError::UnknownGender { line: line_no, value: gender_raw }),
        };
        let text = raw.text.ok_or(CorpusError::MissingField { line: line_no, field: "text" })?;
        docs.push(Document {
            id,
            gender,
            text,
            context: raw.context,
            prompt: raw.prompt,
            source_id: raw.source_id,
            metadata: raw.metadata,
        });
    }
    GenderedCorpora::from_documents(name, docs)
}

/// Loads and validates a corpus file. The corpus is named after the file stem.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<GenderedCorpora, CorpusError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| CorpusError::Io { path: path.display().to_string(), source: e })?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    read_corpus(BufReader::new(file), &name)
}

/// Writes male documents then female documents, one JSON record per line.
pub fn write_corpus<W: Write>(corpora: &GenderedCorpora, mut writer: W) -> std::io::Result<()> {
    for doc in corpora.iter() {
        serde_json::to_writer(&mut writer, doc)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

pub fn save_corpus(corpora: &GenderedCorpora, path: impl AsRef<Path>) -> Result<(), CorpusError> {
    let path = path.as_ref();
    let io_err = |e| CorpusError::Io { path: path.display().to_string(), source: e };
    let file = File::create(path).map_err(io_err)?;
    let mut w = std::io::BufWriter::new(file);
    write_corpus(corpora, &mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

/// A sentence located by byte offsets into its document's text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceSpan {
    pub doc_id: String,
    pub index: usize,
    pub start: usize,
    pub end: usize,
    pub text: String,
}

const ABBREVIATIONS: &[&str] = &["dr.", "mr.", "ms.", "mrs.", "prof.", "e.g.", "i.e.", "etc.", "jr.", "sr.", "st.", "vs."];

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{201D}' | '\u{2019}')
}

/// Splits `text` into sentences.
///
/// A sentence ends at a run of `.`, `!` or `?` (plus any closing quotes or
/// brackets) that is followed by whitespace and an uppercase letter, or by the
/// end of the text. A single `.` closing a known abbreviation (`Dr.`, `e.g.`,
/// ...) does not end a sentence. A blank line always ends one. Spans are
/// trimmed, so whitespace between them is never part of a sentence.
pub fn split_sentences(text: &str) -> Vec<SentenceSpan> {
    split_sentences_for("", text)
}

pub fn split_sentences_for(doc_id: &str, text: &str) -> Vec<SentenceSpan> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut bounds: Vec<(usize, usize)> = Vec::new();
    let mut seg_start: Option<usize> = None;
    let mut i = 0;

    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            // whitespace run: paragraph break if it holds two or more newlines
            let mut j = i;
            let mut newlines = 0;
            while j < chars.len() && chars[j].1.is_whitespace() {
                if chars[j].1 == '\n' {
                    newlines += 1;
                }
                j += 1;
            }
            if newlines >= 2 {
                if let Some(s) = seg_start.take() {
                    bounds.push((s, pos));
                }
            }
            i = j;
            continue;
        }
        if seg_start.is_none() {
            seg_start = Some(pos);
        }
        if is_terminator(c) {
            let run_start = i;
            let mut j = i;
            while j < chars.len() && is_terminator(chars[j].1) {
                j += 1;
            }
            let single_period = j - run_start == 1 && c == '.';
            while j < chars.len() && is_closer(chars[j].1) {
                j += 1;
            }
            let end = chars.get(j).map_or(text.len(), |&(p, _)| p);
            let mut k = j;
            while k < chars.len() && chars[k].1.is_whitespace() {
                k += 1;
            }
            let at_end = k == chars.len();
            let followed_by_upper = k > j && k < chars.len() && chars[k].1.is_uppercase();
            if at_end || followed_by_upper {
                let s = seg_start.expect("segment open");
                if !(single_period && ends_with_abbreviation(&text[s..end])) {
                    bounds.push((s, end));
                    seg_start = None;
                }
            }
            i = j;
            continue;
        }
        i += 1;
    }
    if let Some(s) = seg_start {
        bounds.push((s, text.len()));
    }

    bounds
        .into_iter()
        .filter_map(|(s, e)| {
            let slice = &text[s..e];
            let trimmed = slice.trim_end();
            if trimmed.is_empty() {
                None
            } else {
                Some((s, s + trimmed.len()))
            }
        })
        .enumerate()
        .map(|(index, (start, end))| SentenceSpan {
            doc_id: doc_id.to_string(),
            index,
            start,
            end,
            text: text[start..end].to_string(),
        })
        .collect()
}

fn ends_with_abbreviation(segment: &str) -> bool {
    let last = segment.rsplit(char::is_whitespace).next().unwrap_or(segment);
    let last = last.trim_start_matches(|c: char| matches!(c, '(' | '"' | '\'' | '[' | '\u{201C}' | '\u{2018}'));
    let lower = last.to_lowercase();
    ABBREVIATIONS.contains(&lower.as_str())
}

/// Lowercased word tokens: maximal runs of alphanumerics, keeping internal
/// apostrophes and hyphens (`well-known`, `o'neil`).
pub fn word_tokens(text: &str) -> Vec<String> {
    word_token_spans(text).into_iter().map(|(s, e)| text[s..e].to_lowercase()).collect()
}

/// Byte ranges of the word tokens returned by [`word_tokens`].
pub fn word_token_spans(text: &str) -> Vec<(usize, usize)> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].1.is_alphanumeric() {
            i += 1;
            continue;
        }
        let start = chars[i].0;
        let mut j = i + 1;
        loop {
            if j < chars.len() && chars[j].1.is_alphanumeric() {
                j += 1;
            } else if j + 1 < chars.len()
                && matches!(chars[j].1, '\'' | '-' | '\u{2019}')
                && chars[j + 1].1.is_alphanumeric()
            {
                j += 2;
            } else {
                break;
            }
        }
        let end = chars.get(j).map_or(text.len(), |&(p, _)| p);
        spans.push((start, end));
        i = j;
    }
    spans
}

/// Result of grouping documents by `source_id`.
#[derive(Debug, Clone, Default)]
pub struct SourcePairs<'a> {
    /// `(male, female)` pairs ordered by source id.
    pub pairs: Vec<(&'a Document, &'a Document)>,
    pub unpaired: Vec<&'a Document>,
}

/// Pairs male and female documents that share a `source_id`.
pub fn pair_by_source(corpora: &GenderedCorpora) -> Result<SourcePairs<'_>, CorpusError> {
    let mut by_source: BTreeMap<&str, (Option<&Document>, Option<&Document>)> = BTreeMap::new();
    let mut out = SourcePairs::default();
    for doc in corpora.iter() {
        let Some(source) = doc.source_id.as_deref() else {
            out.unpaired.push(doc);
            continue;
        };
        let slot = by_source.entry(source).or_default();
        let cell = match doc.gender {
            Gender::Male => &mut slot.0,
            Gender::Female => &mut slot.1,
        };
        if cell.is_some() {
            return Err(CorpusError::AmbiguousPair { source_id: source.to_string(), gender: doc.gender });
        }
        *cell = Some(doc);
    }
    for (_, slot) in by_source {
        match slot {
            (Some(m), Some(f)) => out.pairs.push((m, f)),
            (Some(d), None) | (None, Some(d)) => out.unpaired.push(d),
            (None, None) => {}
        }
    }
    Ok(out)
}
