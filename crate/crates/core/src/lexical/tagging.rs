//! Part-of-speech tagging backends.

use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use serde::Deserialize;

use super::{LexicalError, PosFilter};
use crate::corpus::{word_tokens, Document};
use crate::scoring::{PosTag, ScoringClient};

pub type Tagged = Vec<(String, PosTag)>;

/// Something that can tag a document's tokens.
pub trait Tagger {
    fn tag(&self, doc: &Document) -> Result<Tagged, LexicalError>;

    /// Tags several documents; backends that batch remotely override this.
    fn tag_all(&self, docs: &[&Document]) -> Result<Vec<Tagged>, LexicalError> {
        docs.iter().map(|d| self.tag(d)).collect()
    }
}

/// Lowercased words whose tag passes `pos`, in document order.
/// `AllTokens` bypasses the tagger entirely.
pub fn extract_pos_words(doc: &Document, pos: PosFilter, tagger: &dyn Tagger) -> Result<Vec<String>, LexicalError> {
    if pos == PosFilter::AllTokens {
        return Ok(word_tokens(&doc.text));
    }
    if doc.text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(filter_tagged(tagger.tag(doc)?, pos))
}

pub(crate) fn filter_tagged(tagged: Tagged, pos: PosFilter) -> Vec<String> {
    tagged.into_iter().filter(|(_, t)| pos.accepts(*t)).map(|(w, _)| w.to_lowercase()).collect()
}

/// Tags read from a file, one record per line: `{"id": ..., "tokens": [[token, TAG], ...]}`.
#[derive(Debug, Clone, Default)]
pub struct PretaggedTagger {
    docs: HashMap<String, Tagged>,
}

#[derive(Deserialize)]
struct PretaggedRecord {
    id: String,
    tokens: Tagged,
}

impl PretaggedTagger {
    pub fn insert(&mut self, doc_id: impl Into<String>, tokens: Tagged) {
        self.docs.insert(doc_id.into(), tokens);
    }

    pub fn read<R: BufRead>(reader: R) -> Result<Self, LexicalError> {
        let mut out = PretaggedTagger::default();
        for (i, line) in reader.lines().enumerate() {
            let parse = |message: String| LexicalError::Parse { line: i + 1, message };
            let line = line.map_err(|e| parse(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: PretaggedRecord = serde_json::from_str(&line).map_err(|e| parse(e.to_string()))?;
            if out.docs.contains_key(&rec.id) {
                return Err(parse(format!("duplicate id {:?}", rec.id)));
            }
            out.insert(rec.id, rec.tokens);
        }
        Ok(out)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexicalError> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| LexicalError::Io { path: path.display().to_string(), source: e })?;
        Self::read(std::io::BufReader::new(file))
    }
}

impl Tagger for PretaggedTagger {
    fn tag(&self, doc: &Document) -> Result<Tagged, LexicalError> {
        self.docs.get(&doc.id).cloned().ok_or_else(|| LexicalError::Tagging {
            doc_id: doc.id.clone(),
            message: "no pre-tagged tokens for this document".into(),
        })
    }
}

/// Tags sentence by sentence through the scoring protocol.
pub struct ScorerTagger<'a> {
    client: &'a ScoringClient,
}

impl<'a> ScorerTagger<'a> {
    pub fn new(client: &'a ScoringClient) -> Self {
        ScorerTagger { client }
    }
}

impl Tagger for ScorerTagger<'_> {
    fn tag(&self, doc: &Document) -> Result<Tagged, LexicalError> {
        Ok(self.tag_all(&[doc])?.pop().unwrap_or_default())
    }

    fn tag_all(&self, docs: &[&Document]) -> Result<Vec<Tagged>, LexicalError> {
        let mut owner = Vec::new();
        let mut sentences = Vec::new();
        for (d, doc) in docs.iter().enumerate() {
            for span in doc.sentences() {
                owner.push(d);
                sentences.push(span.text);
            }
        }
        let mut out = vec![Tagged::new(); docs.len()];
        if sentences.is_empty() {
            return Ok(out);
        }
        let tagged = self.client.pos_tag_batch(&sentences).map_err(|e| LexicalError::Tagging {
            doc_id: docs.iter().map(|d| d.id.as_str()).collect::<Vec<_>>().join(","),
            message: e.to_string(),
        })?;
        for (d, tags) in owner.into_iter().zip(tagged) {
            out[d].extend(tags);
        }
        Ok(out)
    }
}
