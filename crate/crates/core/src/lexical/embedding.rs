use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

use super::LexicalError;
use crate::num::Scalar;

/// Static word vectors, all of one dimension and none of zero norm.
///
/// File format: one word per line followed by its components, separated by
/// single spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable<F> {
    dimension: usize,
    vectors: HashMap<String, Vec<F>>,
}

impl<F: Scalar> EmbeddingTable<F> {
    pub fn new(dimension: usize) -> Self {
        EmbeddingTable { dimension, vectors: HashMap::new() }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn insert(&mut self, word: &str, vector: Vec<F>) -> Result<(), LexicalError> {
        let bad = |reason: String| LexicalError::BadVector { word: word.to_string(), reason };
        if vector.len() != self.dimension {
            return Err(bad(format!("expected {} components, found {}", self.dimension, vector.len())));
        }
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(bad("non-finite component".into()));
        }
        if vector.iter().all(|v| v.is_zero()) {
            return Err(bad("zero vector".into()));
        }
        if self.vectors.insert(word.to_string(), vector).is_some() {
            return Err(bad("duplicate entry".into()));
        }
        Ok(())
    }

    /// Exact match first, then the lowercased word.
    pub fn get(&self, word: &str) -> Option<&[F]> {
        self.vectors
            .get(word)
            .or_else(|| self.vectors.get(&word.to_lowercase()))
            .map(Vec::as_slice)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.get(word).is_some()
    }

    pub fn read<R: BufRead>(reader: R) -> Result<Self, LexicalError> {
        let mut table: Option<Self> = None;
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|e| LexicalError::Parse { line: line_no, message: e.to_string() })?;
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(' ');
            let word = fields.next().unwrap_or_default();
            let vector = fields
                .map(|f| {
                    f.parse::<f64>().map(F::lit).map_err(|e| LexicalError::Parse {
                        line: line_no,
                        message: format!("component {f:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<F>, _>>()?;
            if vector.is_empty() {
                return Err(LexicalError::Parse { line: line_no, message: format!("no components for {word:?}") });
            }
            let t = table.get_or_insert_with(|| Self::new(vector.len()));
            t.insert(word, vector).map_err(|e| LexicalError::Parse { line: line_no, message: e.to_string() })?;
        }
        table.ok_or(LexicalError::Parse { line: 0, message: "empty embedding file".into() })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexicalError> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| LexicalError::Io { path: path.display().to_string(), source: e })?;
        Self::read(std::io::BufReader::new(file))
    }

    /// Cosine similarity; `None` if either word is missing.
    pub fn cosine(&self, a: &str, b: &str) -> Option<F> {
        Some(cosine(self.get(a)?, self.get(b)?))
    }
}

pub(crate) fn cosine<F: Scalar>(a: &[F], b: &[F]) -> F {
    let (mut dot, mut na, mut nb) = (F::zero(), F::zero(), F::zero());
    for (&x, &y) in a.iter().zip(b) {
        dot = dot + x * y;
        na = na + x * x;
        nb = nb + y * y;
    }
    dot / (na.sqrt() * nb.sqrt())
}
