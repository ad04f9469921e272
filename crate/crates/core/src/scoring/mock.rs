//! Deterministic rule-based backend.
//!
//! * formality: informal if the sentence has a contraction or an `!`.
//! * sentiment: positive if the trimmed sentence ends with `!`.
//! * agency: agentic if Agentic-lexicon hits outnumber Communal hits.
//! * nli: entailment if the trimmed hypothesis is a substring of the premise,
//!   otherwise neutral.
//! * pos: dictionary lookup, unknown tokens tagged `OTHER`.

use std::collections::{BTreeMap, HashMap};

use super::protocol::{Health, Item, ItemResult, PosTag, ScoreRequest, ScoreResponse, Task};
use super::{Scorer, ScoringError};
use crate::corpus::word_token_spans;
use crate::lexical::{Lexicon, LexiconCategory};

const BUNDLED_POS: &str = include_str!("../../data/mock_pos.tsv");
pub const MOCK_MODEL_ID: &str = "mock-v1";

const CONTRACTIONS: &[&str] = &["n't", "'m", "'re", "'ll", "'ve", "'d", "\u{2019}m", "n\u{2019}t"];

#[derive(Debug, Clone)]
pub struct MockScorer {
    pos_dictionary: HashMap<String, PosTag>,
    agentic: LexiconCategory,
    communal: LexiconCategory,
}

impl Default for MockScorer {
    fn default() -> Self {
        Self::new()
    }
}

impl MockScorer {
    pub fn new() -> Self {
        let mut pos_dictionary = HashMap::new();
        for line in BUNDLED_POS.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
            let (word, tag) = line.split_once('\t').expect("tab-separated mock dictionary");
            let tag: PosTag = serde_json::from_value(serde_json::Value::String(tag.trim().into()))
                .expect("known tag in mock dictionary");
            pos_dictionary.insert(word.trim().to_string(), tag);
        }
        let lexicon = Lexicon::bundled();
        MockScorer {
            pos_dictionary,
            agentic: lexicon.get("Agentic").expect("bundled Agentic category").clone(),
            communal: lexicon.get("Communal").expect("bundled Communal category").clone(),
        }
    }

    /// Adds or overrides a dictionary entry for the tagger.
    pub fn with_pos_entry(mut self, word: &str, tag: PosTag) -> Self {
        self.pos_dictionary.insert(word.to_lowercase(), tag);
        self
    }

    fn binary(positive: bool) -> Vec<f64> {
        if positive {
            vec![0.0, 1.0]
        } else {
            vec![1.0, 0.0]
        }
    }

    pub fn is_formal(sentence: &str) -> bool {
        let lower = sentence.to_lowercase();
        !(sentence.contains('!') || CONTRACTIONS.iter().any(|c| lower.contains(c)))
    }

    pub fn is_positive(sentence: &str) -> bool {
        sentence.trim_end().ends_with('!')
    }

    pub fn is_agentic(&self, sentence: &str) -> bool {
        let tokens = crate::corpus::word_tokens(sentence);
        let agentic = tokens.iter().filter(|t| self.agentic.matches(t)).count();
        let communal = tokens.iter().filter(|t| self.communal.matches(t)).count();
        agentic > communal
    }

    pub fn entails(premise: &str, hypothesis: &str) -> bool {
        premise.contains(hypothesis.trim())
    }

    pub fn tag(&self, sentence: &str) -> Vec<(String, PosTag)> {
        word_token_spans(sentence)
            .into_iter()
            .map(|(s, e)| {
                let token = &sentence[s..e];
                let tag = self.pos_dictionary.get(&token.to_lowercase()).copied().unwrap_or(PosTag::Other);
                (token.to_string(), tag)
            })
            .collect()
    }

    fn score_item(&self, task: Task, item: &Item) -> Result<ItemResult, String> {
        Ok(match (task, item) {
            (Task::Formality, Item::Text(s)) => ItemResult::Probabilities(Self::binary(Self::is_formal(s))),
            (Task::Sentiment, Item::Text(s)) => ItemResult::Probabilities(Self::binary(Self::is_positive(s))),
            (Task::Agency, Item::Text(s)) => ItemResult::Probabilities(Self::binary(self.is_agentic(s))),
            (Task::Pos, Item::Text(s)) => ItemResult::Tags(self.tag(s)),
            (Task::Nli, Item::Pair(p, h)) => {
                ItemResult::Probabilities(if Self::entails(p, h) { vec![1.0, 0.0, 0.0] } else { vec![0.0, 1.0, 0.0] })
            }
            (task, _) => return Err(format!("item shape does not fit task {task}")),
        })
    }
}

impl Scorer for MockScorer {
    fn score(&self, request: &ScoreRequest) -> Result<ScoreResponse, ScoringError> {
        let protocol = |message: String| ScoringError::Protocol { batch_id: request.batch_id.clone(), message };
        request.check().map_err(protocol)?;
        let results = request
            .items
            .iter()
            .map(|item| self.score_item(request.task, item))
            .collect::<Result<_, _>>()
            .map_err(protocol)?;
        Ok(ScoreResponse { batch_id: request.batch_id.clone(), results, model_id: MOCK_MODEL_ID.into() })
    }

    fn health(&self) -> Health {
        let models: BTreeMap<Task, String> = Task::ALL.iter().map(|&t| (t, MOCK_MODEL_ID.to_string())).collect();
        Health::Ok { models }
    }
}
