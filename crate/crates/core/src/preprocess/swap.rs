//! Name replacement and pronoun flipping.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::PreprocessError;
use crate::corpus::Gender;

const BUNDLED_TABLE: &str = include_str!("../../data/pronouns.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Replacement {
    Fixed(String),
    /// Chosen by the token that follows: `determiner` before a content word,
    /// `standalone` before a function word, punctuation, or end of text.
    Ambiguous { determiner: String, standalone: String },
}

/// Pronoun mapping for both swap directions plus the function-word list used
/// to resolve ambiguous forms.
#[derive(Debug, Clone)]
pub struct PronounTable {
    to_male: HashMap<String, Replacement>,
    to_female: HashMap<String, Replacement>,
    function_words: HashSet<String>,
}

impl PronounTable {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_TABLE).expect("bundled pronoun table parses")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, PreprocessError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| PreprocessError::Io { path: path.display().to_string(), source: e })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, PreprocessError> {
        #[derive(Clone, Copy)]
        enum Section {
            None,
            ToMale,
            ToFemale,
            Function,
        }
        let mut section = Section::None;
        let mut table = PronounTable {
            to_male: HashMap::new(),
            to_female: HashMap::new(),
            function_words: HashSet::new(),
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| PreprocessError::PronounTable { line: idx + 1, message: message.to_string() };
            if line.starts_with('[') {
                section = match line {
                    "[to_male]" => Section::ToMale,
                    "[to_female]" => Section::ToFemale,
                    "[function_words]" => Section::Function,
                    _ => return Err(err("unknown section")),
                };
                continue;
            }
            match section {
                Section::None => return Err(err("entry outside of a section")),
                Section::Function => {
                    table.function_words.extend(line.split_whitespace().map(str::to_lowercase));
                }
                Section::ToMale | Section::ToFemale => {
                    let (from, to) = line.split_once("->").ok_or_else(|| err("expected `word -> replacement`"))?;
                    let from = from.trim().to_lowercase();
                    let replacement = match to.split_once('|') {
                        Some((det, stand)) => Replacement::Ambiguous {
                            determiner: det.trim().to_lowercase(),
                            standalone: stand.trim().to_lowercase(),
                        },
                        None => Replacement::Fixed(to.trim().to_lowercase()),
                    };
                    if from.is_empty() {
                        return Err(err("empty source pronoun"));
                    }
                    let map = if matches!(section, Section::ToMale) { &mut table.to_male } else { &mut table.to_female };
                    map.insert(from, replacement);
                }
            }
        }
        Ok(table)
    }

    fn direction(&self, target: Gender) -> &HashMap<String, Replacement> {
        match target {
            Gender::Male => &self.to_male,
            Gender::Female => &self.to_female,
        }
    }

    pub fn is_function_word(&self, word: &str) -> bool {
        self.function_words.contains(&word.to_lowercase())
    }

    /// Pronouns that must not survive a flip towards `target`.
    pub fn source_pronouns(&self, target: Gender) -> impl Iterator<Item = &str> {
        self.direction(target).keys().map(String::as_str)
    }
}

/// Record of one ambiguous pronoun resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguousChoice {
    pub offset: usize,
    pub source: String,
    pub chosen: String,
    pub next_token: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapSummary {
    pub name_replacements: usize,
    pub pronoun_replacements: usize,
    pub ambiguous: Vec<AmbiguousChoice>,
}

impl SwapSummary {
    pub fn merge(&mut self, other: SwapSummary) {
        self.name_replacements += other.name_replacements;
        self.pronoun_replacements += other.pronoun_replacements;
        self.ambiguous.extend(other.ambiguous);
    }

    pub fn is_unchanged(&self) -> bool {
        self.name_replacements == 0 && self.pronoun_replacements == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Swapped {
    pub text: String,
    pub summary: SwapSummary,
}

/// Alphanumeric runs with internal hyphens. Apostrophes split, so `Cole's`
/// yields `Cole` and `s`.
pub(crate) fn name_token_spans(text: &str) -> Vec<(usize, usize)> {
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
            } else if j + 1 < chars.len() && chars[j].1 == '-' && chars[j + 1].1.is_alphanumeric() {
                j += 2;
            } else {
                break;
            }
        }
        spans.push((start, chars.get(j).map_or(text.len(), |&(p, _)| p)));
        i = j;
    }
    spans
}

/// Replaces mentions of an old name across one or more texts. The first
/// mention becomes `First Last`; later ones become `First`.
#[derive(Debug, Clone)]
pub struct NameReplacer {
    old_tokens: HashSet<String>,
    new_first: String,
    new_last: String,
    mentioned: bool,
}

impl NameReplacer {
    pub fn new(old_names: &[String], new_first: &str, new_last: &str) -> Result<Self, PreprocessError> {
        let old_tokens: HashSet<String> = old_names
            .iter()
            .flat_map(|n| n.split_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect();
        if old_tokens.is_empty() {
            return Err(PreprocessError::NoOldNames);
        }
        Ok(NameReplacer {
            old_tokens,
            new_first: new_first.to_string(),
            new_last: new_last.to_string(),
            mentioned: false,
        })
    }

    pub fn replace(&mut self, text: &str) -> (String, usize) {
        let spans = name_token_spans(text);
        // group adjacent old-name tokens separated only by spaces into mentions
        let mut mentions: Vec<(usize, usize)> = Vec::new();
        for &(s, e) in &spans {
            if !self.old_tokens.contains(&text[s..e]) {
                continue;
            }
            match mentions.last_mut() {
                Some(last) if text[last.1..s].chars().all(|c| c == ' ') && !text[last.1..s].is_empty() => {
                    last.1 = e;
                }
                _ => mentions.push((s, e)),
            }
        }
        let mut out = String::with_capacity(text.len() + 16);
        let mut cursor = 0;
        for &(s, e) in &mentions {
            out.push_str(&text[cursor..s]);
            if self.mentioned {
                out.push_str(&self.new_first);
            } else {
                out.push_str(&self.new_first);
                out.push(' ');
                out.push_str(&self.new_last);
                self.mentioned = true;
            }
            cursor = e;
        }
        out.push_str(&text[cursor..]);
        (out, mentions.len())
    }
}

fn match_case(template: &str, word: &str) -> String {
    let mut letters = template.chars().filter(|c| c.is_alphabetic());
    let first_upper = letters.next().is_some_and(char::is_uppercase);
    let all_upper = first_upper && template.chars().count() > 1 && template.chars().all(|c| !c.is_lowercase());
    if all_upper {
        word.to_uppercase()
    } else if first_upper {
        let mut cs = word.chars();
        match cs.next() {
            Some(c) => c.to_uppercase().chain(cs).collect(),
            None => String::new(),
        }
    } else {
        word.to_string()
    }
}

/// Maps gendered pronouns in `text` towards `target`.
pub fn flip_pronouns(text: &str, target: Gender, table: &PronounTable) -> Swapped {
    let map = table.direction(target);
    let spans = name_token_spans(text);
    let mut out = String::with_capacity(text.len());
    let mut summary = SwapSummary::default();
    let mut cursor = 0;
    for (idx, &(s, e)) in spans.iter().enumerate() {
        let token = &text[s..e];
        let lower = token.to_lowercase();
        let Some(replacement) = map.get(&lower) else { continue };
        let chosen = match replacement {
            Replacement::Fixed(w) => w.clone(),
            Replacement::Ambiguous { determiner, standalone } => {
                let gap_end = text[e..].find(|c: char| !c.is_whitespace()).map(|o| e + o);
                // the next token only counts if nothing but whitespace separates it
                let next = match (gap_end, spans.get(idx + 1)) {
                    (Some(g), Some(&(ns, ne))) if g == ns => Some(text[ns..ne].to_lowercase()),
                    _ => None,
                };
                let pick = match &next {
                    Some(word) if !table.is_function_word(word) => determiner.clone(),
                    _ => standalone.clone(),
                };
                summary.ambiguous.push(AmbiguousChoice {
                    offset: s,
                    source: token.to_string(),
                    chosen: pick.clone(),
                    next_token: next,
                });
                pick
            }
        };
        out.push_str(&text[cursor..s]);
        out.push_str(&match_case(token, &chosen));
        cursor = e;
        summary.pronoun_replacements += 1;
    }
    out.push_str(&text[cursor..]);
    Swapped { text: out, summary }
}

/// Replaces every whole-word mention of `old_names` with the new name and flips
/// pronouns towards `target`.
pub fn swap_gender(
    text: &str,
    target: Gender,
    new_first: &str,
    new_last: &str,
    old_names: &[String],
    table: &PronounTable,
) -> Result<Swapped, PreprocessError> {
    let mut names = NameReplacer::new(old_names, new_first, new_last)?;
    let (renamed, count) = names.replace(text);
    let mut flipped = flip_pronouns(&renamed, target, table);
    flipped.summary.name_replacements = count;
    Ok(flipped)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap(text: &str, target: Gender) -> String {
        swap_gender(text, target, "Noah", "Park", &["Ava".into(), "Cole".into()], &PronounTable::bundled())
            .unwrap()
            .text
    }

    #[test]
    fn possessive_her_becomes_his() {
        assert_eq!(swap("She thanked her team.", Gender::Male), "He thanked his team.");
    }

    #[test]
    fn object_her_becomes_him() {
        assert_eq!(swap("I saw her.", Gender::Male), "I saw him.");
        assert_eq!(swap("We gave her the award.", Gender::Male), "We gave him the award.");
    }

    #[test]
    fn to_female_direction() {
        assert_eq!(swap("He said his book was his.", Gender::Female), "She said her book was hers.");
        assert_eq!(swap("HE met him himself", Gender::Female), "SHE met her herself");
    }

    #[test]
    fn no_names_no_pronouns_is_fixpoint() {
        let text = "The ensemble toured Europe in 1998.";
        let out = swap_gender(text, Gender::Male, "Noah", "Park", &["Ava".into()], &PronounTable::bundled()).unwrap();
        assert_eq!(out.text, text);
        assert!(out.summary.is_unchanged());
    }

    #[test]
    fn names_use_first_last_then_first() {
        let out = swap("Ava Cole is a chef. Cole's menu is famous. Ava cooks.", Gender::Female);
        assert_eq!(out, "Noah Park is a chef. Noah's menu is famous. Noah cooks.");
    }

    #[test]
    fn names_are_whole_word_and_case_sensitive() {
        let out = swap("Avalon and ava are not Ava.", Gender::Female);
        assert_eq!(out, "Avalon and ava are not Noah Park.");
    }

    #[test]
    fn empty_old_names_rejected() {
        let t = PronounTable::bundled();
        assert!(matches!(swap_gender("x", Gender::Male, "a", "b", &[], &t), Err(PreprocessError::NoOldNames)));
    }

    #[test]
    fn ambiguous_choices_are_logged() {
        let out = swap_gender("She thanked her team.", Gender::Male, "N", "P", &["Ava".into()], &PronounTable::bundled())
            .unwrap();
        assert_eq!(out.summary.pronoun_replacements, 2);
        assert_eq!(out.summary.ambiguous.len(), 1);
        assert_eq!(out.summary.ambiguous[0].chosen, "his");
        assert_eq!(out.summary.ambiguous[0].next_token.as_deref(), Some("team"));
    }

    #[test]
    fn round_trip_restores_pronouns() {
        let t = PronounTable::bundled();
        let original = "She thanked her team. The prize is hers. I saw her, and she smiled at herself.";
        let male = flip_pronouns(original, Gender::Male, &t).text;
        let back = flip_pronouns(&male, Gender::Female, &t).text;
        assert_eq!(back, original);
    }

    #[test]
    fn custom_table_parses() {
        let t = PronounTable::parse("[to_male]\nshe -> he\n[to_female]\nhe -> she\n[function_words]\nthe\n").unwrap();
        assert_eq!(flip_pronouns("she", Gender::Male, &t).text, "he");
        assert!(PronounTable::parse("she -> he").is_err());
        assert!(PronounTable::parse("[bogus]").is_err());
    }
}
