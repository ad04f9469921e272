//! Counterfactual context construction, prompt builders and generation filtering.
//!
//! The biography pipeline pools first names by gender and last names across
//! all biographies, samples a fixed number of paragraphs per biography, and
//! writes one male and one female version of each with fresh names and, where
//! the gender changes, flipped pronouns.

mod filter;
mod prompts;
mod swap;

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Gender;

pub use filter::{filter_generation, FailReason, SuccessRate, Verdict, CHAR_RUN_LIMIT, TOKEN_RUN_LIMIT};
pub use prompts::{
    build_cbg_prompt, build_clg_prompts, PromptDescriptor, CLG_AGES, CLG_NAMES, CLG_OCCUPATIONS,
};
pub use swap::{
    flip_pronouns, swap_gender, AmbiguousChoice, NameReplacer, PronounTable, Replacement, SwapSummary, Swapped,
};

#[derive(Debug, Error)]
pub enum PreprocessError {
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: malformed biography record: {message}")]
    Malformed { line: usize, message: String },
    #[error("biography {source_id:?}: {reason}")]
    InvalidBiography { source_id: String, reason: String },
    #[error("name bank has no {0} first names")]
    EmptyFirstNames(Gender),
    #[error("name bank has no last names")]
    EmptyLastNames,
    #[error("no old names supplied for replacement")]
    NoOldNames,
    #[error("pronoun table line {line}: {message}")]
    PronounTable { line: usize, message: String },
    #[error("recommender occupation is empty")]
    EmptyOccupation,
    #[error("invalid prompt descriptor: {0}")]
    InvalidDescriptor(String),
}

/// A source biography: one person, a few paragraphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Biography {
    pub source_id: String,
    #[serde(rename = "gender")]
    pub person_gender: Gender,
    pub first_name: String,
    pub last_name: String,
    pub paragraphs: Vec<String>,
    #[serde(default)]
    pub occupation: String,
}

impl Biography {
    pub fn full_name(&self) -> String {
        if self.last_name.is_empty() {
            self.first_name.clone()
        } else {
            format!("{} {}", self.first_name, self.last_name)
        }
    }

    pub fn validate(&self) -> Result<(), PreprocessError> {
        let invalid = |reason: &str| PreprocessError::InvalidBiography {
            source_id: self.source_id.clone(),
            reason: reason.to_string(),
        };
        if self.paragraphs.is_empty() || self.paragraphs.iter().all(|p| p.trim().is_empty()) {
            return Err(invalid("no paragraphs"));
        }
        if self.first_name.trim().is_empty() {
            return Err(invalid("empty first name"));
        }
        let mentioned = self.paragraphs.iter().any(|p| {
            swap::name_token_spans(p).iter().any(|&(s, e)| p[s..e] == *self.first_name)
        });
        if !mentioned {
            return Err(invalid("first name does not occur in any paragraph"));
        }
        Ok(())
    }

    fn old_names(&self) -> Vec<String> {
        let mut names = vec![self.first_name.clone()];
        if !self.last_name.trim().is_empty() {
            names.push(self.last_name.clone());
        }
        names
    }
}

pub fn read_biographies<R: BufRead>(reader: R) -> Result<Vec<Biography>, PreprocessError> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| PreprocessError::Io { path: "<reader>".into(), source: e })?;
        if line.trim().is_empty() {
            continue;
        }
        let bio: Biography = serde_json::from_str(&line)
            .map_err(|e| PreprocessError::Malformed { line: idx + 1, message: e.to_string() })?;
        bio.validate()?;
        out.push(bio);
    }
    Ok(out)
}

pub fn load_biographies(path: impl AsRef<Path>) -> Result<Vec<Biography>, PreprocessError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| PreprocessError::Io { path: path.display().to_string(), source: e })?;
    read_biographies(BufReader::new(file))
}

pub fn write_biographies<W: Write>(bios: &[Biography], mut writer: W) -> std::io::Result<()> {
    for bio in bios {
        serde_json::to_writer(&mut writer, bio)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

/// First names bucketed by the ground-truth gender of their biography, and a
/// gender-agnostic pool of last names. Lists are sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameBank {
    pub male_first: Vec<String>,
    pub female_first: Vec<String>,
    pub last: Vec<String>,
    pub rng_seed: u64,
}

impl NameBank {
    pub fn first_names(&self, gender: Gender) -> &[String] {
        match gender {
            Gender::Male => &self.male_first,
            Gender::Female => &self.female_first,
        }
    }

    pub fn validate(&self) -> Result<(), PreprocessError> {
        for gender in Gender::BOTH {
            if self.first_names(gender).is_empty() {
                return Err(PreprocessError::EmptyFirstNames(gender));
            }
        }
        if self.last.is_empty() {
            return Err(PreprocessError::EmptyLastNames);
        }
        Ok(())
    }
}

pub fn build_name_bank(bios: &[Biography], seed: u64) -> Result<NameBank, PreprocessError> {
    let mut male = BTreeSet::new();
    let mut female = BTreeSet::new();
    let mut last = BTreeSet::new();
    for bio in bios {
        let first = bio.first_name.trim();
        if !first.is_empty() {
            match bio.person_gender {
                Gender::Male => male.insert(first.to_string()),
                Gender::Female => female.insert(first.to_string()),
            };
        }
        let surname = bio.last_name.trim();
        if !surname.is_empty() {
            last.insert(surname.to_string());
        }
    }
    let bank = NameBank {
        male_first: male.into_iter().collect(),
        female_first: female.into_iter().collect(),
        last: last.into_iter().collect(),
        rng_seed: seed,
    };
    bank.validate()?;
    Ok(bank)
}

/// Keeps `min(k, available)` paragraphs chosen uniformly at random, in their
/// original order. `k = 0` is treated as 1.
pub fn sample_paragraphs(bio: &Biography, k: usize, seed: u64) -> Biography {
    let n = bio.paragraphs.len();
    let k = k.max(1).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample(&mut rng, n, k).into_vec();
    picked.sort_unstable();
    Biography {
        paragraphs: picked.into_iter().map(|i| bio.paragraphs[i].clone()).collect(),
        ..bio.clone()
    }
}

/// Mixes a run seed with an item index (SplitMix64 finaliser).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn pick_name<'a>(rng: &mut ChaCha8Rng, pool: &'a [String], avoid: &[String]) -> &'a str {
    let fresh: Vec<&String> = pool.iter().filter(|n| !avoid.contains(n)).collect();
    match fresh.choose(rng) {
        Some(name) => name,
        None => pool.choose(rng).expect("validated non-empty pool"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterfactualPair {
    pub male: Biography,
    pub female: Biography,
    pub male_summary: SwapSummary,
    pub female_summary: SwapSummary,
}

/// Builds the male and female version of `bio`. Pronouns are flipped only in
/// the version whose gender differs from the source person.
pub fn make_counterfactual_pair(
    bio: &Biography,
    bank: &NameBank,
    seed: u64,
    table: &PronounTable,
) -> Result<CounterfactualPair, PreprocessError> {
    bank.validate()?;
    let old = bio.old_names();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut build = |target: Gender| -> Result<(Biography, SwapSummary), PreprocessError> {
        let first = pick_name(&mut rng, bank.first_names(target), &old).to_string();
        let last = pick_name(&mut rng, &bank.last, &old).to_string();
        let mut names = NameReplacer::new(&old, &first, &last)?;
        let mut summary = SwapSummary::default();
        let mut paragraphs = Vec::with_capacity(bio.paragraphs.len());
        for p in &bio.paragraphs {
            let (renamed, count) = names.replace(p);
            summary.name_replacements += count;
            if target != bio.person_gender {
                let flipped = flip_pronouns(&renamed, target, table);
                summary.merge(flipped.summary);
                paragraphs.push(flipped.text);
            } else {
                paragraphs.push(renamed);
            }
        }
        let out = Biography {
            source_id: bio.source_id.clone(),
            person_gender: target,
            first_name: first,
            last_name: last,
            paragraphs,
            occupation: bio.occupation.clone(),
        };
        Ok((out, summary))
    };
    let (male, male_summary) = build(Gender::Male)?;
    let (female, female_summary) = build(Gender::Female)?;
    Ok(CounterfactualPair { male, female, male_summary, female_summary })
}

/// Output of the full counterfactual pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterfactualDataset {
    pub seed: u64,
    pub paragraphs_per_bio: usize,
    pub bank: NameBank,
    /// Male and female version of each source, interleaved in source order.
    pub biographies: Vec<Biography>,
    pub summaries: Vec<(String, SwapSummary, SwapSummary)>,
}

impl CounterfactualDataset {
    pub fn count(&self, gender: Gender) -> usize {
        self.biographies.iter().filter(|b| b.person_gender == gender).count()
    }
}

/// Name bank → paragraph sampling → counterfactual pair, for every biography.
pub fn build_counterfactual_dataset(
    bios: &[Biography],
    paragraphs_per_bio: usize,
    seed: u64,
    table: &PronounTable,
) -> Result<CounterfactualDataset, PreprocessError> {
    let bank = build_name_bank(bios, seed)?;
    let mut biographies = Vec::with_capacity(bios.len() * 2);
    let mut summaries = Vec::with_capacity(bios.len());
    for (i, bio) in bios.iter().enumerate() {
        let item_seed = derive_seed(seed, i as u64);
        let sampled = sample_paragraphs(bio, paragraphs_per_bio, item_seed);
        let pair = make_counterfactual_pair(&sampled, &bank, derive_seed(item_seed, 1), table)?;
        summaries.push((bio.source_id.clone(), pair.male_summary, pair.female_summary));
        biographies.push(pair.male);
        biographies.push(pair.female);
    }
    Ok(CounterfactualDataset { seed, paragraphs_per_bio, bank, biographies, summaries })
}
