#![allow(dead_code)]

pub mod oracle;

use letterbias::corpus::{Document, Gender};
use letterbias::lexical::{PosFilter, WordCounts};
use letterbias::preprocess::Biography;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Raw token streams for one randomly drawn pair of tiny corpora.
pub struct MicroCorpus {
    pub male_tokens: Vec<String>,
    pub female_tokens: Vec<String>,
}

impl MicroCorpus {
    pub fn counts(&self) -> (WordCounts, WordCounts) {
        (
            WordCounts::from_words(Gender::Male, PosFilter::AllTokens, &self.male_tokens),
            WordCounts::from_words(Gender::Female, PosFilter::AllTokens, &self.female_tokens),
        )
    }

    pub fn vocabulary(&self) -> Vec<String> {
        let mut v: Vec<String> = self.male_tokens.iter().chain(&self.female_tokens).cloned().collect();
        v.sort();
        v.dedup();
        v
    }
}

const STEMS: [&str; 10] = ["kind", "warm", "lead", "brillian", "help", "assert", "confiden", "care", "smart", "gentl"];
const SUFFIXES: [&str; 5] = ["", "ly", "ness", "er", "est"];

/// Draws a pair of corpora over at most `max_words` distinct words.
pub fn micro_corpus(seed: u64, max_words: usize) -> MicroCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_words = rng.gen_range(2..=max_words);
    let vocab: Vec<String> = (0..n_words)
        .map(|i| format!("{}{}", STEMS[i % STEMS.len()], SUFFIXES[(i / STEMS.len()) % SUFFIXES.len()]))
        .collect();
    let draw = |rng: &mut ChaCha8Rng| -> Vec<String> {
        let len = rng.gen_range(1..=120);
        (0..len).map(|_| vocab[rng.gen_range(0..vocab.len())].clone()).collect()
    };
    let male_tokens = draw(&mut rng);
    let female_tokens = draw(&mut rng);
    MicroCorpus { male_tokens, female_tokens }
}

/// Odds ratio recounted from raw tokens, computed directly as a ratio of odds.
/// `None` for 0/0, `Some(inf)` for an infinite ratio.
pub fn brute_force_or(matches: impl Fn(&str) -> bool, male: &[String], female: &[String]) -> Option<f64> {
    let e_m = male.iter().filter(|t| matches(t)).count() as f64;
    let e_f = female.iter().filter(|t| matches(t)).count() as f64;
    let rest_m = male.len() as f64 - e_m;
    let rest_f = female.len() as f64 - e_f;
    let num = e_m * rest_f;
    let den = rest_m * e_f;
    if num == 0.0 && den == 0.0 {
        None
    } else if den == 0.0 {
        Some(f64::INFINITY)
    } else {
        Some((e_m / rest_m) / (e_f / rest_f))
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

const MALE_FIRST: [&str; 12] =
    ["Adam", "Bruno", "Carl", "Derek", "Elliot", "Felix", "Gavin", "Hugo", "Ivan", "Jonah", "Kurt", "Leon"];
const FEMALE_FIRST: [&str; 12] =
    ["Alma", "Bella", "Cora", "Daisy", "Edith", "Fiona", "Greta", "Hazel", "Irene", "Judith", "Kira", "Luna"];
const LAST: [&str; 16] = [
    "Abbott", "Barker", "Crane", "Dalton", "Ellis", "Fisher", "Garner", "Holt", "Ingram", "Jarvis", "Keane", "Lowe",
    "Marsh", "Nolan", "Osborne", "Pryce",
];
const CITIES: [&str; 5] = ["Oslo", "Porto", "Quito", "Riga", "Turin"];

/// Biographies with names and gendered pronouns in every paragraph.
pub fn biographies(n: usize) -> Vec<Biography> {
    (0..n)
        .map(|i| {
            let gender = if i % 2 == 0 { Gender::Female } else { Gender::Male };
            let (first, pools) = match gender {
                Gender::Male => (MALE_FIRST[i % MALE_FIRST.len()], ("he", "him", "his", "himself", "He", "His")),
                Gender::Female => (FEMALE_FIRST[i % FEMALE_FIRST.len()], ("she", "her", "her", "herself", "She", "Her")),
            };
            let last = LAST[(i / 2) % LAST.len()];
            let (p, obj, poss, refl, p_cap, poss_cap) = pools;
            let city = CITIES[i % CITIES.len()];
            let paragraphs = vec![
                format!("{first} {last} was born in {city}. {p_cap} studied painting at the academy."),
                format!("{poss_cap} career began when {p} joined a small gallery. Colleagues admired {poss} patience."),
                format!("{last} later opened a studio with {poss} brother, who taught {obj} printmaking."),
                format!("In 2010 {first} moved abroad; {p} describes {refl} as restless."),
                format!("Friends say {first} is generous. Many of them worked with {obj} for years."),
            ];
            Biography {
                source_id: format!("bio{i:04}"),
                person_gender: gender,
                first_name: first.into(),
                last_name: last.into(),
                paragraphs,
                occupation: "painter".into(),
            }
        })
        .collect()
}

/// A letter whose sentences alternate between context sentences and invented ones,
/// with the invented ones at the returned indices.
pub fn letter_with_hallucinations(id: &str, gender: Gender, seed: u64) -> (Document, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = if gender == Gender::Male { "Tom" } else { "Ada" };
    let facts: Vec<String> = (0..6).map(|k| format!("{name} completed project number {k} in {}.", 2000 + k)).collect();
    let context = facts.join(" ");
    let n = rng.gen_range(2..=7);
    let mut sentences = Vec::new();
    let mut invented = Vec::new();
    for j in 0..n {
        if rng.gen_bool(0.4) {
            invented.push(j);
            sentences.push(format!("{name} won award number {} in {}.", rng.gen_range(1..99), 1990 + j));
        } else {
            sentences.push(facts[rng.gen_range(0..facts.len())].clone());
        }
    }
    let doc = Document::new(id, gender, sentences.join(" ")).with_context(format!("src-{id}"), context);
    (doc, invented)
}
