//! End-to-end audit: filter, segment, score, analyse, report.
//!
//! One TOML file drives every stage. Relative paths in it are resolved
//! against the file's directory. Every stage writes its intermediate records
//! to the output directory as it completes, so a failed run keeps what it had.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{load_corpus, Document, Gender, GenderedCorpora};
use crate::hallucination::{
    detect_all, hallucination_bias_report, hallucination_style_samples, HallucinationError, HallucinationRecord,
    HallucinationSamples, TestMode,
};
use crate::lexical::{
    category_odds_ratio, count_words, salient_words, weat_effect_size, EmbeddingTable, LexicalError, Lexicon,
    PosFilter, PretaggedTagger, ScorerTagger, Tagger, WeatWordLists, WordCounts, DEFAULT_MIN_COUNT,
};
use crate::preprocess::{filter_generation, SuccessRate, Verdict};
use crate::report::{
    emit_report, AuditReport, CorpusSection, FilterSection, HallucinationSection, LexicalSection, ReportFormat,
    SalientSection, WeatEntry, SCHEMA_VERSION,
};
use crate::scoring::{ClientConfig, Scorer, ScorerSpec, ScoringClient};
use crate::style::{classify_sentences, style_bias_report, style_fraction, Aspect, StyleError, StyleScore, StyleScores};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Config,
    Load,
    Filter,
    Segmentation,
    Scoring,
    Lexical,
    Style,
    Hallucination,
    Report,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("stage serializes");
        f.write_str(s.as_str().expect("unit variant"))
    }
}

/// Broad cause of a failed run; the CLI maps it to an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    Validation,
    Scorer,
    Io,
}

#[derive(Debug, Error)]
#[error("{stage} stage failed{}: {message}", doc_id.as_ref().map(|d| format!(" on document {d}")).unwrap_or_default())]
pub struct AuditError {
    pub stage: Stage,
    pub kind: FailureKind,
    pub doc_id: Option<String>,
    pub message: String,
}

impl AuditError {
    fn new(stage: Stage, kind: FailureKind, message: impl fmt::Display) -> Self {
        AuditError { stage, kind, doc_id: None, message: message.to_string() }
    }

    fn on_doc(mut self, doc_id: impl Into<String>) -> Self {
        self.doc_id = Some(doc_id.into());
        self
    }

    /// 1 for invalid input or configuration, 2 for scorer failures.
    pub fn exit_code(&self) -> i32 {
        match self.kind {
            FailureKind::Scorer => 2,
            FailureKind::Validation | FailureKind::Io => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScorerConfig {
    /// `mock` or the base URL of a scoring service.
    pub backend: String,
    pub timeout_ms: u64,
    /// Environment variable holding a bearer token, if the service wants one.
    pub token_env: Option<String>,
    #[serde(flatten)]
    pub client: ClientConfig,
}

impl Default for ScorerConfig {
    fn default() -> Self {
        ScorerConfig { backend: "mock".into(), timeout_ms: 30_000, token_env: None, client: ClientConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterConfig {
    pub enabled: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig { enabled: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LexicalConfig {
    pub enabled: bool,
    pub pos: Vec<PosFilter>,
    pub top_k: usize,
    pub min_count: u64,
    /// Lexicon file; the bundled nine categories when absent.
    pub lexicon: Option<PathBuf>,
    /// Pre-tagged tokens; tagging goes through the scorer when absent.
    pub tags: Option<PathBuf>,
    /// Word vectors for WEAT; WEAT is skipped when absent.
    pub embeddings: Option<PathBuf>,
    /// Restrict WEAT targets to salient words that match a lexicon category.
    pub weat_lexicon_only: bool,
}

impl Default for LexicalConfig {
    fn default() -> Self {
        LexicalConfig {
            enabled: true,
            pos: vec![PosFilter::Adjective, PosFilter::Noun],
            top_k: 10,
            min_count: DEFAULT_MIN_COUNT,
            lexicon: None,
            tags: None,
            embeddings: None,
            weat_lexicon_only: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StyleConfig {
    pub enabled: bool,
}

impl Default for StyleConfig {
    fn default() -> Self {
        StyleConfig { enabled: true }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HallucinationConfig {
    pub enabled: bool,
    pub mode: TestMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    pub corpus: PathBuf,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    #[serde(default)]
    pub scorer: ScorerConfig,
    #[serde(default)]
    pub filter: FilterConfig,
    #[serde(default)]
    pub lexical: LexicalConfig,
    #[serde(default)]
    pub style: StyleConfig,
    #[serde(default)]
    pub hallucination: HallucinationConfig,
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("audit-out")
}

impl AuditConfig {
    /// A configuration with every default and the given corpus.
    pub fn for_corpus(corpus: impl Into<PathBuf>) -> Self {
        AuditConfig {
            corpus: corpus.into(),
            name: None,
            seed: 0,
            out_dir: default_out_dir(),
            scorer: ScorerConfig::default(),
            filter: FilterConfig::default(),
            lexical: LexicalConfig::default(),
            style: StyleConfig::default(),
            hallucination: HallucinationConfig::default(),
        }
    }

    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, AuditError> {
        let mut cfg: AuditConfig =
            toml::from_str(text).map_err(|e| AuditError::new(Stage::Config, FailureKind::Validation, e))?;
        cfg.resolve_paths(base_dir);
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, AuditError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| AuditError::new(Stage::Config, FailureKind::Validation, format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        Self::parse(&text, base)
    }

    fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.corpus);
        fix(&mut self.out_dir);
        for p in [&mut self.lexical.lexicon, &mut self.lexical.tags, &mut self.lexical.embeddings].into_iter().flatten()
        {
            fix(p);
        }
    }

    pub fn scorer_spec(&self) -> Result<ScorerSpec, AuditError> {
        self.scorer.backend.parse().map_err(|e| AuditError::new(Stage::Config, FailureKind::Validation, e))
    }

    fn build_scorer(&self) -> Result<Arc<dyn Scorer>, AuditError> {
        let token = self.scorer.token_env.as_ref().and_then(|v| std::env::var(v).ok());
        Ok(self.scorer_spec()?.build(Duration::from_millis(self.scorer.timeout_ms), token))
    }
}

/// What a finished run produced.
#[derive(Debug, Clone)]
pub struct AuditOutcome {
    pub report: AuditReport,
    pub out_dir: PathBuf,
}

/// Names of the files written to the output directory.
pub mod artifacts {
    pub const FILTER: &str = "filter.jsonl";
    pub const SENTENCES: &str = "sentences.jsonl";
    pub const LABELS: &str = "labels.jsonl";
    pub const WORD_COUNTS: &str = "word_counts.jsonl";
    pub const STYLE_SCORES: &str = "style_scores.jsonl";
    pub const HALLUCINATIONS: &str = "hallucinations.jsonl";
    pub const HALLUCINATION_SAMPLES: &str = "hallucination_samples.jsonl";
    pub const REPORT_JSON: &str = "report.json";
    pub const REPORT_MARKDOWN: &str = "report.md";
}

fn write_jsonl<T: Serialize>(dir: &Path, name: &str, stage: Stage, rows: impl IntoIterator<Item = T>) -> Result<(), AuditError> {
    let path = dir.join(name);
    let io = |e: std::io::Error| AuditError::new(stage, FailureKind::Io, format!("{}: {e}", path.display()));
    let mut w = BufWriter::new(File::create(&path).map_err(io)?);
    for row in rows {
        serde_json::to_writer(&mut w, &row).map_err(|e| io(e.into()))?;
        w.write_all(b"\n").map_err(io)?;
    }
    w.flush().map_err(io)
}

#[derive(Serialize)]
struct FilterRow<'a> {
    id: &'a str,
    gender: Gender,
    #[serde(flatten)]
    verdict: Verdict,
}

#[derive(Serialize)]
struct LabelRow<'a> {
    doc_id: &'a str,
    aspect: Aspect,
    labels: &'a [bool],
}

/// Runs the audit with the scorer named in the configuration.
pub fn run_audit(config: &AuditConfig) -> Result<AuditOutcome, AuditError> {
    let scorer = config.build_scorer()?;
    run_audit_with(config, scorer)
}

/// Runs the audit against an explicit scorer backend.
pub fn run_audit_with(config: &AuditConfig, scorer: Arc<dyn Scorer>) -> Result<AuditOutcome, AuditError> {
    let out = config.out_dir.clone();
    let scorer_label = config.scorer.backend.clone();
    let corpora = load_corpus(&config.corpus).map_err(|e| AuditError::new(Stage::Load, FailureKind::Validation, e))?;
    if config.hallucination.enabled {
        if let Some(doc) = corpora.iter().find(|d| d.context.is_none()) {
            return Err(AuditError::new(
                Stage::Config,
                FailureKind::Validation,
                "hallucination analysis is enabled but the corpus has documents without context",
            )
            .on_doc(&doc.id));
        }
    }
    fs::create_dir_all(&out)
        .map_err(|e| AuditError::new(Stage::Config, FailureKind::Io, format!("{}: {e}", out.display())))?;

    // Filter.
    let verdicts: Vec<(&Document, Verdict)> = corpora.iter().map(|d| (d, filter_generation(&d.text))).collect();
    write_jsonl(
        &out,
        artifacts::FILTER,
        Stage::Filter,
        verdicts.iter().map(|(d, v)| FilterRow { id: &d.id, gender: d.gender, verdict: *v }),
    )?;
    let rate = SuccessRate::from_verdicts(verdicts.iter().map(|(_, v)| v));
    let mut failures = BTreeMap::new();
    for (_, v) in &verdicts {
        if let Verdict::Fail(reason) = v {
            let key = serde_json::to_value(reason).expect("reason serializes");
            *failures.entry(key.as_str().unwrap_or_default().to_string()).or_insert(0) += 1;
        }
    }
    let kept = if config.filter.enabled {
        let passed: std::collections::HashSet<&str> =
            verdicts.iter().filter(|(_, v)| v.passed()).map(|(d, _)| d.id.as_str()).collect();
        corpora.retain(|d| passed.contains(d.id.as_str()))
    } else {
        corpora.clone()
    };

    // Segmentation.
    let docs: Vec<&Document> = kept.iter().collect();
    let sentences: Vec<Vec<String>> = docs.iter().map(|d| d.sentences().into_iter().map(|s| s.text).collect()).collect();
    write_jsonl(&out, artifacts::SENTENCES, Stage::Segmentation, docs.iter().flat_map(|d| d.sentences()))?;

    // Scoring.
    let client = ScoringClient::new(scorer, config.scorer.client.clone());
    let health = client.health();
    let models = match &health {
        crate::scoring::Health::Ok { models } => models.clone(),
        crate::scoring::Health::Unavailable { reason } => {
            return Err(AuditError::new(Stage::Scoring, FailureKind::Scorer, format!("scorer unavailable: {reason}")))
        }
    };
    let scoring_err = |e: crate::scoring::ScoringError| AuditError::new(Stage::Scoring, FailureKind::Scorer, e);
    let mut labels: BTreeMap<Aspect, BTreeMap<String, Vec<bool>>> = BTreeMap::new();
    if config.style.enabled || config.hallucination.enabled {
        let flat: Vec<String> = sentences.iter().flatten().cloned().collect();
        for aspect in Aspect::ALL {
            let all = classify_sentences(&client, aspect, &flat).map_err(scoring_err)?;
            let mut it = all.into_iter();
            let per_doc = docs
                .iter()
                .zip(&sentences)
                .map(|(d, s)| (d.id.clone(), it.by_ref().take(s.len()).collect::<Vec<bool>>()))
                .collect::<BTreeMap<_, _>>();
            labels.insert(aspect, per_doc);
        }
        write_jsonl(
            &out,
            artifacts::LABELS,
            Stage::Scoring,
            Aspect::ALL.iter().flat_map(|&aspect| {
                let per_doc = &labels[&aspect];
                docs.iter().map(move |d| LabelRow { doc_id: &d.id, aspect, labels: &per_doc[&d.id] })
            }),
        )?;
    }
    let records: BTreeMap<String, HallucinationRecord> = if config.hallucination.enabled {
        let recs = detect_all(&docs, &client).map_err(|e| hallucination_err(e, Stage::Scoring))?;
        write_jsonl(&out, artifacts::HALLUCINATIONS, Stage::Scoring, &recs)?;
        recs.into_iter().map(|r| (r.doc_id.clone(), r)).collect()
    } else {
        BTreeMap::new()
    };

    // Lexical.
    let lexical = if config.lexical.enabled { Some(lexical_section(config, &kept, &client, &out)?) } else { None };

    // Style.
    let style = if config.style.enabled {
        let mut scores: StyleScores<f64> = BTreeMap::new();
        for aspect in Aspect::ALL {
            let per_doc = docs
                .iter()
                .zip(&sentences)
                .map(|(d, s)| style_fraction(&d.id, aspect, &labels[&aspect][&d.id], s.len()))
                .collect::<Result<Vec<StyleScore<f64>>, _>>()
                .map_err(style_err)?;
            scores.insert(aspect, per_doc);
        }
        write_jsonl(&out, artifacts::STYLE_SCORES, Stage::Style, scores.values().flatten())?;
        Some(style_bias_report(&kept, &scores).map_err(style_err)?)
    } else {
        None
    };

    // Hallucination.
    let hallucination = if config.hallucination.enabled {
        let samples = Aspect::ALL
            .iter()
            .map(|&aspect| hallucination_style_samples(&kept, &records, aspect, &labels[&aspect]))
            .collect::<Result<Vec<HallucinationSamples<f64>>, _>>()
            .map_err(|e| hallucination_err(e, Stage::Hallucination))?;
        write_jsonl(&out, artifacts::HALLUCINATION_SAMPLES, Stage::Hallucination, &samples)?;
        Some(HallucinationSection {
            mode: config.hallucination.mode,
            total_sentences: records.values().map(|r| r.n_sentences).sum(),
            flagged_sentences: records.values().map(|r| r.flagged.len()).sum(),
            rows: hallucination_bias_report(&samples, config.hallucination.mode),
        })
    } else {
        None
    };

    let counts = corpora.counts();
    let analysed = kept.counts();
    let report = AuditReport {
        schema_version: SCHEMA_VERSION,
        corpus: CorpusSection {
            name: config.name.clone().unwrap_or_else(|| corpora.name.clone()),
            male_docs: counts.male,
            female_docs: counts.female,
            analysed_male: analysed.male,
            analysed_female: analysed.female,
            seed: config.seed,
            scorer: scorer_label,
            models,
        },
        filter: FilterSection::from_rate(rate, failures),
        lexical,
        style,
        hallucination,
    };
    for (name, format) in [(artifacts::REPORT_JSON, ReportFormat::Json), (artifacts::REPORT_MARKDOWN, ReportFormat::Markdown)] {
        let path = out.join(name);
        emit_report(&report, format, &path)
            .map_err(|e| AuditError::new(Stage::Report, FailureKind::Io, format!("{}: {e}", path.display())))?;
    }
    Ok(AuditOutcome { report, out_dir: out })
}

fn style_err(e: StyleError) -> AuditError {
    let doc = match &e {
        StyleError::NoSentences { doc_id } | StyleError::LabelMismatch { doc_id, .. } | StyleError::MissingScore { doc_id, .. } => {
            Some(doc_id.clone())
        }
        _ => None,
    };
    let kind = if matches!(e, StyleError::Scoring(_)) { FailureKind::Scorer } else { FailureKind::Validation };
    let err = AuditError::new(Stage::Style, kind, &e);
    match doc {
        Some(d) => err.on_doc(d),
        None => err,
    }
}

fn hallucination_err(e: HallucinationError, stage: Stage) -> AuditError {
    let (kind, doc) = match &e {
        HallucinationError::Scoring { doc_id, .. } => (FailureKind::Scorer, doc_id.clone()),
        HallucinationError::MissingContext { doc_id }
        | HallucinationError::NoSentences { doc_id }
        | HallucinationError::MissingInput { doc_id, .. }
        | HallucinationError::LabelMismatch { doc_id, .. } => (FailureKind::Validation, doc_id.clone()),
    };
    let err = AuditError::new(stage, kind, &e);
    if doc.is_empty() {
        err
    } else {
        err.on_doc(doc)
    }
}

#[derive(Serialize)]
struct CountsRow<'a> {
    #[serde(flatten)]
    counts: &'a WordCounts,
}

fn lexical_section(
    config: &AuditConfig,
    corpora: &GenderedCorpora,
    client: &ScoringClient,
    out: &Path,
) -> Result<LexicalSection, AuditError> {
    let lc = &config.lexical;
    let invalid = |e: LexicalError| AuditError::new(Stage::Lexical, FailureKind::Validation, e);
    let lexicon = match &lc.lexicon {
        Some(p) => Lexicon::load(p).map_err(invalid)?,
        None => Lexicon::bundled(),
    };
    let embeddings = lc.embeddings.as_ref().map(EmbeddingTable::<f64>::load).transpose().map_err(invalid)?;
    let pretagged = lc.tags.as_ref().map(PretaggedTagger::load).transpose().map_err(invalid)?;
    let scorer_tagger = ScorerTagger::new(client);
    let (tagger, tag_failure): (&dyn Tagger, FailureKind) = match &pretagged {
        Some(t) => (t, FailureKind::Validation),
        None => (&scorer_tagger, FailureKind::Scorer),
    };
    let count = |pos: PosFilter, g: Gender| {
        count_words(corpora.docs(g), g, pos, tagger).map_err(|e| {
            let kind = if matches!(e, LexicalError::Tagging { .. }) { tag_failure } else { FailureKind::Validation };
            let doc = match &e {
                LexicalError::Tagging { doc_id, .. } => Some(doc_id.clone()),
                _ => None,
            };
            let err = AuditError::new(Stage::Lexical, kind, &e);
            match doc {
                Some(d) => err.on_doc(d),
                None => err,
            }
        })
    };

    let mut tables = Vec::new();
    let mut salient = Vec::new();
    let lists = WeatWordLists::bundled();
    for &pos in &lc.pos {
        let (m, f) = (count(pos, Gender::Male)?, count(pos, Gender::Female)?);
        let words = salient_words::<f64>(&m, &f, lc.top_k, lc.min_count).map_err(invalid)?;
        let targets = |rows: &[crate::lexical::OddsRatioResult<f64>]| -> Vec<String> {
            rows.iter()
                .map(|r| r.key.clone())
                .filter(|w| !lc.weat_lexicon_only || lexicon.matches_any(w))
                .collect()
        };
        let (x, y) = (targets(&words.top_male), targets(&words.top_female));
        let weat = |a: &[String], b: &[String]| match &embeddings {
            None => WeatEntry { effect_size: None, skipped: Default::default(), note: Some("no embedding table configured".into()) },
            Some(emb) => match weat_effect_size(&x, &y, a, b, emb) {
                Ok(r) => WeatEntry { effect_size: Some(r.effect_size), skipped: r.skipped, note: None },
                Err(e) => WeatEntry { effect_size: None, skipped: Default::default(), note: Some(e.to_string()) },
            },
        };
        salient.push(SalientSection {
            pos,
            weat_mf: weat(&lists.male_names, &lists.female_names),
            weat_cf: weat(&lists.career_words, &lists.family_words),
            words,
        });
        tables.push(m);
        tables.push(f);
    }

    let (m_all, f_all) = match tables.iter().position(|t| t.pos == PosFilter::AllTokens) {
        Some(i) => (tables[i].clone(), tables[i + 1].clone()),
        None => (count(PosFilter::AllTokens, Gender::Male)?, count(PosFilter::AllTokens, Gender::Female)?),
    };
    let mut categories = Vec::new();
    let mut unmatched_categories = Vec::new();
    for cat in &lexicon.categories {
        match category_odds_ratio::<f64>(cat, &m_all, &f_all) {
            Ok(r) => categories.push(r),
            Err(LexicalError::Absent(_)) => unmatched_categories.push(cat.name.clone()),
            Err(e) => return Err(invalid(e)),
        }
    }
    if !lc.pos.contains(&PosFilter::AllTokens) {
        tables.push(m_all);
        tables.push(f_all);
    }
    write_jsonl(out, artifacts::WORD_COUNTS, Stage::Lexical, tables.iter().map(|counts| CountsRow { counts }))?;
    Ok(LexicalSection { min_count: lc.min_count, top_k: lc.top_k, salient, categories, unmatched_categories })
}
