//! Audit report model and its JSON / Markdown renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::hallucination::{Classification, HallucinationBiasResult, TestMode};
use crate::lexical::{OddsRatioResult, OovReport, PosFilter, SalientWords};
use crate::preprocess::SuccessRate;
use crate::scoring::Task;
use crate::stats::render_stars;
use crate::style::BiasTestResult;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Markdown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub corpus: CorpusSection,
    pub filter: FilterSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lexical: Option<LexicalSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub style: Option<Vec<BiasTestResult<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hallucination: Option<HallucinationSection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSection {
    pub name: String,
    pub male_docs: usize,
    pub female_docs: usize,
    /// Documents analysed after the generation filter.
    pub analysed_male: usize,
    pub analysed_female: usize,
    pub seed: u64,
    pub scorer: String,
    pub models: BTreeMap<Task, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterSection {
    pub passed: usize,
    pub total: usize,
    pub success_rate: f64,
    pub failures: BTreeMap<String, usize>,
}

impl FilterSection {
    pub fn from_rate(rate: SuccessRate, failures: BTreeMap<String, usize>) -> Self {
        FilterSection { passed: rate.passed, total: rate.total, success_rate: rate.fraction(), failures }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexicalSection {
    pub min_count: u64,
    pub top_k: usize,
    pub salient: Vec<SalientSection>,
    pub categories: Vec<OddsRatioResult<f64>>,
    /// Categories matching no token in either corpus.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unmatched_categories: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SalientSection {
    pub pos: PosFilter,
    pub words: SalientWords<f64>,
    pub weat_mf: WeatEntry,
    pub weat_cf: WeatEntry,
}

/// A WEAT score, or the reason none could be computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeatEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effect_size: Option<f64>,
    #[serde(default)]
    pub skipped: OovReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HallucinationSection {
    pub mode: TestMode,
    pub total_sentences: usize,
    pub flagged_sentences: usize,
    pub rows: Vec<HallucinationBiasResult<f64>>,
}

pub fn to_json(report: &AuditReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<AuditReport, serde_json::Error> {
    serde_json::from_str(text)
}

/// Writes the report to `path` in the given format.
pub fn emit_report(report: &AuditReport, format: ReportFormat, path: impl AsRef<std::path::Path>) -> std::io::Result<()> {
    std::fs::write(path, render(report, format))
}

pub fn render(report: &AuditReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(report),
        ReportFormat::Markdown => to_markdown(report),
    }
}

fn num(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else if v.is_nan() {
        "nan".into()
    } else if v != 0.0 && v.abs() < 1e-4 {
        format!("{v:.2e}")
    } else {
        format!("{v:.4}")
    }
}

/// p-value with its significance stars; one star is marked weak.
fn starred(p: f64, stars: u8) -> String {
    let weak = if stars == 1 { " (weak)" } else { "" };
    format!("{}{}{weak}", num(p), render_stars(stars))
}

fn word_list(rows: &[OddsRatioResult<f64>]) -> String {
    if rows.is_empty() {
        return "—".into();
    }
    rows.iter().map(|r| r.key.as_str()).collect::<Vec<_>>().join(", ")
}

fn weat_cell(w: &WeatEntry) -> String {
    match w.effect_size {
        Some(d) => num(d),
        None => "n/a".into(),
    }
}

pub fn to_markdown(r: &AuditReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "# Gender bias audit: {}\n", r.corpus.name);
    let c = &r.corpus;
    let _ = writeln!(w, "| | Male | Female |\n|---|---|---|");
    let _ = writeln!(w, "| Documents | {} | {} |", c.male_docs, c.female_docs);
    let _ = writeln!(w, "| Analysed | {} | {} |\n", c.analysed_male, c.analysed_female);
    let _ = writeln!(w, "Seed: {}. Scorer: {}.", c.seed, c.scorer);
    if !c.models.is_empty() {
        let models: Vec<String> = c.models.iter().map(|(t, m)| format!("{t}={m}")).collect();
        let _ = writeln!(w, "Models: {}.", models.join(", "));
    }

    let f = &r.filter;
    let _ = writeln!(w, "\n## Generation success rate\n");
    let _ = writeln!(w, "{}/{} passed ({:.2}%).", f.passed, f.total, 100.0 * f.success_rate);
    if !f.failures.is_empty() {
        let failures: Vec<String> = f.failures.iter().map(|(k, n)| format!("{k}: {n}")).collect();
        let _ = writeln!(w, "Failures: {}.", failures.join(", "));
    }

    if let Some(lex) = &r.lexical {
        let _ = writeln!(w, "\n## Lexical content\n");
        let _ = writeln!(w, "Salient words (top {}, minimum count {}).\n", lex.top_k, lex.min_count);
        let _ = writeln!(w, "| Aspect | Male | Female | WEAT(MF) | WEAT(CF) |\n|---|---|---|---|---|");
        for s in &lex.salient {
            let _ = writeln!(
                w,
                "| {} | {} | {} | {} | {} |",
                s.pos,
                word_list(&s.words.top_male),
                word_list(&s.words.top_female),
                weat_cell(&s.weat_mf),
                weat_cell(&s.weat_cf)
            );
        }
        for s in &lex.salient {
            for (label, entry) in [("WEAT(MF)", &s.weat_mf), ("WEAT(CF)", &s.weat_cf)] {
                if let Some(note) = &entry.note {
                    let _ = writeln!(w, "\n{} {label}: {note}", s.pos);
                }
            }
            if let Some(warn) = &s.words.warning {
                let _ = writeln!(w, "\n{}: {warn}", s.pos);
            }
        }
        if !lex.categories.is_empty() {
            let _ = writeln!(w, "\n| Category | Male count | Female count | OR |\n|---|---|---|---|");
            for cat in &lex.categories {
                let _ = writeln!(
                    w,
                    "| {} | {} | {} | {} |",
                    cat.key,
                    cat.male_count,
                    cat.female_count,
                    num(cat.or_value.to_scalar())
                );
            }
        }
        if !lex.unmatched_categories.is_empty() {
            let _ = writeln!(w, "\nNo matches for: {}.", lex.unmatched_categories.join(", "));
        }
    }

    if let Some(rows) = &r.style {
        let _ = writeln!(w, "\n## Language style (male > female)\n");
        let _ = writeln!(w, "| Aspect | Male mean | Female mean | t | df | p |\n|---|---|---|---|---|---|");
        for row in rows {
            let _ = writeln!(
                w,
                "| {} | {} | {} | {} | {} | {} |",
                row.aspect,
                num(row.mean_m),
                num(row.mean_f),
                num(row.t_statistic),
                num(row.df),
                starred(row.p_value, row.stars)
            );
        }
    }

    if let Some(h) = &r.hallucination {
        let _ = writeln!(w, "\n## Hallucination bias\n");
        let _ = writeln!(
            w,
            "{} of {} sentences flagged as not entailed by the context. Test: {}.\n",
            h.flagged_sentences,
            h.total_sentences,
            match h.mode {
                TestMode::Welch => "Welch",
                TestMode::Paired => "paired",
            }
        );
        let _ = writeln!(
            w,
            "| Gender | Aspect | Hallucinated mean | Full mean | t | p | Classification |\n|---|---|---|---|---|---|---|"
        );
        for row in &h.rows {
            let (hm, fm, t, p) = match &row.result {
                Some(t) => (num(t.mean_a), num(t.mean_b), num(t.t_statistic), starred(t.p_value, row.stars)),
                None => ("—".into(), "—".into(), "—".into(), "—".into()),
            };
            let _ = writeln!(
                w,
                "| {} | {} | {hm} | {fm} | {t} | {p} | {} |",
                row.gender,
                row.aspect,
                row.classification
            );
        }
        for row in h.rows.iter().filter(|r| r.classification == Classification::Undetermined) {
            if let Some(note) = &row.note {
                let _ = writeln!(w, "\n{} {}: {note}", row.gender, row.aspect);
            }
        }
    }
    out
}
