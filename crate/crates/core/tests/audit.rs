use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use letterbias::audit::{artifacts, run_audit, run_audit_with, AuditConfig};
use letterbias::hallucination::Classification;
use letterbias::lexical::OrValue;
use letterbias::report::{from_json, to_json, to_markdown, AuditReport};
use letterbias::scoring::{Health, MockScorer, ScoreRequest, ScoreResponse, Scorer, ScoringError};
use letterbias::style::Aspect;

fn fixture_config() -> AuditConfig {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/audit/audit.toml");
    AuditConfig::load(path).unwrap()
}

fn run_into(dir: &Path, edit: impl FnOnce(&mut AuditConfig)) -> AuditReport {
    let mut cfg = fixture_config();
    cfg.out_dir = dir.to_path_buf();
    edit(&mut cfg);
    run_audit(&cfg).unwrap().report
}

#[test]
fn fixture_report_shows_the_planted_biases() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_into(dir.path(), |_| {});
    assert_eq!((report.filter.passed, report.filter.total), (40, 42));
    assert_eq!((report.corpus.analysed_male, report.corpus.analysed_female), (20, 20));

    let lexical = report.lexical.as_ref().unwrap();
    let category = |name: &str| lexical.categories.iter().find(|c| c.key == name).unwrap().or_value.clone();
    assert_eq!(category("Masculine"), OrValue::Infinite);
    assert_eq!(category("Feminine"), OrValue::Finite(0.0));
    for section in &lexical.salient {
        assert!(section.weat_mf.effect_size.is_some() || section.weat_mf.note.is_some());
    }

    let style = report.style.as_ref().unwrap();
    let agency = style.iter().find(|r| r.aspect == Aspect::Agency).unwrap();
    assert_eq!(agency.stars, 3);
    assert!(agency.t_statistic > 0.0);

    let rows = &report.hallucination.as_ref().unwrap().rows;
    assert_eq!(rows.len(), 6);
    for r in rows.iter().filter(|r| r.classification == Classification::Undetermined) {
        assert!(r.note.is_some() && r.result.is_none());
    }
}

#[test]
fn every_artifact_is_written() {
    let dir = tempfile::tempdir().unwrap();
    run_into(dir.path(), |_| {});
    for name in [
        artifacts::FILTER,
        artifacts::SENTENCES,
        artifacts::LABELS,
        artifacts::WORD_COUNTS,
        artifacts::STYLE_SCORES,
        artifacts::HALLUCINATIONS,
        artifacts::HALLUCINATION_SAMPLES,
        artifacts::REPORT_JSON,
        artifacts::REPORT_MARKDOWN,
    ] {
        assert!(dir.path().join(name).is_file(), "{name} missing");
    }
}

#[test]
fn saved_report_renders_the_same_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_into(dir.path(), |_| {});
    let json = std::fs::read_to_string(dir.path().join(artifacts::REPORT_JSON)).unwrap();
    assert_eq!(json, to_json(&report));
    let back = from_json(&json).unwrap();
    assert_eq!(back, report);
    let md = std::fs::read_to_string(dir.path().join(artifacts::REPORT_MARKDOWN)).unwrap();
    assert_eq!(to_markdown(&back), md);
    assert!(json.contains("\"or_value\": \"inf\""));
}

#[test]
fn same_seed_same_bytes_across_output_dirs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_into(a.path(), |_| {});
    run_into(b.path(), |_| {});
    for name in [artifacts::LABELS, artifacts::WORD_COUNTS, artifacts::REPORT_JSON, artifacts::REPORT_MARKDOWN] {
        assert_eq!(std::fs::read(a.path().join(name)).unwrap(), std::fs::read(b.path().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn disabled_analyses_are_left_out() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_into(dir.path(), |c| {
        c.lexical.enabled = false;
        c.hallucination.enabled = false;
    });
    assert!(report.lexical.is_none() && report.hallucination.is_none());
    assert!(report.style.is_some());
    assert!(!dir.path().join(artifacts::HALLUCINATIONS).exists());
}

#[test]
fn config_paths_resolve_against_the_config_file() {
    let cfg = fixture_config();
    let fixtures: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/audit");
    assert_eq!(cfg.corpus.canonicalize().unwrap(), fixtures.join("corpus.jsonl").canonicalize().unwrap());
    assert_eq!(cfg.seed, 13);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let err = AuditConfig::parse("corpus = \"c.jsonl\"\nseeed = 3\n", Path::new(".")).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    assert!(err.to_string().contains("seeed"), "{err}");
}

#[test]
fn missing_corpus_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = AuditConfig::for_corpus(dir.path().join("absent.jsonl"));
    cfg.out_dir = dir.path().join("out");
    assert_eq!(run_audit(&cfg).unwrap_err().exit_code(), 1);
}

/// Healthy, but every scoring call fails.
struct Broken;

impl Scorer for Broken {
    fn score(&self, request: &ScoreRequest) -> Result<ScoreResponse, ScoringError> {
        Err(ScoringError::Transport { batch_id: request.batch_id.clone(), message: "connection reset".into() })
    }

    fn health(&self) -> Health {
        MockScorer::new().health()
    }
}

struct Down;

impl Scorer for Down {
    fn score(&self, _: &ScoreRequest) -> Result<ScoreResponse, ScoringError> {
        unreachable!("health is checked first")
    }

    fn health(&self) -> Health {
        Health::Unavailable { reason: "maintenance".into() }
    }
}

#[test]
fn scorer_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = fixture_config();
    cfg.out_dir = dir.path().to_path_buf();
    cfg.scorer.client.max_retries = 1;
    cfg.scorer.client.initial_backoff_ms = 1;
    let err = run_audit_with(&cfg, Arc::new(Broken)).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().starts_with("scoring stage failed"), "{err}");
    let err = run_audit_with(&cfg, Arc::new(Down)).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("maintenance"), "{err}");
}

#[test]
fn model_ids_are_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_into(dir.path(), |_| {});
    let models: &BTreeMap<_, _> = &report.corpus.models;
    assert!(!models.is_empty());
    assert!(models.values().all(|m| m == letterbias::scoring::MOCK_MODEL_ID));
}
