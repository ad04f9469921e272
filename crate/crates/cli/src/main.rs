//! `letterbias` command-line interface.
//!
//! Exit codes: 0 on success, 1 on invalid input or configuration, 2 when the
//! scoring service fails.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use letterbias::audit::{run_audit, AuditConfig};
use letterbias::corpus::load_corpus;
use letterbias::preprocess::{
    build_cbg_prompt, build_clg_prompts, build_counterfactual_dataset, filter_generation, load_biographies,
    write_biographies, PronounTable, SuccessRate, Verdict,
};
use letterbias::report::{from_json, render, ReportFormat};
use serde_json::json;

#[derive(Parser)]
#[command(name = "letterbias", version, about = "Audit generated reference letters for gender bias")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Markdown => ReportFormat::Markdown,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a gender-balanced counterfactual biography dataset.
    Preprocess {
        /// Biography records, one JSON object per line.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Paragraphs kept per biography.
        #[arg(long, default_value_t = 2)]
        paragraphs: usize,
        /// Pronoun table replacing the bundled one.
        #[arg(long)]
        pronouns: Option<PathBuf>,
        /// Also write context-based prompts from a recommender of this occupation.
        #[arg(long)]
        recommender: Option<String>,
    },
    /// Print the 120 context-less letter prompts.
    Prompts {
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the generation success filter to a corpus.
    Filter {
        #[arg(long)]
        corpus: PathBuf,
        /// Directory for per-document verdicts and the passing documents.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full audit described by a configuration file.
    Audit {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the corpus named in the configuration.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// `mock` or the base URL of a scoring service.
        #[arg(long)]
        scorer: Option<String>,
        /// Output directory for intermediates and reports.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also print the report in this format.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Render a saved JSON report.
    Report {
        /// A `report.json` written by `audit`.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn invalid(message: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: message.to_string() }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    invalid(format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| invalid(e)),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Preprocess { input, out, seed, paragraphs, pronouns, recommender } => {
            let bios = load_biographies(&input).map_err(invalid)?;
            let table = match pronouns {
                Some(p) => PronounTable::load(p).map_err(invalid)?,
                None => PronounTable::bundled(),
            };
            let data = build_counterfactual_dataset(&bios, paragraphs, seed, &table).map_err(invalid)?;
            fs::create_dir_all(&out).map_err(|e| io_failure(&out, e))?;
            let bio_path = out.join("biographies.jsonl");
            let file = File::create(&bio_path).map_err(|e| io_failure(&bio_path, e))?;
            write_biographies(&data.biographies, BufWriter::new(file)).map_err(|e| io_failure(&bio_path, e))?;
            let summary = json!({
                "seed": data.seed,
                "paragraphs_per_bio": data.paragraphs_per_bio,
                "sources": bios.len(),
                "bank": data.bank,
                "swaps": data.summaries,
            });
            let summary_path = out.join("summary.json");
            fs::write(&summary_path, serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n")
                .map_err(|e| io_failure(&summary_path, e))?;
            if let Some(occupation) = recommender {
                let mut lines = String::new();
                for bio in &data.biographies {
                    let prompt = build_cbg_prompt(bio, &occupation).map_err(invalid)?;
                    let row = json!({"source_id": bio.source_id, "gender": bio.person_gender, "prompt": prompt});
                    lines.push_str(&row.to_string());
                    lines.push('\n');
                }
                let path = out.join("prompts.jsonl");
                fs::write(&path, lines).map_err(|e| io_failure(&path, e))?;
            }
            eprintln!("wrote {} biographies from {} sources to {}", data.biographies.len(), bios.len(), out.display());
            Ok(())
        }
        Command::Prompts { out } => {
            let mut lines = String::new();
            for (d, prompt) in build_clg_prompts() {
                let row = json!({"name": d.name, "gender": d.gender, "age": d.age, "occupation": d.occupation, "prompt": prompt});
                lines.push_str(&row.to_string());
                lines.push('\n');
            }
            write_output(out.as_deref(), &lines)
        }
        Command::Filter { corpus, out } => {
            let corpora = load_corpus(&corpus).map_err(invalid)?;
            let verdicts: Vec<Verdict> = corpora.iter().map(|d| filter_generation(&d.text)).collect();
            let rate = SuccessRate::from_verdicts(&verdicts);
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|e| io_failure(&dir, e))?;
                let mut rows = String::new();
                for (d, v) in corpora.iter().zip(&verdicts) {
                    let mut row = serde_json::to_value(v).expect("verdict serializes");
                    row["id"] = json!(d.id);
                    rows.push_str(&row.to_string());
                    rows.push('\n');
                }
                let path = dir.join("filter.jsonl");
                fs::write(&path, rows).map_err(|e| io_failure(&path, e))?;
                let passed: Vec<&str> =
                    corpora.iter().zip(&verdicts).filter(|(_, v)| v.passed()).map(|(d, _)| d.id.as_str()).collect();
                let kept = corpora.retain(|d| passed.contains(&d.id.as_str()));
                let path = dir.join("passed.jsonl");
                letterbias::corpus::save_corpus(&kept, &path).map_err(invalid)?;
            }
            println!("{}/{} passed ({:.2}%)", rate.passed, rate.total, rate.percent());
            Ok(())
        }
        Command::Audit { config, corpus, seed, scorer, out, format } => {
            let mut cfg = AuditConfig::load(&config).map_err(|e| Failure { code: e.exit_code() as u8, message: e.to_string() })?;
            if let Some(c) = corpus {
                cfg.corpus = c;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(s) = scorer {
                cfg.scorer.backend = s;
            }
            if let Some(o) = out {
                cfg.out_dir = o;
            }
            let outcome = run_audit(&cfg).map_err(|e| Failure { code: e.exit_code() as u8, message: e.to_string() })?;
            match format {
                Some(f) => write_output(None, &render(&outcome.report, f.into()))?,
                None => eprintln!("report written to {}", outcome.out_dir.display()),
            }
            Ok(())
        }
        Command::Report { input, format, out } => {
            let text = fs::read_to_string(&input).map_err(|e| io_failure(&input, e))?;
            let report = from_json(&text).map_err(|e| invalid(format!("{}: {e}", input.display())))?;
            write_output(out.as_deref(), &render(&report, format.into()))
        }
    }
}
