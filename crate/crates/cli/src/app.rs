use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use groupk_core::{parse_presentation, parse_word, DehnSolver, Presentation, Severity, TriState};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::output::{build_document, group_text, render_json, render_text, OutputDocument, TOOL_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARTIAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "groupk", version, about = "K-theory of Cohen-Lyndon aspherical group presentations")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Largest q for which T(q) is reported.
    #[arg(long = "max-q", global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(4..))]
    pub max_q: u32,
    /// Print the Dehn rewrite trace (word subcommand).
    #[arg(long, global = true)]
    pub trace: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Small-cancellation classification and eligibility verdicts.
    Classify { file: PathBuf },
    /// Full K-theory computation.
    Ktheory { file: PathBuf },
    /// Decide whether a word is trivial with Dehn's algorithm.
    Word {
        file: PathBuf,
        #[arg(long = "word")]
        word: String,
    },
    /// Run `ktheory` on every *.grp file of a directory.
    Batch { dir: PathBuf },
}

fn load(path: &Path) -> anyhow::Result<Presentation> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_presentation(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn warn_issues(p: &Presentation, err: &mut dyn Write) {
    for issue in groupk_core::validate(p).issues.iter().filter(|i| i.severity == Severity::Warning) {
        let _ = writeln!(err, "warning: {}", issue.message);
    }
}

fn document_for(path: &Path, q_max: usize, with_ktheory: bool) -> anyhow::Result<OutputDocument> {
    let p = load(path)?;
    build_document(&p, q_max, with_ktheory).with_context(|| path.display().to_string())
}

fn emit(doc: &OutputDocument, format: Format, out: &mut dyn Write) {
    let _ = match format {
        Format::Json => writeln!(out, "{}", render_json(doc)),
        Format::Text => write!(out, "{}", render_text(doc)),
    };
}

#[derive(Serialize)]
struct StepOut {
    position: usize,
    relator: String,
    matched: usize,
    result: String,
}

fn word_command(cli: &Cli, file: &Path, word: &str, out: &mut dyn Write) -> anyhow::Result<()> {
    let p = load(file)?;
    let w = parse_word(word, &p).with_context(|| format!("cannot parse word `{word}`"))?;
    let solver = DehnSolver::new(&p);
    let t: TriState = solver.is_trivial(&w);
    let steps: Vec<StepOut> = t
        .steps
        .iter()
        .map(|s| StepOut {
            position: s.position,
            relator: p.format_word(&s.relator),
            matched: s.matched,
            result: p.format_word(&s.result),
        })
        .collect();
    match cli.format {
        Format::Json => {
            let mut v = json!({
                "tool_version": TOOL_VERSION,
                "word": p.format_word(&w),
                "verdict": t.value.as_str(),
                "certified": solver.is_certified(),
            });
            if cli.trace {
                v["start"] = json!(p.format_word(&t.start));
                v["trace"] = serde_json::to_value(&steps)?;
            }
            writeln!(out, "{v}")?;
        }
        Format::Text => {
            writeln!(out, "{}", t.value)?;
            if cli.trace {
                writeln!(out, "  start: {}", p.format_word(&t.start))?;
                for (i, s) in steps.iter().enumerate() {
                    writeln!(
                        out,
                        "  step {}: at {} replace {} letters of {} -> {}",
                        i + 1,
                        s.position,
                        s.matched,
                        s.relator,
                        s.result
                    )?;
                }
            }
        }
    }
    Ok(())
}

/// One batch entry: the document, or the error that prevented it.
pub type BatchEntry = (String, Result<OutputDocument, String>);

pub fn batch_entries(dir: &Path, q_max: usize) -> anyhow::Result<Vec<BatchEntry>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "grp"))
        .collect();
    files.sort();
    Ok(files
        .par_iter()
        .map(|path| {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let doc = document_for(path, q_max, true).map_err(|e| format!("{e:#}"));
            (name, doc)
        })
        .collect())
}

fn summary_row(name: &str, doc: &Result<OutputDocument, String>) -> [String; 4] {
    match doc {
        Ok(d) => {
            let k = d.ktheory.as_ref().expect("batch documents carry K-theory");
            [name.to_string(), k.certificate.clone(), group_text(&k.k0), group_text(&k.k1)]
        }
        Err(_) => [name.to_string(), "ERROR".to_string(), "-".to_string(), "-".to_string()],
    }
}

fn batch_command(format: Format, entries: &[BatchEntry], out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            let documents: Vec<serde_json::Value> = entries
                .iter()
                .map(|(name, doc)| match doc {
                    Ok(d) => json!({"file": name, "status": "OK", "document": d}),
                    Err(e) => json!({"file": name, "status": "ERROR", "error": e}),
                })
                .collect();
            let summary: Vec<serde_json::Value> = entries
                .iter()
                .map(|(name, doc)| {
                    let [file, certificate, k0, k1] = summary_row(name, doc);
                    json!({"file": file, "certificate": certificate, "k0": k0, "k1": k1})
                })
                .collect();
            writeln!(out, "{}", json!({"tool_version": TOOL_VERSION, "documents": documents, "summary": summary}))?;
        }
        Format::Text => {
            for (name, doc) in entries {
                writeln!(out, "== {name} ==")?;
                match doc {
                    Ok(d) => write!(out, "{}", render_text(d))?,
                    Err(e) => writeln!(out, "ERROR: {e}")?,
                }
                writeln!(out)?;
            }
            let mut rows = vec![["file".to_string(), "certificate".into(), "K0".into(), "K1".into()]];
            rows.extend(entries.iter().map(|(n, d)| summary_row(n, d)));
            let widths: Vec<usize> =
                (0..4).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
            writeln!(out, "summary:")?;
            for r in &rows {
                let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                writeln!(out, "  {}", cells.join("  ").trim_end())?;
            }
        }
    }
    Ok(())
}

/// Runs a parsed command line, writing to the given streams, and returns the
/// process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let q_max = cli.max_q as usize;
    let result = match &cli.command {
        Command::Classify { file } | Command::Ktheory { file } => {
            let with_k = matches!(cli.command, Command::Ktheory { .. });
            load(file).and_then(|p| {
                warn_issues(&p, err);
                build_document(&p, q_max, with_k).map(|doc| emit(&doc, cli.format, out))
            })
        }
        Command::Word { file, word } => word_command(cli, file, word, out),
        Command::Batch { dir } => match batch_entries(dir, q_max) {
            Ok(entries) => {
                let failed = entries.iter().filter(|(_, d)| d.is_err()).count();
                for (name, doc) in &entries {
                    if let Err(e) = doc {
                        let _ = writeln!(err, "error: {name}: {e}");
                    }
                }
                return match batch_command(cli.format, &entries, out) {
                    Ok(()) if failed == 0 => EXIT_OK,
                    Ok(()) => EXIT_PARTIAL,
                    Err(e) => {
                        let _ = writeln!(err, "error: {e:#}");
                        EXIT_INPUT
                    }
                };
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INPUT
        }
    }
}
