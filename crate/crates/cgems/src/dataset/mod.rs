//! Corpus handling: manifests, feature extraction and labelled records.
//!
//! A corpus is described by a JSON manifest listing, per program, the
//! generated source, an optional human reference solution, an optional
//! minimally corrected version, and the human functionality annotation
//! (0 none / 1 partial / 2 complete). [`collect`] turns each entry into a
//! [`FeatureRecord`] holding the full canonical feature vector (static,
//! similarity and dynamic measures) plus the derived class label.

pub mod csvio;
pub mod schema;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blocks::{block_structure, BlockTree};
use crate::lexer::tokenize;
use crate::metrics::{cyclomatic, halstead, maintainability_index, raw_metrics};
use crate::profile::LanguageProfile;
use crate::runner::{check_compiles, measure_coverage, measure_execution, RunnerConfig};
use crate::similarity::similarity_report;
use schema::*;

/// Errors around manifests and record persistence.
#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid manifest: {0}")]
    Manifest(String),
    #[error("invalid record data: {0}")]
    Record(String),
    #[error("csv error: {0}")]
    Csv(String),
}

/// One corpus program as described by the manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    /// Unique identifier; becomes the `Program` column.
    pub id: String,
    /// Path to the generated source file.
    pub generated_path: PathBuf,
    /// Path to the human reference solution, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_path: Option<PathBuf>,
    /// Path to the minimally corrected version, if the program needed
    /// correction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrected_path: Option<PathBuf>,
    /// Human annotation: 0 = not functional, 1 = partially, 2 = fully.
    pub functionality: u8,
    /// Human override for "has valid comments"; derived from the comment
    /// count when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comments_valid: Option<bool>,
    /// Free-form description of the task, unused by the pipeline.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

/// One labelled feature vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRecord {
    pub program: String,
    /// Numeric model features in [`schema::FEATURES`] order.
    pub values: [f64; NUM_FEATURES],
    /// Letter grade of the aggregate cyclomatic complexity.
    pub cc_grade: char,
    /// Binary class; `None` for unlabelled records.
    pub label: Option<u8>,
    /// Syntax errors reported by the compile check.
    pub compilation_errors: u32,
    /// Complexity was measured at module level (no definitions found).
    pub cc_module_level: bool,
    /// The compile check actually ran.
    pub compiling_valid: bool,
    /// Execution time was actually measured.
    pub execution_time_valid: bool,
    /// Coverage was actually measured.
    pub coverage_valid: bool,
}

impl FeatureRecord {
    pub fn feature(&self, index: usize) -> f64 {
        self.values[index]
    }
}

/// Compile status of the corrected version, needed by the labelling rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorrectedStatus {
    pub compiles: bool,
    pub has_comments: bool,
}

/// Non-fatal problem while collecting one entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryIssue {
    pub id: String,
    pub stage: String,
    pub message: String,
}

/// Everything a collection run produced.
#[derive(Debug, Clone)]
pub struct CollectReport {
    pub records: Vec<FeatureRecord>,
    pub issues: Vec<EntryIssue>,
}

/// Load and validate a corpus manifest. Relative paths are resolved
/// against the manifest file's directory.
pub fn load_manifest(path: &Path) -> Result<Vec<CorpusEntry>, DatasetError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DatasetError::Manifest(format!("{}: {e}", path.display())))?;
    let mut entries: Vec<CorpusEntry> =
        serde_json::from_str(&text).map_err(|e| DatasetError::Manifest(e.to_string()))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut seen = std::collections::HashSet::new();
    for entry in &mut entries {
        if entry.id.is_empty() {
            return Err(DatasetError::Manifest("entry with empty id".to_string()));
        }
        if !seen.insert(entry.id.clone()) {
            return Err(DatasetError::Manifest(format!("duplicate id {:?}", entry.id)));
        }
        if entry.functionality > 2 {
            return Err(DatasetError::Manifest(format!(
                "{}: functionality must be 0, 1 or 2",
                entry.id
            )));
        }
        resolve(&mut entry.generated_path, base);
        if let Some(p) = &mut entry.reference_path {
            resolve(p, base);
        }
        if let Some(p) = &mut entry.corrected_path {
            resolve(p, base);
        }
    }
    Ok(entries)
}

fn resolve(path: &mut PathBuf, base: &Path) {
    if path.is_relative() {
        *path = base.join(&*path);
    }
}

/// Labelling rule.
///
/// A program is *good* (class 1) when it compiles, achieves at least
/// partial functionality and has valid comments — or when at most three
/// line edits turn it into a corrected version that satisfies those three
/// conditions. `comments_valid` from the manifest overrides the derived
/// comment evidence on both paths.
pub fn assign_label(
    record: &FeatureRecord,
    entry: &CorpusEntry,
    corrected: Option<CorrectedStatus>,
) -> u8 {
    let functional = record.values[IDX_FUNCTIONALITY] >= 1.0;
    let comments_ok = entry.comments_valid.unwrap_or(record.values[IDX_COMMENTS] > 0.0);
    if record.values[IDX_COMPILING] == 1.0 && functional && comments_ok {
        return 1;
    }
    if record.values[IDX_EDITS] <= 3.0 {
        if let Some(status) = corrected {
            let corrected_comments = entry.comments_valid.unwrap_or(status.has_comments);
            if status.compiles && functional && corrected_comments {
                return 1;
            }
        }
    }
    0
}

/// Collect feature records for every manifest entry.
///
/// `runner` drives the dynamic metrics; when absent (or when it fails on
/// an entry) the affected values are imputed as 0 and their validity
/// flags cleared, so a record is always produced for every readable
/// program. `jobs` bounds the number of entries measured concurrently.
pub fn collect(
    entries: &[CorpusEntry],
    profile: &LanguageProfile,
    runner: Option<&RunnerConfig>,
    jobs: usize,
) -> CollectReport {
    let jobs = jobs.clamp(1, entries.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let (sender, receiver) = std::sync::mpsc::channel();

    std::thread::scope(|scope| {
        let next = &next;
        for _ in 0..jobs {
            let sender = sender.clone();
            scope.spawn(move || loop {
                let index = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if index >= entries.len() {
                    break;
                }
                let outcome = collect_entry(&entries[index], profile, runner);
                if sender.send((index, outcome)).is_err() {
                    break;
                }
            });
        }
    });
    drop(sender);

    // Reassemble in manifest order regardless of completion order.
    let mut outcomes: Vec<Option<(Option<FeatureRecord>, Vec<EntryIssue>)>> =
        (0..entries.len()).map(|_| None).collect();
    for (index, outcome) in receiver.iter() {
        outcomes[index] = Some(outcome);
    }
    let mut records = Vec::new();
    let mut issues = Vec::new();
    for (record, mut entry_issues) in outcomes.into_iter().flatten() {
        if let Some(record) = record {
            records.push(record);
        }
        issues.append(&mut entry_issues);
    }
    CollectReport { records, issues }
}

fn collect_entry(
    entry: &CorpusEntry,
    profile: &LanguageProfile,
    runner: Option<&RunnerConfig>,
) -> (Option<FeatureRecord>, Vec<EntryIssue>) {
    let mut issues = Vec::new();
    let issue = |stage: &str, message: String, issues: &mut Vec<EntryIssue>| {
        issues.push(EntryIssue { id: entry.id.clone(), stage: stage.to_string(), message });
    };

    let generated = match std::fs::read_to_string(&entry.generated_path) {
        Ok(text) => text,
        Err(e) => {
            issue("read", format!("{}: {e}", entry.generated_path.display()), &mut issues);
            return (None, issues);
        }
    };
    let reference = match &entry.reference_path {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => {
                issue("read", format!("{}: {e}", path.display()), &mut issues);
                None
            }
        },
        None => None,
    };
    let corrected = match &entry.corrected_path {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => {
                issue("read", format!("{}: {e}", path.display()), &mut issues);
                None
            }
        },
        None => None,
    };

    // Static measures. A lexical error degrades block structure to a
    // single module-level view but never prevents measurement.
    let stream = tokenize(&generated, profile);
    if let Some(error) = stream.error {
        issue("lex", error.to_string(), &mut issues);
    }
    let tree = block_structure(&stream, profile)
        .unwrap_or_else(|_| BlockTree::module_only(stream.physical_lines));
    let raw = raw_metrics(&stream);
    let hal = halstead(&stream, profile);
    let cc = cyclomatic(&stream, &tree, profile);
    let mi = maintainability_index(&raw, &hal, &cc);
    let similarity =
        similarity_report(&generated, reference.as_deref(), corrected.as_deref());

    let mut values = [0.0f64; NUM_FEATURES];
    values[IDX_MAINTAINABILITY] = mi.value;
    values[IDX_FUNCTIONALITY] = f64::from(entry.functionality);
    values[IDX_EDITS] = similarity.edit_count as f64;
    values[IDX_SEQUENCE_RATIO] = similarity.sequence_ratio;
    values[IDX_CC_NUMBER] = cc.average;
    values[IDX_LOC] = raw.loc as f64;
    values[IDX_ROUGE1_PRECISION] = similarity.rouge_1.precision;
    values[IDX_ROUGE1_RECALL] = similarity.rouge_1.recall;
    values[IDX_ROUGE1_F1] = similarity.rouge_1.f1;
    values[IDX_ROUGE2_PRECISION] = similarity.rouge_2.precision;
    values[IDX_ROUGE2_RECALL] = similarity.rouge_2.recall;
    values[IDX_ROUGE2_F1] = similarity.rouge_2.f1;
    values[IDX_ROUGEL_PRECISION] = similarity.rouge_l.precision;
    values[IDX_ROUGEL_RECALL] = similarity.rouge_l.recall;
    values[IDX_ROUGEL_F1] = similarity.rouge_l.f1;
    values[IDX_LLOC] = raw.lloc as f64;
    values[IDX_SLOC] = raw.sloc as f64;
    values[IDX_COMMENTS] = raw.comments as f64;
    values[IDX_C_PCT_L] = raw.c_pct_l;
    values[IDX_C_PCT_S] = raw.c_pct_s;
    values[IDX_CM_PCT_L] = raw.cm_pct_l;
    values[IDX_DIFFICULTY] = hal.difficulty;
    values[IDX_EFFORT] = hal.effort;
    values[IDX_PROGRAMMING_TIME] = hal.time_seconds;
    values[IDX_BUGS] = hal.bugs;
    values[IDX_COSINE] = similarity.cosine_angle;
    values[IDX_SOFT_COSINE] = similarity.soft_cosine_angle;
    values[IDX_BLEU] = similarity.bleu;

    // Dynamic measures.
    let mut compilation_errors = 0u32;
    let mut compiling_valid = false;
    let mut execution_time_valid = false;
    let mut coverage_valid = false;
    if let Some(config) = runner {
        match check_compiles(config, &entry.generated_path) {
            Ok(outcome) => {
                compiling_valid = true;
                values[IDX_COMPILING] = f64::from(u8::from(outcome.compiling));
                compilation_errors = outcome.error_count;
                if outcome.compiling {
                    match measure_execution(config, &entry.generated_path) {
                        Ok(execution) => {
                            execution_time_valid = true;
                            values[IDX_EXECUTION_TIME] = execution.wall_time_us as f64;
                        }
                        Err(e) => issue("run", e.to_string(), &mut issues),
                    }
                    match measure_coverage(config, &entry.generated_path) {
                        Ok(coverage) => {
                            coverage_valid = true;
                            values[IDX_COVERAGE] = coverage.percent;
                        }
                        Err(e) => issue("coverage", e.to_string(), &mut issues),
                    }
                }
            }
            Err(e) => issue("check", e.to_string(), &mut issues),
        }
    }

    let mut record = FeatureRecord {
        program: entry.id.clone(),
        values,
        cc_grade: cc.grade,
        label: None,
        compilation_errors,
        cc_module_level: cc.module_level,
        compiling_valid,
        execution_time_valid,
        coverage_valid,
    };

    // Labelling needs to know whether the corrected version compiles.
    let corrected_status = match (&entry.corrected_path, corrected.as_deref(), runner) {
        (Some(path), Some(text), Some(config)) => match check_compiles(config, path) {
            Ok(outcome) => Some(CorrectedStatus {
                compiles: outcome.compiling,
                has_comments: text_has_comments(text, profile),
            }),
            Err(e) => {
                issue("check", format!("corrected: {e}"), &mut issues);
                None
            }
        },
        _ => None,
    };
    record.label = Some(assign_label(&record, entry, corrected_status));
    (Some(record), issues)
}

fn text_has_comments(text: &str, profile: &LanguageProfile) -> bool {
    raw_metrics(&tokenize(text, profile)).comments > 0
}
