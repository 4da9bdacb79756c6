//! `cgems select-features` — correlation pruning and F-test ranking for
//! a labelled feature table, reported as JSON and optionally CSV.

use std::path::{Path, PathBuf};

use cgems::dataset::csvio;
use cgems::learn::matrix::FeatureMatrix;
use cgems::learn::select::{select_features, SelectionReport, CORRELATION_THRESHOLD};
use clap::Args;
use serde::Serialize;

use crate::settings::{self, CliError, FeatureSpec, FileConfig, RunInfo};

#[derive(Debug, Args)]
pub struct SelectArgs {
    /// Labelled feature table (CSV).
    #[arg(long, short, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Final selection size, or 'all' to keep every column that survives
    /// pruning (default: all).
    #[arg(long, short, value_name = "K|all")]
    pub features: Option<String>,
    /// Absolute correlation at or above which a later column is dropped.
    #[arg(long, value_name = "R")]
    pub threshold: Option<f64>,
    /// Write the report as JSON here instead of standard output.
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Also export per-column scores as CSV.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
}

#[derive(Serialize)]
struct Effective<'a> {
    input: &'a Path,
    features: String,
    threshold: f64,
}

pub fn run(args: &SelectArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let input =
        settings::require_path(args.input.as_deref(), file_config.input.as_deref(), "input")?;
    let records = csvio::read_csv(&input).map_err(settings::usage)?;
    let matrix = FeatureMatrix::from_records(&records).map_err(settings::usage)?;

    let threshold = args
        .threshold
        .or(file_config.threshold)
        .unwrap_or(CORRELATION_THRESHOLD);
    let spec = match args.features.as_deref().or(file_config.features.as_deref()) {
        Some(text) => settings::parse_features(text)?,
        None => FeatureSpec::All,
    };
    let k = match spec {
        FeatureSpec::All => None,
        FeatureSpec::Count(count) => Some(count),
    };
    let report = select_features(&matrix, threshold, k).map_err(settings::usage)?;

    let effective = Effective {
        input: &input,
        features: spec.to_string(),
        threshold,
    };
    let info = RunInfo::new("select-features", None, &effective)?;

    if let Some(path) = &args.csv {
        settings::write_text(path, &scores_csv(&report))?;
        if args.output.is_none() {
            settings::write_json(&settings::run_info_path(path), &info)?;
        }
    }
    settings::emit(args.output.as_deref(), &report, &info)
}

/// One row per input column, in table order, with its pruning/selection
/// status. Pruned columns have no score, so those cells stay empty.
fn scores_csv(report: &SelectionReport) -> String {
    let mut text = String::from("name,index,f_statistic,p_value,status\n");
    for (index, name) in report.columns.iter().enumerate() {
        let status = if report.selected.contains(name) {
            "selected"
        } else if report.kept.contains(name) {
            "kept"
        } else {
            "pruned"
        };
        let score = report.scores.iter().find(|s| s.index == index);
        let (f_text, p_text) = match score {
            Some(score) => (score.f_statistic.to_string(), score.p_value.to_string()),
            None => (String::new(), String::new()),
        };
        let quoted = if name.contains(',') || name.contains('"') {
            format!("\"{}\"", name.replace('"', "\"\""))
        } else {
            name.clone()
        };
        text.push_str(&format!("{quoted},{index},{f_text},{p_text},{status}\n"));
    }
    text
}
