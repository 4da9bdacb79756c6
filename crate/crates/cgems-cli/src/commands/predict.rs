//! `cgems predict` — classify feature records with a saved model.

use std::path::{Path, PathBuf};

use cgems::dataset::csvio;
use cgems::learn::artifact::ModelArtifact;
use clap::Args;
use serde::Serialize;

use crate::commands::feature_columns;
use crate::settings::{self, CliError, FileConfig, RunInfo};

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Saved model file.
    #[arg(long, short, value_name = "FILE")]
    pub model: PathBuf,
    /// Feature table (CSV); labels are optional and only used to report
    /// agreement.
    #[arg(long, short, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Write the predictions here instead of standard output.
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct PredictionRow {
    program: String,
    predicted: u8,
    probabilities: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    correct: Option<bool>,
}

#[derive(Serialize)]
struct PredictReport {
    model_digest: String,
    rows: Vec<PredictionRow>,
    labelled_rows: usize,
    /// Fraction of labelled rows predicted correctly; absent when no row
    /// carries a label.
    #[serde(skip_serializing_if = "Option::is_none")]
    accuracy: Option<f64>,
}

#[derive(Serialize)]
struct Effective<'a> {
    model: &'a Path,
    input: &'a Path,
}

pub fn run(args: &PredictArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let artifact = ModelArtifact::load(&args.model).map_err(settings::usage)?;
    let input =
        settings::require_path(args.input.as_deref(), file_config.input.as_deref(), "input")?;
    let records = csvio::read_csv(&input).map_err(settings::usage)?;
    let columns = feature_columns();

    let mut rows = Vec::with_capacity(records.len());
    let mut labelled = 0usize;
    let mut agreed = 0usize;
    for record in &records {
        let (predicted, probabilities) = artifact
            .predict_from_named(&columns, &record.values)
            .map_err(settings::usage)?;
        let correct = record.label.map(|label| label == predicted);
        if let Some(correct) = correct {
            labelled += 1;
            if correct {
                agreed += 1;
            }
        }
        rows.push(PredictionRow {
            program: record.program.clone(),
            predicted,
            probabilities,
            label: record.label,
            correct,
        });
    }

    let effective = Effective {
        model: &args.model,
        input: &input,
    };
    let info = RunInfo::new("predict", Some(artifact.seed), &effective)?;
    let report = PredictReport {
        model_digest: artifact.digest(),
        rows,
        labelled_rows: labelled,
        accuracy: (labelled > 0).then(|| agreed as f64 / labelled as f64),
    };
    settings::emit(args.output.as_deref(), &report, &info)
}
