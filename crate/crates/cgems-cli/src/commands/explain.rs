//! `cgems explain` — a local linear surrogate around one record's
//! prediction, printed as a ranked table and exportable as JSON and SVG.

use std::path::{Path, PathBuf};

use cgems::dataset::csvio;
use cgems::explain::{lime_explain, ExplainError, Explanation, LimeParams};
use cgems::learn::artifact::ModelArtifact;
use clap::Args;
use serde::Serialize;

use crate::chart::bar_chart;
use crate::commands::feature_columns;
use crate::settings::{self, CliError, FileConfig, RunInfo};

#[derive(Debug, Args)]
pub struct ExplainArgs {
    /// Saved model file.
    #[arg(long, short, value_name = "FILE")]
    pub model: PathBuf,
    /// Feature table (CSV) holding the record to explain.
    #[arg(long, short, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Value of the `Program` column identifying the record.
    #[arg(long, short, value_name = "ID")]
    pub program: String,
    /// Perturbed samples to draw around the record.
    #[arg(long, value_name = "N")]
    pub samples: Option<usize>,
    /// Locality kernel width; defaults to 0.75 * sqrt(feature count).
    #[arg(long, value_name = "W")]
    pub kernel_width: Option<f64>,
    /// Seed for the perturbation draws.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Write the explanation as JSON here (the ranked table always goes
    /// to standard output).
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Write a ranked bar chart of the weights as SVG.
    #[arg(long, value_name = "FILE")]
    pub bar_chart: Option<PathBuf>,
}

#[derive(Serialize)]
struct RankedWeight {
    rank: usize,
    feature: String,
    weight: f64,
}

#[derive(Serialize)]
struct ExplainReport {
    program: String,
    predicted: u8,
    probabilities: [f64; 2],
    /// Surrogate coefficients ranked by influence.
    ranked: Vec<RankedWeight>,
    /// The raw fit, with weights in the model's feature order.
    explanation: Explanation,
}

#[derive(Serialize)]
struct Effective<'a> {
    model: &'a Path,
    input: &'a Path,
    program: &'a str,
    samples: usize,
    kernel_width: Option<f64>,
    seed: u64,
}

pub fn run(args: &ExplainArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let artifact = ModelArtifact::load(&args.model).map_err(settings::usage)?;
    let input =
        settings::require_path(args.input.as_deref(), file_config.input.as_deref(), "input")?;
    let records = csvio::read_csv(&input).map_err(settings::usage)?;
    let record = records
        .iter()
        .find(|record| record.program == args.program)
        .ok_or_else(|| {
            settings::usage(format!(
                "program '{}' not found in {}",
                args.program,
                input.display()
            ))
        })?;

    // Assemble the record's raw values for the model's features, then
    // move to the standardized space the model (and the surrogate)
    // operates in.
    let columns = feature_columns();
    let mut raw = Vec::with_capacity(artifact.selected.len());
    for name in &artifact.selected {
        let index = columns
            .iter()
            .position(|column| column == name)
            .ok_or_else(|| {
                settings::usage(format!("model feature '{name}' is not a table column"))
            })?;
        raw.push(record.values[index]);
    }
    let x = artifact.standardization.transform_row(&raw);

    let params = LimeParams {
        n_samples: args.samples.or(file_config.samples).unwrap_or(5000),
        kernel_width: args.kernel_width.or(file_config.kernel_width),
        seed: args.seed.or(file_config.seed).unwrap_or(0),
    };
    let model = &artifact.model;
    let explanation =
        lime_explain(|z| model.probabilities(z)[1], &x, &params).map_err(map_explain_error)?;
    let (predicted, probabilities) = model.predict(&x);

    let mut order: Vec<usize> = (0..explanation.weights.len()).collect();
    order.sort_by(|&a, &b| {
        explanation.weights[b]
            .abs()
            .partial_cmp(&explanation.weights[a].abs())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let ranked: Vec<RankedWeight> = order
        .iter()
        .enumerate()
        .map(|(rank, &index)| RankedWeight {
            rank: rank + 1,
            feature: artifact.selected[index].clone(),
            weight: explanation.weights[index],
        })
        .collect();

    print_table(&args.program, predicted, probabilities, &ranked, &explanation)?;

    let effective = Effective {
        model: &args.model,
        input: &input,
        program: &args.program,
        samples: params.n_samples,
        kernel_width: params.kernel_width,
        seed: params.seed,
    };
    let info = RunInfo::new("explain", Some(params.seed), &effective)?;

    if let Some(path) = &args.bar_chart {
        let items: Vec<(String, f64)> = ranked
            .iter()
            .map(|entry| (entry.feature.clone(), entry.weight))
            .collect();
        let title = format!("feature weights for {}", args.program);
        settings::write_text(path, &bar_chart(&title, &items))?;
    }
    if let Some(path) = &args.output {
        let report = ExplainReport {
            program: args.program.clone(),
            predicted,
            probabilities,
            ranked,
            explanation,
        };
        settings::write_report(path, &report)?;
        settings::write_json(&settings::run_info_path(path), &info)?;
    } else if let Some(path) = &args.bar_chart {
        settings::write_json(&settings::run_info_path(path), &info)?;
    }
    Ok(())
}

/// Too few samples or a bad width are invocation problems; a singular
/// fit that even ridge regularization cannot solve is not.
fn map_explain_error(error: ExplainError) -> CliError {
    match error {
        ExplainError::Singular => settings::pipeline(error),
        other => settings::usage(other),
    }
}

fn print_table(
    program: &str,
    predicted: u8,
    probabilities: [f64; 2],
    ranked: &[RankedWeight],
    explanation: &Explanation,
) -> Result<(), CliError> {
    settings::print_line(&format!(
        "explanation for {program}: predicted class {predicted} (p(class 1) = {:.4})",
        probabilities[1]
    ))?;
    let name_width = ranked
        .iter()
        .map(|entry| entry.feature.len())
        .max()
        .unwrap_or(7)
        .max(7);
    settings::print_line(&format!(
        "{:>4}  {:<name_width$}  {:>10}",
        "rank", "feature", "weight"
    ))?;
    for entry in ranked {
        settings::print_line(&format!(
            "{:>4}  {:<name_width$}  {:>+10.4}",
            entry.rank, entry.feature, entry.weight
        ))?;
    }
    settings::print_line(&format!(
        "intercept {:+.4}, fit R^2 {:.4}, kernel width {:.4}, {} samples, seed {}{}",
        explanation.intercept,
        explanation.r_squared,
        explanation.kernel_width,
        explanation.n_samples,
        explanation.seed,
        if explanation.ridged { " (ridge-regularized)" } else { "" }
    ))
}
