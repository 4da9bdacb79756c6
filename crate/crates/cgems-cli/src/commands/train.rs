//! `cgems train` — the full learning pipeline: standardize, select
//! features, oversample the minority class, split, train the network,
//! evaluate, and persist the model with its reports.

use std::path::{Path, PathBuf};

use cgems::dataset::csvio;
use cgems::learn::artifact::ModelArtifact;
use cgems::learn::eval::{evaluate, EvalReport};
use cgems::learn::matrix::{stratified_split, FeatureMatrix, Standardization};
use cgems::learn::mlp::{MlpConfig, MlpModel, TrainTrace};
use cgems::learn::select::{select_features, SelectionReport, CORRELATION_THRESHOLD};
use cgems::learn::smote::{oversample, DEFAULT_NEIGHBOURS};
use cgems::learn::LearnError;
use clap::Args;
use serde::Serialize;

use crate::settings::{self, CliError, FeatureSpec, FileConfig, RunInfo};

/// Fraction of the rows that goes to the training partition when no
/// explicit size is given (71 of 84 rows).
const DEFAULT_TRAIN_FRACTION: f64 = 71.0 / 84.0;

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Labelled feature table (CSV) to train on.
    #[arg(long, short, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Model file to write. Reports are written next to it.
    #[arg(long, short, value_name = "FILE")]
    pub output: PathBuf,
    /// Features for the model: 'all' trains on every column unprocessed;
    /// a count K prunes correlated columns and keeps the K best by
    /// F-score (default: all).
    #[arg(long, short, value_name = "K|all")]
    pub features: Option<String>,
    /// Absolute correlation at or above which a later column is dropped.
    #[arg(long, value_name = "R")]
    pub threshold: Option<f64>,
    /// Seed for oversampling, splitting and weight initialization.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Rows in the training partition (default: 71/84 of the rows being
    /// split, rounded).
    #[arg(long, value_name = "N")]
    pub train_size: Option<usize>,
    /// Neighbours considered when oversampling the minority class.
    #[arg(long, value_name = "K")]
    pub smote_neighbours: Option<usize>,
    /// Oversample only the training partition, after splitting. The
    /// default oversamples the whole table first, which lets synthetic
    /// rows derived from training rows reach the test partition; this
    /// flag avoids that leakage at the cost of an unbalanced test set.
    #[arg(long)]
    pub smote_after_split: bool,
    /// Training epochs.
    #[arg(long, value_name = "N")]
    pub epochs: Option<usize>,
    /// Adam step size.
    #[arg(long, value_name = "LR")]
    pub learning_rate: Option<f64>,
    /// Hidden layer widths, comma separated.
    #[arg(long, value_name = "W1,W2", value_delimiter = ',')]
    pub hidden: Option<Vec<usize>>,
}

/// The resolved settings; hashed into `config_hash` and echoed in the
/// training report.
#[derive(Serialize)]
struct TrainSettings {
    features: String,
    threshold: f64,
    seed: u64,
    train_size: usize,
    smote_neighbours: usize,
    smote_after_split: bool,
    hidden: Vec<usize>,
    learning_rate: f64,
    epochs: usize,
}

#[derive(Serialize)]
struct TrainReport {
    settings: TrainSettings,
    selected: Vec<String>,
    train_rows: usize,
    test_rows: usize,
    evaluation: EvalReport,
    trace: TrainTrace,
    model_digest: String,
}

pub fn run(args: &TrainArgs, file_config: &FileConfig) -> Result<(), CliError> {
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
    let seed = args.seed.or(file_config.seed).unwrap_or(0);
    let neighbours = args
        .smote_neighbours
        .or(file_config.smote_neighbours)
        .unwrap_or(DEFAULT_NEIGHBOURS);
    let smote_after_split =
        args.smote_after_split || file_config.smote_after_split.unwrap_or(false);
    let mut mlp_config = MlpConfig::default();
    if let Some(hidden) = args.hidden.clone().or_else(|| file_config.hidden.clone()) {
        mlp_config.hidden = hidden;
    }
    if let Some(rate) = args.learning_rate.or(file_config.learning_rate) {
        mlp_config.learning_rate = rate;
    }
    if let Some(epochs) = args.epochs.or(file_config.epochs) {
        mlp_config.epochs = epochs;
    }

    // Standardize on the full table, then select features. An `all`
    // spec disables pruning outright: no finite correlation reaches an
    // infinite threshold.
    let full_standardization = Standardization::fit(&matrix);
    let standardized = full_standardization
        .apply(&matrix)
        .map_err(settings::pipeline)?;
    let selection = match spec {
        FeatureSpec::All => select_features(&standardized, f64::INFINITY, None),
        FeatureSpec::Count(count) => select_features(&standardized, threshold, Some(count)),
    }
    .map_err(settings::usage)?;
    let reduced = standardized
        .subset(&selection.selected)
        .map_err(settings::pipeline)?;
    let reduced_standardization = full_standardization
        .subset(&selection.selected)
        .map_err(settings::pipeline)?;

    // Oversample and split. The requested training size applies to
    // whichever table is being split.
    let train_size = args.train_size.or(file_config.train_size);
    let (train_matrix, test_matrix, resolved_train_size) = if smote_after_split {
        let total = reduced.n_rows();
        let train_n = resolve_train_size(train_size, total);
        let (train_idx, test_idx) =
            stratified_split(&reduced.labels, train_n, seed).map_err(settings::usage)?;
        let balanced =
            oversample(&reduced.take_rows(&train_idx), neighbours, seed).map_err(settings::usage)?;
        (balanced, reduced.take_rows(&test_idx), train_n)
    } else {
        let balanced = oversample(&reduced, neighbours, seed).map_err(settings::usage)?;
        let train_n = resolve_train_size(train_size, balanced.n_rows());
        let (train_idx, test_idx) =
            stratified_split(&balanced.labels, train_n, seed).map_err(settings::usage)?;
        (
            balanced.take_rows(&train_idx),
            balanced.take_rows(&test_idx),
            train_n,
        )
    };

    let mut model = MlpModel::new(selection.selected.len(), mlp_config.clone(), seed)
        .map_err(settings::usage)?;
    let trace = model
        .train(&train_matrix.rows, &train_matrix.labels)
        .map_err(map_training_error)?;
    let predicted: Vec<u8> = test_matrix
        .rows
        .iter()
        .map(|row| model.predict(row).0)
        .collect();
    let evaluation = evaluate(&predicted, &test_matrix.labels).map_err(settings::pipeline)?;

    let effective = TrainSettings {
        features: spec.to_string(),
        threshold,
        seed,
        train_size: resolved_train_size,
        smote_neighbours: neighbours,
        smote_after_split,
        hidden: mlp_config.hidden.clone(),
        learning_rate: mlp_config.learning_rate,
        epochs: mlp_config.epochs,
    };
    let info = RunInfo::new("train", Some(seed), &effective)?;
    let artifact = ModelArtifact::new(
        seed,
        info.config_hash.clone(),
        selection.selected.clone(),
        reduced_standardization,
        model,
    )
    .map_err(settings::pipeline)?;
    artifact.save(&args.output).map_err(settings::pipeline)?;

    let report = TrainReport {
        settings: effective,
        selected: selection.selected.clone(),
        train_rows: train_matrix.n_rows(),
        test_rows: test_matrix.n_rows(),
        evaluation,
        trace,
        model_digest: artifact.digest(),
    };
    settings::write_report(&settings::sibling(&args.output, "selection"), &selection)?;
    settings::write_report(&settings::sibling(&args.output, "eval"), &report)?;
    settings::write_json(&settings::run_info_path(&args.output), &info)?;

    print_summary(&args.output, &selection, &report)
}

fn resolve_train_size(requested: Option<usize>, total: usize) -> usize {
    requested.unwrap_or_else(|| (total as f64 * DEFAULT_TRAIN_FRACTION).round() as usize)
}

/// Divergence happens after validation, so it is a pipeline failure;
/// everything else `train` reports is an input problem.
fn map_training_error(error: LearnError) -> CliError {
    match error {
        LearnError::TrainingDiverged { .. } => settings::pipeline(error),
        other => settings::usage(other),
    }
}

fn print_summary(
    output: &Path,
    selection: &SelectionReport,
    report: &TrainReport,
) -> Result<(), CliError> {
    settings::print_line(&format!(
        "selected {} of {} features ({} pruned): {}",
        selection.selected.len(),
        selection.columns.len(),
        selection.pruned.len(),
        selection.selected.join(", ")
    ))?;
    settings::print_line(&format!(
        "trained on {} rows, tested on {}",
        report.train_rows, report.test_rows
    ))?;
    let eval = &report.evaluation;
    settings::print_line(&format!(
        "accuracy {:.2}% ({}/{})  precision {:.3}  recall {:.3}  f1 {:.3}",
        eval.accuracy_percent(),
        eval.total() - eval.misclassifications(),
        eval.total(),
        eval.precision,
        eval.recall,
        eval.f1
    ))?;
    settings::print_line(&format!(
        "confusion: tp {}  fp {}  fn {}  tn {}",
        eval.true_positives, eval.false_positives, eval.false_negatives, eval.true_negatives
    ))?;
    settings::print_line(&format!(
        "final training loss {:.6} after {} epochs",
        report.trace.final_loss(),
        report.trace.losses.len()
    ))?;
    settings::print_line(&format!(
        "model -> {} (sha256 {})",
        output.display(),
        report.model_digest
    ))
}
