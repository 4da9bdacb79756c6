//! `cgems` — measure machine-generated source code, learn a quality
//! classifier from the measurements, and explain its predictions.
//!
//! Exit codes: 0 on success, 1 when a pipeline step fails on valid
//! input, 2 for unusable invocations or inputs.

mod chart;
mod commands;
mod settings;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{analyze, collect, compare, explain, predict, select, train};
use settings::{CliError, FileConfig};

#[derive(Parser)]
#[command(
    name = "cgems",
    version,
    about = "Code quality metrics and a learned quality classifier for generated programs"
)]
struct Cli {
    /// JSON settings file; explicit flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Static (and optionally dynamic) metrics for one source file.
    Analyze(analyze::AnalyzeArgs),
    /// Similarity of a generated program to reference and corrected versions.
    Compare(compare::CompareArgs),
    /// Measure a corpus manifest into a labelled feature table (CSV).
    Collect(collect::CollectArgs),
    /// Correlation pruning and F-test ranking for a feature table.
    SelectFeatures(select::SelectArgs),
    /// Train the quality classifier on a feature table.
    Train(train::TrainArgs),
    /// Classify feature records with a saved model.
    Predict(predict::PredictArgs),
    /// Explain one prediction with a local linear surrogate.
    Explain(explain::ExplainArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file_config = match FileConfig::load(cli.config.as_deref()) {
        Ok(config) => config,
        Err(error) => return fail(&error),
    };
    let result = match &cli.command {
        Command::Analyze(args) => analyze::run(args, &file_config),
        Command::Compare(args) => compare::run(args, &file_config),
        Command::Collect(args) => collect::run(args, &file_config),
        Command::SelectFeatures(args) => select::run(args, &file_config),
        Command::Train(args) => train::run(args, &file_config),
        Command::Predict(args) => predict::run(args, &file_config),
        Command::Explain(args) => explain::run(args, &file_config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => fail(&error),
    }
}

fn fail(error: &CliError) -> ExitCode {
    eprintln!("error: {error}");
    ExitCode::from(error.exit_code())
}
