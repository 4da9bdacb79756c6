//! `cgems analyze` — static metrics for one source file, plus dynamic
//! measures when a runner is configured.

use std::path::{Path, PathBuf};

use cgems::blocks::{block_structure, BlockTree};
use cgems::lexer::tokenize;
use cgems::metrics::{
    cyclomatic, halstead, maintainability_index, raw_metrics, CyclomaticResult, HalsteadMetrics,
    MaintainabilityScore, RawMetrics,
};
use cgems::runner::{
    check_compiles, measure_coverage, measure_execution, CompileOutcome, CoverageOutcome,
    ExecutionOutcome, RunnerConfig,
};
use clap::Args;
use serde::Serialize;

use crate::settings::{self, CliError, FileConfig, RunInfo};

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Source file to measure.
    pub file: PathBuf,
    /// Language profile JSON; defaults to the built-in Python profile.
    #[arg(long, value_name = "FILE")]
    pub profile: Option<PathBuf>,
    /// Runner configuration enabling the compile/execution/coverage
    /// measures; without one only static metrics are reported.
    #[arg(long, value_name = "FILE")]
    pub runner: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    program: String,
    raw: RawMetrics,
    halstead: HalsteadMetrics,
    cyclomatic: CyclomaticResult,
    maintainability: MaintainabilityScore,
    /// Set when the tokenizer reported an error; metrics still cover the
    /// tokens that were recovered.
    #[serde(skip_serializing_if = "Option::is_none")]
    lexical_error: Option<String>,
    /// Set when block recovery failed and complexity fell back to one
    /// module-level block.
    #[serde(skip_serializing_if = "Option::is_none")]
    structure_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dynamic: Option<DynamicReport>,
}

#[derive(Serialize)]
struct DynamicReport {
    compile: CompileOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    execution: Option<ExecutionOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    execution_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coverage: Option<CoverageOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coverage_error: Option<String>,
}

#[derive(Serialize)]
struct Effective<'a> {
    file: &'a Path,
    profile: Option<&'a Path>,
    runner: Option<&'a Path>,
}

pub fn run(args: &AnalyzeArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let profile = settings::resolve_profile(args.profile.as_deref(), file_config)?;
    let runner = settings::resolve_runner(args.runner.as_deref(), file_config)?;
    let source = settings::read_source(&args.file)?;

    let stream = tokenize(&source, &profile);
    let lexical_error = stream.error.as_ref().map(|e| e.to_string());
    let (tree, structure_note) = match block_structure(&stream, &profile) {
        Ok(tree) => (tree, None),
        Err(error) => (
            BlockTree::module_only(stream.physical_lines),
            Some(format!("block recovery failed ({error}); complexity measured at module level")),
        ),
    };
    let raw = raw_metrics(&stream);
    let hal = halstead(&stream, &profile);
    let complexity = cyclomatic(&stream, &tree, &profile);
    let maintainability = maintainability_index(&raw, &hal, &complexity);

    // The runner may execute from a scratch directory, so hand it an
    // absolute source path.
    let dynamic = match &runner {
        Some((_, config)) => {
            let absolute = args.file.canonicalize().map_err(|e| {
                settings::usage(format!("cannot resolve {}: {e}", args.file.display()))
            })?;
            Some(run_dynamic(config, &absolute)?)
        }
        None => None,
    };

    let effective = Effective {
        file: &args.file,
        profile: args.profile.as_deref().or(file_config.profile.as_deref()),
        runner: runner.as_ref().map(|(path, _)| path.as_path()),
    };
    let info = RunInfo::new("analyze", None, &effective)?;
    let program = args
        .file
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("program")
        .to_string();
    let report = AnalyzeReport {
        program,
        raw,
        halstead: hal,
        cyclomatic: complexity,
        maintainability,
        lexical_error,
        structure_note,
        dynamic,
    };
    settings::emit(args.output.as_deref(), &report, &info)
}

/// Drive the runner. A failed compile check is a result, not an error;
/// execution and coverage failures are recorded per-measure so a crashing
/// program still yields a report.
fn run_dynamic(config: &RunnerConfig, source: &Path) -> Result<DynamicReport, CliError> {
    let compile = check_compiles(config, source)
        .map_err(|e| settings::pipeline(format!("compile check: {e}")))?;
    let mut report = DynamicReport {
        compile,
        execution: None,
        execution_error: None,
        coverage: None,
        coverage_error: None,
    };
    if report.compile.compiling {
        match measure_execution(config, source) {
            Ok(outcome) => report.execution = Some(outcome),
            Err(error) => report.execution_error = Some(error.to_string()),
        }
        match measure_coverage(config, source) {
            Ok(outcome) => report.coverage = Some(outcome),
            Err(error) => report.coverage_error = Some(error.to_string()),
        }
    }
    Ok(report)
}
