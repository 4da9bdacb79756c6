//! `cgems collect` — measure every program in a corpus manifest and
//! write the labelled feature table as CSV.

use std::path::{Path, PathBuf};

use cgems::dataset::{collect, csvio, load_manifest};
use clap::Args;
use serde::Serialize;

use crate::settings::{self, CliError, FileConfig, RunInfo};

#[derive(Debug, Args)]
pub struct CollectArgs {
    /// Corpus manifest listing the programs to measure.
    #[arg(long, short, value_name = "FILE")]
    pub manifest: Option<PathBuf>,
    /// Feature table (CSV) to write.
    #[arg(long, short, value_name = "FILE")]
    pub output: PathBuf,
    /// Language profile JSON; defaults to the built-in Python profile.
    #[arg(long, value_name = "FILE")]
    pub profile: Option<PathBuf>,
    /// Runner configuration enabling the compile/execution/coverage
    /// measures; without one those features are recorded as 0 with their
    /// validity flags cleared.
    #[arg(long, value_name = "FILE")]
    pub runner: Option<PathBuf>,
    /// Number of programs measured concurrently.
    #[arg(long, short, value_name = "N")]
    pub jobs: Option<usize>,
}

#[derive(Serialize)]
struct Effective<'a> {
    manifest: &'a Path,
    output: &'a Path,
    profile: Option<&'a Path>,
    runner: Option<&'a Path>,
    jobs: usize,
}

pub fn run(args: &CollectArgs, file_config: &FileConfig) -> Result<(), CliError> {
    let profile = settings::resolve_profile(args.profile.as_deref(), file_config)?;
    let runner = settings::resolve_runner(args.runner.as_deref(), file_config)?;
    // The runner may execute programs from a scratch directory, so the
    // manifest (and with it every entry path) must be absolute.
    let manifest = settings::require_path(
        args.manifest.as_deref(),
        file_config.manifest.as_deref(),
        "manifest",
    )?;
    let manifest = manifest
        .canonicalize()
        .map_err(|e| settings::usage(format!("manifest {}: {e}", manifest.display())))?;
    let entries = load_manifest(&manifest).map_err(settings::usage)?;

    let jobs = args
        .jobs
        .or(file_config.jobs)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if jobs == 0 {
        return Err(settings::usage("--jobs must be at least 1"));
    }

    let report = collect(
        &entries,
        &profile,
        runner.as_ref().map(|(_, config)| config),
        jobs,
    );
    for issue in &report.issues {
        eprintln!("warning: {} [{}]: {}", issue.id, issue.stage, issue.message);
    }
    csvio::write_csv(&args.output, &report.records).map_err(settings::pipeline)?;

    let effective = Effective {
        manifest: &manifest,
        output: &args.output,
        profile: args.profile.as_deref().or(file_config.profile.as_deref()),
        runner: runner.as_ref().map(|(path, _)| path.as_path()),
        jobs,
    };
    let info = RunInfo::new("collect", None, &effective)?;
    settings::write_json(&settings::run_info_path(&args.output), &info)?;

    settings::print_line(&format!(
        "measured {} of {} programs -> {}",
        report.records.len(),
        entries.len(),
        args.output.display()
    ))?;
    if !report.issues.is_empty() {
        settings::print_line(&format!(
            "{} issue(s) reported on standard error",
            report.issues.len()
        ))?;
    }
    Ok(())
}
