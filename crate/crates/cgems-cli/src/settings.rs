//! Shared command-line plumbing: error/exit-code policy, the optional
//! settings file, provenance stamps, and output helpers.

use std::fmt;
use std::path::{Path, PathBuf};

use cgems::learn::artifact::sha256_hex;
use cgems::profile::LanguageProfile;
use cgems::runner::RunnerConfig;
use serde::Serialize;

/// Environment variable naming a runner configuration file. A `--runner`
/// flag takes precedence over it; it takes precedence over the settings
/// file.
pub const RUNNER_ENV: &str = "CGEMS_RUNNER";

/// Version stamped into every JSON document this tool writes.
pub const OUTPUT_SCHEMA_VERSION: u32 = 1;

/// What went wrong, split by exit code: unusable invocation or input
/// (exit 2) versus a failure while processing valid input (exit 1).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Pipeline(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Pipeline(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) | CliError::Pipeline(message) => f.write_str(message),
        }
    }
}

/// Shorthand for an input/invocation problem (exit code 2).
pub fn usage(message: impl fmt::Display) -> CliError {
    CliError::Usage(message.to_string())
}

/// Shorthand for a processing failure (exit code 1).
pub fn pipeline(message: impl fmt::Display) -> CliError {
    CliError::Pipeline(message.to_string())
}

/// Optional JSON settings file. Every field may be omitted; explicit
/// command-line flags always win over file values.
#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub profile: Option<PathBuf>,
    pub runner: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub threshold: Option<f64>,
    pub features: Option<String>,
    pub seed: Option<u64>,
    pub train_size: Option<usize>,
    pub smote_neighbours: Option<usize>,
    pub smote_after_split: Option<bool>,
    pub epochs: Option<usize>,
    pub learning_rate: Option<f64>,
    pub hidden: Option<Vec<usize>>,
    pub samples: Option<usize>,
    pub kernel_width: Option<f64>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<FileConfig, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read settings file {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| usage(format!("settings file {}: {e}", path.display())))
    }
}

/// How many features the selection stage should end with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureSpec {
    /// No selection: keep every column.
    All,
    /// Prune correlated columns, then keep this many by F-score.
    Count(usize),
}

impl fmt::Display for FeatureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeatureSpec::All => f.write_str("all"),
            FeatureSpec::Count(k) => write!(f, "{k}"),
        }
    }
}

pub fn parse_features(text: &str) -> Result<FeatureSpec, CliError> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(FeatureSpec::All);
    }
    match text.parse::<usize>() {
        Ok(count) if count >= 1 => Ok(FeatureSpec::Count(count)),
        _ => Err(usage(format!(
            "--features must be a positive count or 'all', got '{text}'"
        ))),
    }
}

/// Resolve the language profile: flag, then settings file, then the
/// built-in Python profile.
pub fn resolve_profile(
    flag: Option<&Path>,
    file: &FileConfig,
) -> Result<LanguageProfile, CliError> {
    match flag.or(file.profile.as_deref()) {
        Some(path) => LanguageProfile::from_file(path)
            .map_err(|e| usage(format!("profile {}: {e}", path.display()))),
        None => Ok(LanguageProfile::python()),
    }
}

/// Resolve the optional runner: `--runner` flag, then the `CGEMS_RUNNER`
/// environment variable, then the settings file. Returns the path the
/// configuration came from alongside the configuration itself.
pub fn resolve_runner(
    flag: Option<&Path>,
    file: &FileConfig,
) -> Result<Option<(PathBuf, RunnerConfig)>, CliError> {
    let from_env = std::env::var_os(RUNNER_ENV).map(PathBuf::from);
    let path = flag
        .map(Path::to_path_buf)
        .or(from_env)
        .or_else(|| file.runner.clone());
    let Some(path) = path else {
        return Ok(None);
    };
    let config = RunnerConfig::from_file(&path)
        .map_err(|e| usage(format!("runner {}: {e}", path.display())))?;
    Ok(Some((path, config)))
}

pub fn read_source(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

/// Provenance stamp written next to every output: which tool at which
/// version ran which command, with which seed, under which settings.
#[derive(Debug, Clone, Serialize)]
pub struct RunInfo {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub library_version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// SHA-256 of the effective settings, encoded as JSON.
    pub config_hash: String,
}

impl RunInfo {
    pub fn new<S: Serialize>(
        command: &'static str,
        seed: Option<u64>,
        effective: &S,
    ) -> Result<RunInfo, CliError> {
        let encoded = serde_json::to_string(effective)
            .map_err(|e| pipeline(format!("cannot encode settings: {e}")))?;
        Ok(RunInfo {
            schema_version: OUTPUT_SCHEMA_VERSION,
            tool: "cgems",
            version: env!("CARGO_PKG_VERSION"),
            library_version: cgems::VERSION,
            command,
            seed,
            config_hash: sha256_hex(encoded.as_bytes()),
        })
    }
}

/// `<dir>/<stem>.run-info.json` for an output written to `path`.
pub fn run_info_path(output: &Path) -> PathBuf {
    sibling(output, "run-info")
}

/// `<dir>/<stem>.<suffix>.json` for an output written to `path`.
pub fn sibling(output: &Path, suffix: &str) -> PathBuf {
    let stem = output
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("output");
    output.with_file_name(format!("{stem}.{suffix}.json"))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| pipeline(format!("cannot encode output: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| pipeline(format!("cannot write {}: {e}", path.display())))
}

/// Encode `value` with the output schema version stamped into the root
/// object. Non-object values are passed through unchanged.
fn versioned<T: Serialize>(value: &T) -> Result<serde_json::Value, CliError> {
    let mut doc = serde_json::to_value(value)
        .map_err(|e| pipeline(format!("cannot encode output: {e}")))?;
    if let serde_json::Value::Object(map) = &mut doc {
        map.insert(
            "schema_version".to_string(),
            serde_json::Value::from(OUTPUT_SCHEMA_VERSION),
        );
    }
    Ok(doc)
}

/// Write a report document: `value` with the schema version stamped in.
pub fn write_report<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    write_json(path, &versioned(value)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| pipeline(format!("cannot write {}: {e}", path.display())))
}

/// Print one line to standard output. A closed pipe (e.g. `| head`)
/// silently discards the line instead of failing the run.
pub fn print_line(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    match writeln!(std::io::stdout(), "{text}") {
        Ok(()) => Ok(()),
        Err(error) if error.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(error) => Err(pipeline(format!("cannot write to standard output: {error}"))),
    }
}

/// Deliver a report: to `path` with its run info as a sibling file, or
/// to standard output with the run info embedded under `"run_info"`.
pub fn emit<T: Serialize>(
    output: Option<&Path>,
    value: &T,
    info: &RunInfo,
) -> Result<(), CliError> {
    match output {
        Some(path) => {
            write_report(path, value)?;
            write_json(&run_info_path(path), info)
        }
        None => {
            let encoded = versioned(value)?;
            let info_value = serde_json::to_value(info)
                .map_err(|e| pipeline(format!("cannot encode run info: {e}")))?;
            let doc = match encoded {
                serde_json::Value::Object(mut map) => {
                    map.insert("run_info".to_string(), info_value);
                    serde_json::Value::Object(map)
                }
                other => serde_json::json!({ "result": other, "run_info": info_value }),
            };
            let text = serde_json::to_string_pretty(&doc)
                .map_err(|e| pipeline(format!("cannot encode output: {e}")))?;
            print_line(&text)
        }
    }
}

/// A required path that may come from a flag or the settings file.
pub fn require_path(
    flag: Option<&Path>,
    fallback: Option<&Path>,
    name: &str,
) -> Result<PathBuf, CliError> {
    flag.or(fallback).map(Path::to_path_buf).ok_or_else(|| {
        usage(format!("missing --{name} (and the settings file provides no value)"))
    })
}
