//! Dynamic metrics via an external runner process.
//!
//! The crate never interprets the measured language itself. Instead a
//! [`RunnerConfig`] supplies one command template per mode — `check`,
//! `run` and `coverage` — with a `{source}` placeholder for the program
//! path. Templates are split on whitespace and executed directly (no
//! shell), with a scrubbed environment containing only allow-listed
//! variables, a bounded capture of stdout/stderr, and a wall-clock
//! timeout enforced by polling, so a runaway program can never hang a
//! collection run.
//!
//! Protocol expected of the runner command:
//!
//! * `check` exits 0 iff the program parses/compiles; errors go to
//!   stderr, one line per error, each containing the word `Error`.
//! * `run` exits 0 iff the program executes successfully.
//! * `coverage` additionally prints, as the final stdout line, a JSON
//!   object `{"executed_lines": [...], "executable_lines": [...]}`.
//!
//! A conforming Python implementation ships with this project
//! (`tools/pyrunner.py`).

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which runner entry point to invoke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunMode {
    Check,
    Run,
    Coverage,
}

/// Configuration for the external runner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunnerConfig {
    /// Command template for syntax checking, e.g.
    /// `python3 tools/pyrunner.py check {source}`.
    pub check: String,
    /// Command template for plain execution.
    pub run: String,
    /// Command template for traced execution with a coverage summary.
    pub coverage: String,
    /// Wall-clock budget per invocation, in milliseconds.
    pub timeout_ms: u64,
    /// Capture cap per stream; output beyond this is drained and dropped.
    pub max_output_bytes: usize,
    /// Environment variables passed through to the child; everything else
    /// is scrubbed.
    pub env_allowlist: Vec<String>,
    /// Directory to run in; a fresh temporary directory when absent.
    pub working_dir: Option<PathBuf>,
    /// Optional file piped to the child's stdin (otherwise empty).
    pub stdin_file: Option<PathBuf>,
}

impl Default for RunnerConfig {
    fn default() -> Self {
        RunnerConfig {
            check: String::new(),
            run: String::new(),
            coverage: String::new(),
            timeout_ms: 5_000,
            max_output_bytes: 1 << 20,
            env_allowlist: ["PATH", "HOME", "LANG", "LC_ALL", "PYTHONHASHSEED"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            working_dir: None,
            stdin_file: None,
        }
    }
}

impl RunnerConfig {
    /// Config invoking a conforming runner script through `python3`.
    pub fn for_script(script: &Path) -> Self {
        let script = script.display();
        RunnerConfig {
            check: format!("python3 {script} check {{source}}"),
            run: format!("python3 {script} run {{source}}"),
            coverage: format!("python3 {script} coverage {{source}}"),
            ..RunnerConfig::default()
        }
    }

    /// Parse a config from JSON (missing fields take defaults) and
    /// validate it.
    pub fn from_json(text: &str) -> Result<Self, RunnerError> {
        let config: RunnerConfig =
            serde_json::from_str(text).map_err(|e| RunnerError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Load a config from a JSON file and validate it.
    pub fn from_file(path: &Path) -> Result<Self, RunnerError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunnerError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), RunnerError> {
        for (name, template) in
            [("check", &self.check), ("run", &self.run), ("coverage", &self.coverage)]
        {
            if template.split_whitespace().next().is_none() {
                return Err(RunnerError::Config(format!("{name} template is empty")));
            }
            if !template.contains("{source}") {
                return Err(RunnerError::Config(format!(
                    "{name} template is missing the {{source}} placeholder"
                )));
            }
        }
        if self.timeout_ms == 0 {
            return Err(RunnerError::Config("timeout_ms must be positive".to_string()));
        }
        Ok(())
    }

    fn template(&self, mode: RunMode) -> &str {
        match mode {
            RunMode::Check => &self.check,
            RunMode::Run => &self.run,
            RunMode::Coverage => &self.coverage,
        }
    }
}

/// Errors from driving the external runner.
#[derive(Debug, Error)]
pub enum RunnerError {
    #[error("invalid runner configuration: {0}")]
    Config(String),
    #[error("failed to start runner {program:?}: {source}")]
    Spawn {
        program: String,
        #[source]
        source: std::io::Error,
    },
    #[error("runner did not finish within {timeout_ms} ms")]
    Timeout { timeout_ms: u64 },
    #[error("program execution failed with status {status}: {diagnostics}")]
    Execution { status: i32, diagnostics: String },
    #[error("coverage output is not a valid summary: {0}")]
    CoverageParse(String),
    #[error("i/o error while supervising the runner: {0}")]
    Io(#[from] std::io::Error),
}

/// Result of a compile/syntax check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompileOutcome {
    /// True when the check exited 0.
    pub compiling: bool,
    /// Number of reported errors; at least 1 when the check failed.
    pub error_count: u32,
    /// Captured stderr, for reports.
    pub diagnostics: String,
}

/// Result of timed execution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExecutionOutcome {
    /// Median wall time of the runs, in microseconds.
    pub wall_time_us: u64,
    /// Individual run times, in microseconds.
    pub runs: Vec<u64>,
}

/// Result of a coverage run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageOutcome {
    /// Percentage of executable lines executed, 0–100. A program with no
    /// executable lines counts as fully covered.
    pub percent: f64,
    pub executed_lines: Vec<u32>,
    pub executable_lines: Vec<u32>,
}

#[derive(Debug, Deserialize)]
struct CoverageSummary {
    executed_lines: Vec<u32>,
    executable_lines: Vec<u32>,
}

/// Syntax-check `source` with the configured runner.
///
/// A failing check is a *result* (``compiling = false``), not an error;
/// errors mean the runner itself could not be driven.
pub fn check_compiles(config: &RunnerConfig, source: &Path) -> Result<CompileOutcome, RunnerError> {
    let exec = invoke(config, RunMode::Check, source)?;
    let diagnostics = String::from_utf8_lossy(&exec.stderr).into_owned();
    if exec.status == 0 {
        Ok(CompileOutcome { compiling: true, error_count: 0, diagnostics })
    } else {
        let reported = diagnostics.lines().filter(|l| l.contains("Error")).count() as u32;
        Ok(CompileOutcome { compiling: false, error_count: reported.max(1), diagnostics })
    }
}

/// Execute `source` three times and report the median wall time.
pub fn measure_execution(
    config: &RunnerConfig,
    source: &Path,
) -> Result<ExecutionOutcome, RunnerError> {
    let mut runs = Vec::with_capacity(3);
    for _ in 0..3 {
        let exec = invoke(config, RunMode::Run, source)?;
        if exec.status != 0 {
            return Err(RunnerError::Execution {
                status: exec.status,
                diagnostics: String::from_utf8_lossy(&exec.stderr).into_owned(),
            });
        }
        runs.push(exec.wall_time.as_micros() as u64);
    }
    let mut sorted = runs.clone();
    sorted.sort_unstable();
    Ok(ExecutionOutcome { wall_time_us: sorted[runs.len() / 2], runs })
}

/// Execute `source` under the coverage tracer and parse its summary.
pub fn measure_coverage(
    config: &RunnerConfig,
    source: &Path,
) -> Result<CoverageOutcome, RunnerError> {
    let exec = invoke(config, RunMode::Coverage, source)?;
    if exec.status != 0 {
        return Err(RunnerError::Execution {
            status: exec.status,
            diagnostics: String::from_utf8_lossy(&exec.stderr).into_owned(),
        });
    }
    let stdout = String::from_utf8_lossy(&exec.stdout);
    // The measured program may print its own output first; the summary is
    // the final non-empty line.
    let line = stdout
        .lines()
        .rev()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| RunnerError::CoverageParse("runner printed no summary".to_string()))?;
    let summary: CoverageSummary =
        serde_json::from_str(line).map_err(|e| RunnerError::CoverageParse(e.to_string()))?;
    let executable: std::collections::BTreeSet<u32> =
        summary.executable_lines.iter().copied().collect();
    let executed: std::collections::BTreeSet<u32> = summary
        .executed_lines
        .iter()
        .copied()
        .filter(|l| executable.contains(l))
        .collect();
    let percent = if executable.is_empty() {
        100.0
    } else {
        100.0 * executed.len() as f64 / executable.len() as f64
    };
    Ok(CoverageOutcome {
        percent,
        executed_lines: executed.into_iter().collect(),
        executable_lines: executable.into_iter().collect(),
    })
}

struct RawExec {
    status: i32,
    stdout: Vec<u8>,
    stderr: Vec<u8>,
    wall_time: Duration,
}

/// Run one mode of the runner on `source`, enforcing environment, output
/// and time limits.
fn invoke(config: &RunnerConfig, mode: RunMode, source: &Path) -> Result<RawExec, RunnerError> {
    config.validate()?;
    let source_text = source.to_string_lossy();
    let argv: Vec<String> = config
        .template(mode)
        .split_whitespace()
        .map(|part| part.replace("{source}", &source_text))
        .collect();
    let program = argv[0].clone();

    let mut command = Command::new(&program);
    command.args(&argv[1..]);
    command.env_clear();
    for key in &config.env_allowlist {
        if let Ok(value) = std::env::var(key) {
            command.env(key, value);
        }
    }
    // Hold the temp dir guard until the child has finished.
    let _scratch;
    match &config.working_dir {
        Some(dir) => {
            command.current_dir(dir);
        }
        None => {
            let dir = tempfile::tempdir()?;
            command.current_dir(dir.path());
            _scratch = dir;
        }
    }
    match &config.stdin_file {
        Some(path) => {
            command.stdin(std::fs::File::open(path)?);
        }
        None => {
            command.stdin(Stdio::null());
        }
    }
    command.stdout(Stdio::piped()).stderr(Stdio::piped());

    let started = Instant::now();
    let mut child = command
        .spawn()
        .map_err(|source| RunnerError::Spawn { program: program.clone(), source })?;
    let stdout_reader = capped_reader(child.stdout.take(), config.max_output_bytes);
    let stderr_reader = capped_reader(child.stderr.take(), config.max_output_bytes);

    let deadline = started + Duration::from_millis(config.timeout_ms);
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break status;
        }
        if Instant::now() >= deadline {
            // Best effort: kill, reap, then report the timeout.
            let _ = child.kill();
            let _ = child.wait();
            let _ = stdout_reader.join();
            let _ = stderr_reader.join();
            return Err(RunnerError::Timeout { timeout_ms: config.timeout_ms });
        }
        std::thread::sleep(Duration::from_millis(1));
    };
    let wall_time = started.elapsed();
    let stdout = stdout_reader.join().unwrap_or_default();
    let stderr = stderr_reader.join().unwrap_or_default();
    Ok(RawExec { status: status.code().unwrap_or(-1), stdout, stderr, wall_time })
}

/// Read a child stream on a helper thread, keeping at most `cap` bytes
/// but always draining to EOF so the child never blocks on a full pipe.
fn capped_reader<R: Read + Send + 'static>(
    stream: Option<R>,
    cap: usize,
) -> std::thread::JoinHandle<Vec<u8>> {
    std::thread::spawn(move || {
        let mut captured = Vec::new();
        let Some(mut stream) = stream else { return captured };
        let mut buffer = [0u8; 8192];
        loop {
            match stream.read(&mut buffer) {
                Ok(0) | Err(_) => break,
                Ok(n) => {
                    let room = cap.saturating_sub(captured.len());
                    captured.extend_from_slice(&buffer[..n.min(room)]);
                }
            }
        }
        captured
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    /// Config whose three modes all simply run the source file with
    /// python3; good enough to exercise the process plumbing.
    fn direct_python() -> RunnerConfig {
        RunnerConfig {
            check: "python3 {source}".to_string(),
            run: "python3 {source}".to_string(),
            coverage: "python3 {source}".to_string(),
            timeout_ms: 10_000,
            ..RunnerConfig::default()
        }
    }

    fn write_program(body: &str) -> (tempfile::TempDir, PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("prog.py");
        std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
        (dir, path)
    }

    #[test]
    fn successful_run_measures_time() {
        let (_dir, path) = write_program("print('ok')\n");
        let outcome = measure_execution(&direct_python(), &path).unwrap();
        assert_eq!(outcome.runs.len(), 3);
        assert!(outcome.wall_time_us > 0);
        let mut sorted = outcome.runs.clone();
        sorted.sort_unstable();
        assert_eq!(outcome.wall_time_us, sorted[1]);
    }

    #[test]
    fn failing_program_is_an_execution_error_with_diagnostics() {
        let (_dir, path) = write_program("raise ValueError('boom')\n");
        let err = measure_execution(&direct_python(), &path).unwrap_err();
        match err {
            RunnerError::Execution { status, diagnostics } => {
                assert_ne!(status, 0);
                assert!(diagnostics.contains("ValueError"), "got {diagnostics:?}");
            }
            other => panic!("expected execution error, got {other:?}"),
        }
    }

    #[test]
    fn timeout_kills_the_child_promptly() {
        let (_dir, path) = write_program("import time\ntime.sleep(30)\n");
        let config = RunnerConfig { timeout_ms: 300, ..direct_python() };
        let started = Instant::now();
        let err = measure_execution(&config, &path).unwrap_err();
        let elapsed = started.elapsed();
        assert!(matches!(err, RunnerError::Timeout { timeout_ms: 300 }));
        // Must come back well before twice the budget.
        assert!(elapsed < Duration::from_millis(600), "took {elapsed:?}");
    }

    #[test]
    fn output_is_capped_without_deadlocking() {
        // 4 MiB of output against a 64 KiB cap: the child must still
        // finish (the reader drains past the cap) and capture stays small.
        let (_dir, path) = write_program("print('x' * (4 * 1024 * 1024))\n");
        let config = RunnerConfig { max_output_bytes: 64 * 1024, ..direct_python() };
        let outcome = measure_execution(&config, &path);
        assert!(outcome.is_ok(), "got {outcome:?}");
    }

    #[test]
    fn missing_runner_binary_is_a_spawn_error() {
        let (_dir, path) = write_program("print('hi')\n");
        let config = RunnerConfig {
            run: "definitely-not-a-real-binary-4419 {source}".to_string(),
            check: "definitely-not-a-real-binary-4419 {source}".to_string(),
            coverage: "definitely-not-a-real-binary-4419 {source}".to_string(),
            ..RunnerConfig::default()
        };
        let err = measure_execution(&config, &path).unwrap_err();
        assert!(matches!(err, RunnerError::Spawn { .. }), "got {err:?}");
    }

    #[test]
    fn environment_is_scrubbed_to_the_allowlist() {
        let (_dir, path) = write_program(
            "import os\nassert 'CGEMS_RUNNER_TEST_SECRET' not in os.environ\nprint('clean')\n",
        );
        std::env::set_var("CGEMS_RUNNER_TEST_SECRET", "leak");
        let outcome = measure_execution(&direct_python(), &path);
        std::env::remove_var("CGEMS_RUNNER_TEST_SECRET");
        assert!(outcome.is_ok(), "got {outcome:?}");
    }

    #[test]
    fn config_validation_catches_bad_templates() {
        let mut config = direct_python();
        config.run = "python3".to_string();
        assert!(matches!(config.validate(), Err(RunnerError::Config(_))));
        config.run = String::new();
        assert!(matches!(config.validate(), Err(RunnerError::Config(_))));
        let mut config = direct_python();
        config.timeout_ms = 0;
        assert!(config.validate().is_err());
    }

    #[test]
    fn config_json_round_trip_with_defaults() {
        let text = r#"{
            "check": "python3 r.py check {source}",
            "run": "python3 r.py run {source}",
            "coverage": "python3 r.py coverage {source}"
        }"#;
        let config = RunnerConfig::from_json(text).unwrap();
        assert_eq!(config.timeout_ms, 5_000);
        assert!(config.env_allowlist.contains(&"PATH".to_string()));
        assert!(RunnerConfig::from_json("{\"check\": \"x {source}\"}").is_err());
    }

    #[test]
    fn coverage_summary_must_be_valid_json() {
        let (_dir, path) = write_program("print('not json')\n");
        let err = measure_coverage(&direct_python(), &path).unwrap_err();
        assert!(matches!(err, RunnerError::CoverageParse(_)), "got {err:?}");
    }
}
