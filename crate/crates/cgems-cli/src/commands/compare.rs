//! `cgems compare` — similarity of a generated program to a reference
//! solution and, optionally, to a corrected version of itself.
//!
//! Numeric measures are keyed by their canonical feature-table column
//! names so the report lines up with `collect` output.

use std::path::{Path, PathBuf};

use cgems::similarity::{similarity_report, RougeScore, SimilarityReport};
use clap::Args;
use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::settings::{self, CliError, FileConfig, RunInfo};

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Generated program to score.
    pub generated: PathBuf,
    /// Reference solution the program is scored against.
    #[arg(long, short, value_name = "FILE")]
    pub reference: PathBuf,
    /// Minimally corrected version of the program; enables the edit
    /// measures.
    #[arg(long, value_name = "FILE")]
    pub corrected: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct CompareReport {
    generated: String,
    reference: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    corrected: Option<String>,
    /// Similarity measures keyed by canonical column name. The edit
    /// measures are present only when a corrected version was supplied.
    features: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    notice: Option<String>,
}

#[derive(Serialize)]
struct Effective<'a> {
    generated: &'a Path,
    reference: &'a Path,
    corrected: Option<&'a Path>,
}

pub fn run(args: &CompareArgs, _file_config: &FileConfig) -> Result<(), CliError> {
    let generated = settings::read_source(&args.generated)?;
    let reference = settings::read_source(&args.reference)?;
    let corrected = args
        .corrected
        .as_deref()
        .map(settings::read_source)
        .transpose()?;

    let similarity = similarity_report(&generated, Some(&reference), corrected.as_deref());
    let features = feature_map(&similarity, corrected.is_some());
    let notice = corrected
        .is_none()
        .then(|| "no corrected version supplied; edit measures omitted".to_string());

    let effective = Effective {
        generated: &args.generated,
        reference: &args.reference,
        corrected: args.corrected.as_deref(),
    };
    let info = RunInfo::new("compare", None, &effective)?;
    let report = CompareReport {
        generated: args.generated.display().to_string(),
        reference: args.reference.display().to_string(),
        corrected: args.corrected.as_ref().map(|p| p.display().to_string()),
        features,
        notice,
    };
    settings::emit(args.output.as_deref(), &report, &info)
}

fn feature_map(similarity: &SimilarityReport, with_edits: bool) -> Map<String, Value> {
    let mut map = Map::new();
    let mut put = |name: &str, value: f64| {
        let number = Number::from_f64(value).unwrap_or_else(|| Number::from(0));
        map.insert(name.to_string(), Value::Number(number));
    };
    if with_edits {
        put("Sequence Ratio", similarity.sequence_ratio);
    }
    put("BLEU", similarity.bleu);
    put("Cosine Similarity", similarity.cosine_angle);
    put("Soft Cosine Similarity", similarity.soft_cosine_angle);
    put_rouge(&mut map, "ROUGE-1", &similarity.rouge_1);
    put_rouge(&mut map, "ROUGE-2", &similarity.rouge_2);
    put_rouge(&mut map, "ROUGE-L", &similarity.rouge_l);
    if with_edits {
        map.insert(
            "Edits".to_string(),
            Value::Number(Number::from(similarity.edit_count)),
        );
    }
    map
}

fn put_rouge(map: &mut Map<String, Value>, prefix: &str, score: &RougeScore) {
    for (suffix, value) in [
        ("Precision", score.precision),
        ("Recall", score.recall),
        ("F1", score.f1),
    ] {
        let number = Number::from_f64(value).unwrap_or_else(|| Number::from(0));
        map.insert(format!("{prefix} {suffix}"), Value::Number(number));
    }
}
