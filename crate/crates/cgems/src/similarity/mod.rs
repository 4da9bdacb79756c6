//! Similarity between a generated program and its reference material.
//!
//! * [`diff`] — Ratcliff–Obershelp sequence matching: the character-level
//!   similarity ratio and the line-level edit count against a corrected
//!   version.
//! * [`ngram`] — BLEU and ROUGE-1/2/L against a reference solution.
//! * [`vector`] — (soft-)cosine similarity angles against a reference.

pub mod diff;
pub mod ngram;
pub mod vector;

use serde::{Deserialize, Serialize};

pub use diff::{edit_count, sequence_ratio, Opcode, OpTag, SequenceMatcher};
pub use ngram::{bleu, rouge, RougeScore, RougeVariant};
pub use vector::{cosine_angle, doc_vector, levenshtein, soft_cosine_angle, DocVector};

/// Every similarity measure for one generated program.
///
/// `sequence_ratio` and `edit_count` compare against the *corrected*
/// version of the program (a program needing no correction scores ratio 1
/// with 0 edits); everything else compares against the *reference*
/// solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityReport {
    pub sequence_ratio: f64,
    pub edit_count: usize,
    pub bleu: f64,
    pub rouge_1: RougeScore,
    pub rouge_2: RougeScore,
    pub rouge_l: RougeScore,
    pub cosine_angle: f64,
    pub soft_cosine_angle: f64,
}

/// Compute all similarity measures for a generated program.
///
/// `reference` is the independent solution the text is scored against;
/// when absent the program is compared to empty text, which bottoms out
/// every score (BLEU/ROUGE 0, angles 90°). `corrected` is the minimally
/// fixed version of the generated program; when absent the program is
/// taken to need no correction.
pub fn similarity_report(
    generated: &str,
    reference: Option<&str>,
    corrected: Option<&str>,
) -> SimilarityReport {
    let reference = reference.unwrap_or("");
    let (ratio, edits) = match corrected {
        Some(corrected) => (sequence_ratio(generated, corrected), edit_count(generated, corrected)),
        None => (1.0, 0),
    };
    SimilarityReport {
        sequence_ratio: ratio,
        edit_count: edits,
        bleu: bleu(generated, reference),
        rouge_1: rouge(generated, reference, RougeVariant::Rouge1),
        rouge_2: rouge(generated, reference, RougeVariant::Rouge2),
        rouge_l: rouge(generated, reference, RougeVariant::RougeL),
        cosine_angle: cosine_angle(generated, reference),
        soft_cosine_angle: soft_cosine_angle(generated, reference),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uncorrected_program_scores_ratio_one_and_zero_edits() {
        let report = similarity_report("x = 1\n", Some("x = 1\n"), None);
        assert_eq!(report.sequence_ratio, 1.0);
        assert_eq!(report.edit_count, 0);
    }

    #[test]
    fn corrected_program_is_compared_to_its_correction() {
        let generated = "def f():\n    return 1\n";
        let corrected = "def f():\n    return 2\n";
        let report = similarity_report(generated, Some(generated), Some(corrected));
        assert!(report.sequence_ratio < 1.0);
        assert_eq!(report.edit_count, 1);
    }

    #[test]
    fn missing_reference_bottoms_out_reference_scores() {
        let report = similarity_report("x = 1\n", None, None);
        assert_eq!(report.bleu, 0.0);
        assert_eq!(report.rouge_1.f1, 0.0);
        assert_eq!(report.cosine_angle, 90.0);
        assert_eq!(report.soft_cosine_angle, 90.0);
        // The corrected-side metrics are unaffected.
        assert_eq!(report.sequence_ratio, 1.0);
    }

    #[test]
    fn identical_reference_maxes_reference_scores() {
        let text = "total = a + b";
        let report = similarity_report(text, Some(text), None);
        assert_eq!(report.bleu, 100.0);
        assert_eq!(report.rouge_2.f1, 100.0);
        // The angles come through acos, which costs a few ulps even for
        // a self-comparison; they must still be zero to any tolerance a
        // report could print.
        assert!(report.cosine_angle.abs() < 1e-5, "got {}", report.cosine_angle);
        assert!(report.soft_cosine_angle.abs() < 1e-5, "got {}", report.soft_cosine_angle);
    }
}
