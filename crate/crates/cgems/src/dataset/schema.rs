//! Canonical feature schema.
//!
//! Every feature record carries the same 31 numeric model features in a
//! fixed order, plus a letter-grade column, the class label, a raw
//! compilation error count, and four validity flags for values that might
//! not have been measurable. The CSV layout is frozen here so that files
//! written by one build are readable by any other.

/// Name column: the program identifier.
pub const PROGRAM: &str = "Program";

/// Number of numeric model features.
pub const NUM_FEATURES: usize = 31;

/// The numeric model features, in canonical order.
pub const FEATURES: [&str; NUM_FEATURES] = [
    "Code Coverage",
    "Maintainability Index",
    "Compiling",
    "Functionality",
    "Edits",
    "Sequence Ratio",
    "CC Number",
    "LOC",
    "ROUGE-1 Precision",
    "ROUGE-1 Recall",
    "ROUGE-1 F1",
    "ROUGE-2 Precision",
    "ROUGE-2 Recall",
    "ROUGE-2 F1",
    "ROUGE-L Precision",
    "ROUGE-L Recall",
    "ROUGE-L F1",
    "LLOC",
    "SLOC",
    "Comments",
    "C%L",
    "C%S",
    "C+M%L",
    "Difficulty",
    "Effort",
    "Programming Time",
    "Bugs",
    "Execution Time",
    "Cosine Similarity",
    "Soft Cosine Similarity",
    "BLEU",
];

pub const IDX_COVERAGE: usize = 0;
pub const IDX_MAINTAINABILITY: usize = 1;
pub const IDX_COMPILING: usize = 2;
pub const IDX_FUNCTIONALITY: usize = 3;
pub const IDX_EDITS: usize = 4;
pub const IDX_SEQUENCE_RATIO: usize = 5;
pub const IDX_CC_NUMBER: usize = 6;
pub const IDX_LOC: usize = 7;
pub const IDX_ROUGE1_PRECISION: usize = 8;
pub const IDX_ROUGE1_RECALL: usize = 9;
pub const IDX_ROUGE1_F1: usize = 10;
pub const IDX_ROUGE2_PRECISION: usize = 11;
pub const IDX_ROUGE2_RECALL: usize = 12;
pub const IDX_ROUGE2_F1: usize = 13;
pub const IDX_ROUGEL_PRECISION: usize = 14;
pub const IDX_ROUGEL_RECALL: usize = 15;
pub const IDX_ROUGEL_F1: usize = 16;
pub const IDX_LLOC: usize = 17;
pub const IDX_SLOC: usize = 18;
pub const IDX_COMMENTS: usize = 19;
pub const IDX_C_PCT_L: usize = 20;
pub const IDX_C_PCT_S: usize = 21;
pub const IDX_CM_PCT_L: usize = 22;
pub const IDX_DIFFICULTY: usize = 23;
pub const IDX_EFFORT: usize = 24;
pub const IDX_PROGRAMMING_TIME: usize = 25;
pub const IDX_BUGS: usize = 26;
pub const IDX_EXECUTION_TIME: usize = 27;
pub const IDX_COSINE: usize = 28;
pub const IDX_SOFT_COSINE: usize = 29;
pub const IDX_BLEU: usize = 30;

/// Letter grade for the aggregate cyclomatic complexity; metadata, not a
/// model input (the numeric `CC Number` carries the same information).
pub const CC_GRADE: &str = "CC Grade";

/// The binary target.
pub const CLASS: &str = "Class";

/// Raw syntax-error count from the compile check.
pub const COMPILATION_ERRORS: &str = "Compilation Errors";

/// Validity flags: 1 when the corresponding value was genuinely measured,
/// 0 when it was imputed (plus the module-level marker for complexity).
pub const FLAG_CC_MODULE_LEVEL: &str = "CC Module Level";
pub const FLAG_COMPILING_VALID: &str = "Compiling Valid";
pub const FLAG_EXECUTION_TIME_VALID: &str = "Execution Time Valid";
pub const FLAG_COVERAGE_VALID: &str = "Code Coverage Valid";

/// Full CSV header in canonical column order.
pub fn csv_header() -> Vec<&'static str> {
    let mut header = vec![PROGRAM];
    header.extend(&FEATURES[..IDX_CC_NUMBER]);
    header.push(CC_GRADE);
    header.extend(&FEATURES[IDX_CC_NUMBER..]);
    header.push(CLASS);
    header.push(COMPILATION_ERRORS);
    header.push(FLAG_CC_MODULE_LEVEL);
    header.push(FLAG_COMPILING_VALID);
    header.push(FLAG_EXECUTION_TIME_VALID);
    header.push(FLAG_COVERAGE_VALID);
    header
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feature_names_are_unique() {
        let mut seen = std::collections::HashSet::new();
        for name in FEATURES {
            assert!(seen.insert(name), "duplicate feature {name}");
        }
    }

    #[test]
    fn index_constants_match_names() {
        assert_eq!(FEATURES[IDX_COVERAGE], "Code Coverage");
        assert_eq!(FEATURES[IDX_COMPILING], "Compiling");
        assert_eq!(FEATURES[IDX_CC_NUMBER], "CC Number");
        assert_eq!(FEATURES[IDX_ROUGEL_F1], "ROUGE-L F1");
        assert_eq!(FEATURES[IDX_EXECUTION_TIME], "Execution Time");
        assert_eq!(FEATURES[IDX_BLEU], "BLEU");
    }

    #[test]
    fn header_has_every_column_once() {
        let header = csv_header();
        assert_eq!(header.len(), 1 + NUM_FEATURES + 1 + 1 + 1 + 4);
        let mut seen = std::collections::HashSet::new();
        for name in &header {
            assert!(seen.insert(*name), "duplicate column {name}");
        }
        assert_eq!(header[0], PROGRAM);
        assert_eq!(header[7], CC_GRADE);
    }
}
