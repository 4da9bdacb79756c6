//! Cyclomatic complexity from lexical decision points.
//!
//! Complexity is `1 +` the number of decision tokens in a block: branch
//! keywords (`if`, `elif`, `for`, `while`, `except` in the default
//! profile) and short-circuit boolean connectives. Each decision token is
//! attributed to the innermost definition whose extent contains its line,
//! so nothing is counted twice. When a file has no definitions at all the
//! whole module is measured as one pseudo-block so the measure is never
//! missing; decision tokens at module level of a file that *does* have
//! definitions belong to no block, mirroring the per-definition reports
//! of conventional tools.

use serde::{Deserialize, Serialize};

use crate::blocks::{BlockRole, BlockTree};
use crate::lexer::{TokenKind, TokenStream};
use crate::profile::LanguageProfile;

/// Complexity of one measured block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockComplexity {
    pub name: String,
    pub role: BlockRole,
    pub start_line: usize,
    pub end_line: usize,
    pub complexity: u32,
}

/// Cyclomatic complexity of a whole file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclomaticResult {
    /// Measured blocks in document order.
    pub blocks: Vec<BlockComplexity>,
    /// Mean block complexity; 0 for a file with nothing to measure.
    pub average: f64,
    /// Sum of block complexities (the `G` that feeds the maintainability
    /// index).
    pub total: u32,
    /// Letter grade for the average.
    pub grade: char,
    /// True when the file had no definitions and the module itself was
    /// measured as a single block.
    pub module_level: bool,
}

/// Letter grade for a complexity value.
///
/// `A` up to 5, `B` up to 10, `C` up to 20, `D` up to 30, `E` up to 40,
/// `F` beyond. Degenerate inputs below 1 (an empty file has no blocks and
/// average 0) also grade `A`.
pub fn grade_for(complexity: f64) -> char {
    match complexity {
        c if c <= 5.0 => 'A',
        c if c <= 10.0 => 'B',
        c if c <= 20.0 => 'C',
        c if c <= 30.0 => 'D',
        c if c <= 40.0 => 'E',
        _ => 'F',
    }
}

/// Compute per-block and aggregate cyclomatic complexity.
pub fn cyclomatic(
    stream: &TokenStream,
    tree: &BlockTree,
    profile: &LanguageProfile,
) -> CyclomaticResult {
    let definitions = tree.definitions();
    let decision_lines: Vec<usize> = stream
        .tokens
        .iter()
        .filter(|t| is_decision(t.kind, &t.lexeme, profile))
        .map(|t| t.line)
        .collect();

    let mut blocks: Vec<BlockComplexity> = Vec::new();
    let module_level = definitions.is_empty();
    if module_level {
        let has_content = stream.tokens.iter().any(|t| t.kind.is_content());
        if has_content {
            blocks.push(BlockComplexity {
                name: "<module>".to_string(),
                role: BlockRole::Module,
                start_line: 1,
                end_line: stream.physical_lines,
                complexity: 1 + decision_lines.len() as u32,
            });
        }
    } else {
        let mut counts = vec![0u32; definitions.len()];
        for &line in &decision_lines {
            // Innermost containing definition: the one with the latest
            // start among those whose extent covers the line.
            let owner = definitions
                .iter()
                .enumerate()
                .filter(|(_, d)| d.start_line <= line && line <= d.end_line)
                .max_by_key(|(_, d)| d.start_line)
                .map(|(i, _)| i);
            if let Some(i) = owner {
                counts[i] += 1;
            }
        }
        for (definition, count) in definitions.iter().zip(counts) {
            blocks.push(BlockComplexity {
                name: definition.name.clone(),
                role: definition.role,
                start_line: definition.start_line,
                end_line: definition.end_line,
                complexity: 1 + count,
            });
        }
    }

    let total: u32 = blocks.iter().map(|b| b.complexity).sum();
    let average = if blocks.is_empty() {
        0.0
    } else {
        f64::from(total) / blocks.len() as f64
    };
    CyclomaticResult {
        average,
        total,
        grade: grade_for(average),
        module_level,
        blocks,
    }
}

fn is_decision(kind: TokenKind, lexeme: &str, profile: &LanguageProfile) -> bool {
    match kind {
        TokenKind::Keyword => {
            profile.branch_keywords.contains(lexeme) || profile.boolean_operators.contains(lexeme)
        }
        TokenKind::Operator => profile.boolean_operators.contains(lexeme),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::block_structure;
    use crate::lexer::tokenize;

    fn cc(text: &str) -> CyclomaticResult {
        let profile = LanguageProfile::python();
        let stream = tokenize(text, &profile);
        let tree = block_structure(&stream, &profile).unwrap();
        cyclomatic(&stream, &tree, &profile)
    }

    #[test]
    fn empty_file_has_no_blocks_and_zero_total() {
        let result = cc("");
        assert!(result.blocks.is_empty());
        assert_eq!(result.total, 0);
        assert_eq!(result.average, 0.0);
        assert_eq!(result.grade, 'A');
    }

    #[test]
    fn straight_line_module_scores_one() {
        let result = cc("x = 1\ny = 2\n");
        assert_eq!(result.blocks.len(), 1);
        assert_eq!(result.blocks[0].complexity, 1);
        assert!(result.module_level);
        assert_eq!(result.grade, 'A');
    }

    #[test]
    fn branches_and_booleans_count() {
        let text = "if a and b:\n    x = 1\nelif c or d:\n    x = 2\nfor i in r:\n    while i:\n        i -= 1\n";
        // if, and, elif, or, for, while -> 1 + 6
        let result = cc(text);
        assert_eq!(result.blocks[0].complexity, 7);
    }

    #[test]
    fn else_and_not_are_free() {
        let result = cc("if a:\n    x = 1\nelse:\n    x = not a\n");
        assert_eq!(result.blocks[0].complexity, 2);
    }

    #[test]
    fn decisions_attribute_to_the_innermost_definition() {
        let text = "def outer(a):\n    if a:\n        return 1\n    def inner(b):\n        while b:\n            b -= 1\n        return b\n    return inner\n";
        let result = cc(text);
        assert!(!result.module_level);
        let outer = result.blocks.iter().find(|b| b.name == "outer").unwrap();
        let inner = result.blocks.iter().find(|b| b.name == "inner").unwrap();
        assert_eq!(outer.complexity, 2);
        assert_eq!(inner.complexity, 2);
        assert_eq!(result.total, 4);
        assert_eq!(result.average, 2.0);
    }

    #[test]
    fn identifier_named_like_a_keyword_does_not_count() {
        // `or_` and `iffy` are identifiers, not decisions.
        let result = cc("or_ = 1\niffy = or_ + 1\n");
        assert_eq!(result.blocks[0].complexity, 1);
    }

    #[test]
    fn comment_only_file_is_one_simple_module_block() {
        let result = cc("# just notes\n# nothing else\n");
        assert_eq!(result.blocks.len(), 1);
        assert_eq!(result.total, 1);
    }

    #[test]
    fn grades_cover_every_band() {
        let bands = [
            (1, 'A'),
            (5, 'A'),
            (6, 'B'),
            (10, 'B'),
            (11, 'C'),
            (20, 'C'),
            (21, 'D'),
            (30, 'D'),
            (31, 'E'),
            (40, 'E'),
            (41, 'F'),
            (100, 'F'),
        ];
        for (value, letter) in bands {
            assert_eq!(grade_for(f64::from(value)), letter, "cc={value}");
        }
    }

    #[test]
    fn every_grade_is_a_known_letter() {
        for value in 1..=100 {
            assert!(matches!(grade_for(f64::from(value)), 'A'..='F'));
        }
    }
}
