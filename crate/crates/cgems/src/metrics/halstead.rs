//! Halstead software-science measures.
//!
//! Tokens are split into two pools: operators (operator tokens plus
//! keywords, except the block-opening keywords, which name a definition
//! rather than operate on values) and operands (identifiers and number,
//! string and multiline-string literals). Comments, separators and the
//! structural tokens contribute nothing.
//!
//! With `n1`/`n2` the distinct and `N1`/`N2` the total operator/operand
//! counts:
//!
//! * vocabulary `n = n1 + n2`, length `N = N1 + N2`
//! * volume `V = N * log2(n)` (0 when the file is empty)
//! * difficulty `D = (n1 / 2) * (N2 / n2)` (0 when there are no operands)
//! * effort `E = D * V`
//! * time `T = E / 18` seconds
//! * delivered bugs `B = V / 3000`

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::lexer::{TokenKind, TokenStream};
use crate::profile::LanguageProfile;

/// The Halstead suite for one source text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalsteadMetrics {
    /// Distinct operators (`n1`).
    pub distinct_operators: usize,
    /// Distinct operands (`n2`).
    pub distinct_operands: usize,
    /// Total operator occurrences (`N1`).
    pub total_operators: usize,
    /// Total operand occurrences (`N2`).
    pub total_operands: usize,
    pub vocabulary: usize,
    pub length: usize,
    pub volume: f64,
    pub difficulty: f64,
    pub effort: f64,
    /// Estimated implementation time in seconds.
    pub time_seconds: f64,
    /// Estimated delivered bugs.
    pub bugs: f64,
}

/// Compute the Halstead suite for a token stream.
pub fn halstead(stream: &TokenStream, profile: &LanguageProfile) -> HalsteadMetrics {
    let mut operator_lexemes: BTreeSet<&str> = BTreeSet::new();
    let mut operand_lexemes: BTreeSet<&str> = BTreeSet::new();
    let mut total_operators = 0usize;
    let mut total_operands = 0usize;

    for token in &stream.tokens {
        match token.kind {
            TokenKind::Operator => {
                operator_lexemes.insert(&token.lexeme);
                total_operators += 1;
            }
            TokenKind::Keyword if !profile.is_block_opener(&token.lexeme) => {
                operator_lexemes.insert(&token.lexeme);
                total_operators += 1;
            }
            TokenKind::Identifier
            | TokenKind::NumberLiteral
            | TokenKind::StringLiteral
            | TokenKind::MultilineString => {
                operand_lexemes.insert(&token.lexeme);
                total_operands += 1;
            }
            _ => {}
        }
    }

    let distinct_operators = operator_lexemes.len();
    let distinct_operands = operand_lexemes.len();
    let vocabulary = distinct_operators + distinct_operands;
    let length = total_operators + total_operands;
    let volume = if vocabulary == 0 {
        0.0
    } else {
        length as f64 * (vocabulary as f64).log2()
    };
    let difficulty = if distinct_operands == 0 {
        0.0
    } else {
        (distinct_operators as f64 / 2.0) * (total_operands as f64 / distinct_operands as f64)
    };
    let effort = difficulty * volume;
    HalsteadMetrics {
        distinct_operators,
        distinct_operands,
        total_operators,
        total_operands,
        vocabulary,
        length,
        volume,
        difficulty,
        effort,
        time_seconds: effort / 18.0,
        bugs: volume / 3000.0,
    }
}
