//! Declarative description of the language being measured.
//!
//! A [`LanguageProfile`] tells the lexer and the static metrics everything
//! they need to know about a language's surface: its keywords, which of
//! those open branches or blocks, how comments and strings are written,
//! and whether block structure is carried by indentation. Profiles are
//! plain data and can be loaded from JSON; a built-in Python-flavoured
//! profile ships as the default.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while loading or validating a [`LanguageProfile`].
#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("failed to read profile file: {0}")]
    Io(#[from] std::io::Error),
    #[error("profile is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("branch keyword {0:?} is not declared in `keywords`")]
    BranchNotKeyword(String),
    #[error("block-opening keyword {0:?} is not declared in `keywords`")]
    OpenerNotKeyword(String),
    #[error("line comment prefix must be non-empty")]
    EmptyCommentPrefix,
    #[error("operator {operator:?} starts with the comment prefix {comment:?} and would never be lexed")]
    CommentShadowsOperator { comment: String, operator: String },
    #[error("string delimiter list contains an empty entry")]
    EmptyDelimiter,
    #[error("tab width must be at least 1")]
    ZeroTabWidth,
}

/// Everything the tokenizer and the static metrics need to know about a
/// language. All collections are ordered so that serialization is stable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LanguageProfile {
    /// Human-readable profile name, echoed in reports.
    pub name: String,
    /// Reserved words. Tokens matching these lex as keywords rather than
    /// identifiers.
    pub keywords: BTreeSet<String>,
    /// Keywords that introduce a decision point (counted by cyclomatic
    /// complexity). Must be a subset of `keywords`.
    pub branch_keywords: BTreeSet<String>,
    /// Short-circuit boolean connectives; each occurrence is a decision
    /// point. May be keywords (`and`) or operators (`&&`).
    pub boolean_operators: BTreeSet<String>,
    /// Operator lexemes, matched longest-first.
    pub operators: BTreeSet<String>,
    /// Prefix that starts a comment running to end of line.
    pub line_comment: String,
    /// Delimiters for single-line string literals.
    pub string_delimiters: Vec<String>,
    /// Delimiters for strings that may span physical lines. Checked before
    /// `string_delimiters`, so longer delimiters belong here.
    pub multiline_delimiters: Vec<String>,
    /// Characters that may prefix a string literal (`r"..."`, `b'...'`).
    /// At most two prefix characters are consumed.
    pub string_prefixes: BTreeSet<char>,
    /// Statement separator usable inside one physical line.
    pub separator: Option<String>,
    /// Keywords that open a function-like block.
    pub function_keywords: BTreeSet<String>,
    /// Keywords that open a class-like block.
    pub class_keywords: BTreeSet<String>,
    /// Whether block extent is determined by indentation.
    pub indentation_blocks: bool,
    /// Number of columns a tab advances to (next multiple).
    pub tab_width: usize,
}

impl LanguageProfile {
    /// The built-in default: a Python-flavoured profile.
    ///
    /// `True`/`False`/`None` are deliberately left out of the keyword set
    /// so they count as operands in the Halstead measures.
    pub fn python() -> Self {
        let keywords = [
            "and", "as", "assert", "async", "await", "break", "class", "continue", "def", "del",
            "elif", "else", "except", "finally", "for", "from", "global", "if", "import", "in",
            "is", "lambda", "nonlocal", "not", "or", "pass", "raise", "return", "try", "while",
            "with", "yield",
        ];
        let operators = [
            "**=", "//=", ">>=", "<<=", "...", "**", "//", ">>", "<<", "<=", ">=", "==", "!=",
            "->", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", ":=", "@=", "+", "-", "*", "/",
            "%", "&", "|", "^", "~", "<", ">", "=", "@", ".", ",", ":", "(", ")", "[", "]", "{",
            "}",
        ];
        LanguageProfile {
            name: "python".to_string(),
            keywords: keywords.iter().map(|s| s.to_string()).collect(),
            branch_keywords: ["if", "elif", "for", "while", "except"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            boolean_operators: ["and", "or"].iter().map(|s| s.to_string()).collect(),
            operators: operators.iter().map(|s| s.to_string()).collect(),
            line_comment: "#".to_string(),
            string_delimiters: vec!["\"".to_string(), "'".to_string()],
            multiline_delimiters: vec!["\"\"\"".to_string(), "'''".to_string()],
            string_prefixes: "rbufRBUF".chars().collect(),
            separator: Some(";".to_string()),
            function_keywords: ["def"].iter().map(|s| s.to_string()).collect(),
            class_keywords: ["class"].iter().map(|s| s.to_string()).collect(),
            indentation_blocks: true,
            tab_width: 8,
        }
    }

    /// Parse a profile from JSON and validate it.
    pub fn from_json(text: &str) -> Result<Self, ProfileError> {
        let profile: LanguageProfile = serde_json::from_str(text)?;
        profile.validate()?;
        Ok(profile)
    }

    /// Load a profile from a JSON file and validate it.
    pub fn from_file(path: &Path) -> Result<Self, ProfileError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Check the structural invariants that the lexer and metrics rely on.
    pub fn validate(&self) -> Result<(), ProfileError> {
        for word in &self.branch_keywords {
            if !self.keywords.contains(word) {
                return Err(ProfileError::BranchNotKeyword(word.clone()));
            }
        }
        for word in self.function_keywords.iter().chain(&self.class_keywords) {
            if !self.keywords.contains(word) {
                return Err(ProfileError::OpenerNotKeyword(word.clone()));
            }
        }
        if self.line_comment.is_empty() {
            return Err(ProfileError::EmptyCommentPrefix);
        }
        for op in &self.operators {
            if op.starts_with(&self.line_comment) {
                return Err(ProfileError::CommentShadowsOperator {
                    comment: self.line_comment.clone(),
                    operator: op.clone(),
                });
            }
        }
        if self
            .string_delimiters
            .iter()
            .chain(&self.multiline_delimiters)
            .any(|d| d.is_empty())
        {
            return Err(ProfileError::EmptyDelimiter);
        }
        if self.tab_width == 0 {
            return Err(ProfileError::ZeroTabWidth);
        }
        Ok(())
    }

    /// True if `word` opens a function- or class-like block.
    pub fn is_block_opener(&self, word: &str) -> bool {
        self.function_keywords.contains(word) || self.class_keywords.contains(word)
    }

    /// Operator lexemes longest-first, the order the lexer tries them in.
    pub fn operators_longest_first(&self) -> Vec<&str> {
        let mut ops: Vec<&str> = self.operators.iter().map(|s| s.as_str()).collect();
        ops.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        ops
    }
}

impl Default for LanguageProfile {
    fn default() -> Self {
        Self::python()
    }
}
