//! Profile-driven tokenizer.
//!
//! The lexer turns source text into a flat stream of [`Token`]s following
//! the rules of a [`LanguageProfile`]. For indentation-structured
//! languages it synthesises balanced indent/dedent tokens (tabs advance to
//! the next multiple of the profile's tab width), suppresses newline
//! tokens while brackets are open, honours explicit backslash line
//! continuations, and lets triple-quoted strings span physical lines.
//!
//! Lexing never panics on malformed input: an unterminated string or an
//! inconsistent dedent is reported through [`TokenStream::error`] while
//! the tokens produced so far are still returned, so downstream metrics
//! can degrade gracefully.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::profile::LanguageProfile;

/// Lexical category of a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TokenKind {
    Identifier,
    Keyword,
    Operator,
    NumberLiteral,
    /// Single-line string literal, including quotes and any prefix.
    StringLiteral,
    /// String written with a multiline delimiter; may span physical lines.
    MultilineString,
    Comment,
    /// End of a logical line. Synthesised at end of input when the last
    /// line has no trailing newline character.
    Newline,
    /// Indentation increased relative to the enclosing block.
    Indent,
    /// Indentation decreased; always balanced against a prior `Indent`.
    Dedent,
    /// Statement separator inside one physical line (`;`).
    Separator,
}

impl TokenKind {
    /// True for tokens that carry source text (as opposed to the
    /// structural newline/indent/dedent markers).
    pub fn is_content(self) -> bool {
        !matches!(self, TokenKind::Newline | TokenKind::Indent | TokenKind::Dedent)
    }

    /// True for tokens that make a line segment count as a statement:
    /// identifiers, keywords, operators, numbers and single-line strings.
    /// Multiline strings are excluded so that a standalone documentation
    /// string is not a statement.
    pub fn is_statement(self) -> bool {
        matches!(
            self,
            TokenKind::Identifier
                | TokenKind::Keyword
                | TokenKind::Operator
                | TokenKind::NumberLiteral
                | TokenKind::StringLiteral
        )
    }
}

/// One token: its kind, verbatim lexeme, and start position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// 1-based physical line of the first character.
    pub line: usize,
    /// 0-based character column of the first character.
    pub column: usize,
}

impl Token {
    /// Last physical line this token touches (multiline strings cover a
    /// range; everything else covers a single line).
    pub fn end_line(&self) -> usize {
        self.line + self.lexeme.matches('\n').count()
    }
}

/// Recoverable lexical errors. The stream that carries one still contains
/// every token produced before the error was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum LexError {
    #[error("unterminated string literal starting on line {line}")]
    UnterminatedString { line: usize },
    #[error("dedent on line {line} does not match any outer indentation level")]
    InconsistentDedent { line: usize },
}

/// The result of tokenizing one source text.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TokenStream {
    pub tokens: Vec<Token>,
    /// Number of physical lines in the input (0 for empty input).
    pub physical_lines: usize,
    /// First lexical error encountered, if any.
    pub error: Option<LexError>,
}

impl TokenStream {
    /// Iterator over content tokens (everything except newline/indent/dedent).
    pub fn content_tokens(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.kind.is_content())
    }
}

/// Logical-line statistics: how many statement-bearing segments the text
/// contains and on which physical line each segment starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalLines {
    pub count: usize,
    /// Physical start line of each segment -> number of segments starting
    /// there (a line with separators can start several).
    pub per_line: BTreeMap<usize, usize>,
}

/// Tokenize `text` according to `profile`.
pub fn tokenize(text: &str, profile: &LanguageProfile) -> TokenStream {
    Lexer::new(text, profile).run()
}

/// Count statement-bearing logical lines in a token stream.
///
/// Segments are delimited by newline and separator tokens. A segment
/// counts when it contains at least one statement token (see
/// [`TokenKind::is_statement`]); a segment holding only a standalone
/// multiline string or only comments contributes nothing.
pub fn logical_lines(stream: &TokenStream) -> LogicalLines {
    let mut count = 0;
    let mut per_line = BTreeMap::new();
    let mut segment_start: Option<usize> = None;
    let mut has_statement = false;
    let mut close = |start: &mut Option<usize>, has: &mut bool| {
        if let (Some(line), true) = (*start, *has) {
            count += 1;
            *per_line.entry(line).or_insert(0) += 1;
        }
        *start = None;
        *has = false;
    };
    for token in &stream.tokens {
        match token.kind {
            TokenKind::Newline | TokenKind::Separator => {
                close(&mut segment_start, &mut has_statement);
            }
            TokenKind::Indent | TokenKind::Dedent | TokenKind::Comment => {}
            _ => {
                segment_start.get_or_insert(token.line);
                has_statement |= token.kind.is_statement();
            }
        }
    }
    close(&mut segment_start, &mut has_statement);
    LogicalLines { count, per_line }
}

struct Lexer<'p> {
    profile: &'p LanguageProfile,
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    tokens: Vec<Token>,
    indent_stack: Vec<usize>,
    bracket_depth: usize,
    at_line_start: bool,
    line_has_content: bool,
    error: Option<LexError>,
    halted: bool,
    operators: Vec<String>,
    physical_lines: usize,
}

impl<'p> Lexer<'p> {
    fn new(text: &str, profile: &'p LanguageProfile) -> Self {
        // Normalise line endings so positions and newline handling only
        // ever see '\n'.
        let normalised = text.replace("\r\n", "\n").replace('\r', "\n");
        let physical_lines = if normalised.is_empty() {
            0
        } else {
            normalised.matches('\n').count() + usize::from(!normalised.ends_with('\n'))
        };
        Lexer {
            profile,
            chars: normalised.chars().collect(),
            pos: 0,
            line: 1,
            column: 0,
            tokens: Vec::new(),
            indent_stack: vec![0],
            bracket_depth: 0,
            at_line_start: true,
            line_has_content: false,
            error: None,
            halted: false,
            operators: profile
                .operators_longest_first()
                .into_iter()
                .map(|s| s.to_string())
                .collect(),
            physical_lines,
        }
    }

    fn run(mut self) -> TokenStream {
        while !self.halted {
            if self.at_line_start && self.bracket_depth == 0 {
                self.handle_line_start();
            }
            self.at_line_start = false;
            self.skip_horizontal_space();
            let Some(c) = self.peek() else { break };
            if c == '\n' {
                self.consume_newline();
            } else if c == '\\' && self.peek_at(1) == Some('\n') {
                // Explicit continuation: swallow both characters, keep the
                // logical line open, and skip indentation handling on the
                // next physical line.
                self.pos += 2;
                self.line += 1;
                self.column = 0;
            } else if self.rest_starts_with(&self.profile.line_comment) {
                self.lex_comment();
            } else if let Some((prefix_len, delim, multiline)) = self.string_start() {
                self.lex_string(prefix_len, &delim, multiline);
            } else if c.is_ascii_digit() || (c == '.' && self.peek_at(1).is_some_and(|d| d.is_ascii_digit())) {
                self.lex_number();
            } else if c.is_alphabetic() || c == '_' {
                self.lex_word();
            } else if self.try_separator() {
            } else {
                self.lex_operator();
            }
        }
        self.finish()
    }

    fn finish(mut self) -> TokenStream {
        if self.line_has_content {
            // Input ended without a trailing newline: synthesise one so
            // every logical line is closed.
            self.push(TokenKind::Newline, String::new(), self.line, self.column);
        }
        while self.indent_stack.len() > 1 {
            self.indent_stack.pop();
            let line = self.line;
            self.push(TokenKind::Dedent, String::new(), line, 0);
        }
        TokenStream {
            tokens: self.tokens,
            physical_lines: self.physical_lines,
            error: self.error,
        }
    }

    /// Measure indentation at the start of a code line and emit
    /// indent/dedent tokens. Blank and comment-only lines never affect
    /// indentation.
    fn handle_line_start(&mut self) {
        if !self.profile.indentation_blocks {
            return;
        }
        let mut width = 0;
        let mut scan = self.pos;
        while let Some(&c) = self.chars.get(scan) {
            match c {
                ' ' => width += 1,
                '\t' => width = (width / self.profile.tab_width + 1) * self.profile.tab_width,
                _ => break,
            }
            scan += 1;
        }
        let next = self.chars.get(scan).copied();
        let blank_or_comment = match next {
            None | Some('\n') => true,
            _ => self.starts_with_at(scan, &self.profile.line_comment),
        };
        if blank_or_comment {
            return;
        }
        self.column += scan - self.pos;
        self.pos = scan;
        let current = *self.indent_stack.last().expect("indent stack is never empty");
        if width > current {
            self.indent_stack.push(width);
            let line = self.line;
            self.push(TokenKind::Indent, String::new(), line, 0);
        } else if width < current {
            while *self.indent_stack.last().unwrap() > width {
                self.indent_stack.pop();
                let line = self.line;
                self.push(TokenKind::Dedent, String::new(), line, 0);
            }
            if *self.indent_stack.last().unwrap() != width {
                // The new indentation sits between two known levels.
                // Record the error once and open a level at this width so
                // indents and dedents stay balanced.
                if self.error.is_none() {
                    self.error = Some(LexError::InconsistentDedent { line: self.line });
                }
                self.indent_stack.push(width);
                let line = self.line;
                self.push(TokenKind::Indent, String::new(), line, 0);
            }
        }
    }

    fn skip_horizontal_space(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c == ' ' || c == '\t' {
                self.pos += 1;
                self.column += 1;
            } else {
                break;
            }
        }
    }

    fn consume_newline(&mut self) {
        if self.bracket_depth == 0 {
            let (line, column) = (self.line, self.column);
            self.push(TokenKind::Newline, "\n".to_string(), line, column);
        }
        self.pos += 1;
        self.line += 1;
        self.column = 0;
        self.at_line_start = true;
    }

    fn lex_comment(&mut self) {
        let (line, column) = (self.line, self.column);
        let mut lexeme = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c == '\n' {
                break;
            }
            lexeme.push(c);
            self.pos += 1;
            self.column += 1;
        }
        self.push(TokenKind::Comment, lexeme, line, column);
    }

    /// Detect a string literal start at the current position: up to two
    /// prefix characters followed by a delimiter, multiline delimiters
    /// first so `"""` wins over `"`.
    fn string_start(&self) -> Option<(usize, String, bool)> {
        for prefix_len in 0..=2usize {
            let mut ok = true;
            for offset in 0..prefix_len {
                match self.peek_at(offset) {
                    Some(c) if self.profile.string_prefixes.contains(&c) => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let at = self.pos + prefix_len;
            for delim in &self.profile.multiline_delimiters {
                if self.starts_with_at(at, delim) {
                    return Some((prefix_len, delim.clone(), true));
                }
            }
            for delim in &self.profile.string_delimiters {
                if self.starts_with_at(at, delim) {
                    return Some((prefix_len, delim.clone(), false));
                }
            }
        }
        None
    }

    fn lex_string(&mut self, prefix_len: usize, delim: &str, multiline: bool) {
        let (start_line, start_column) = (self.line, self.column);
        let mut lexeme = String::new();
        for _ in 0..prefix_len + delim.chars().count() {
            lexeme.push(self.chars[self.pos]);
            self.pos += 1;
            self.column += 1;
        }
        loop {
            match self.chars.get(self.pos) {
                None => {
                    self.error = Some(LexError::UnterminatedString { line: start_line });
                    self.halted = true;
                    return;
                }
                Some('\\') => {
                    lexeme.push('\\');
                    self.pos += 1;
                    self.column += 1;
                    if let Some(&escaped) = self.chars.get(self.pos) {
                        lexeme.push(escaped);
                        self.pos += 1;
                        if escaped == '\n' {
                            self.line += 1;
                            self.column = 0;
                        } else {
                            self.column += 1;
                        }
                    }
                }
                Some('\n') if !multiline => {
                    self.error = Some(LexError::UnterminatedString { line: start_line });
                    self.halted = true;
                    return;
                }
                Some(&c) => {
                    if self.rest_starts_with(delim) {
                        for _ in 0..delim.chars().count() {
                            lexeme.push(self.chars[self.pos]);
                            self.pos += 1;
                            self.column += 1;
                        }
                        break;
                    }
                    lexeme.push(c);
                    self.pos += 1;
                    if c == '\n' {
                        self.line += 1;
                        self.column = 0;
                    } else {
                        self.column += 1;
                    }
                }
            }
        }
        let kind = if multiline { TokenKind::MultilineString } else { TokenKind::StringLiteral };
        self.push(kind, lexeme, start_line, start_column);
    }

    fn lex_number(&mut self) {
        let (line, column) = (self.line, self.column);
        let mut lexeme = String::new();
        lexeme.push(self.chars[self.pos]);
        self.pos += 1;
        self.column += 1;
        while let Some(&c) = self.chars.get(self.pos) {
            let last = lexeme.chars().last().unwrap();
            let hex = lexeme.starts_with("0x") || lexeme.starts_with("0X");
            let exponent_sign = (c == '+' || c == '-') && !hex && (last == 'e' || last == 'E');
            if c.is_ascii_alphanumeric() || c == '_' || c == '.' || exponent_sign {
                lexeme.push(c);
                self.pos += 1;
                self.column += 1;
            } else {
                break;
            }
        }
        self.push(TokenKind::NumberLiteral, lexeme, line, column);
    }

    fn lex_word(&mut self) {
        let (line, column) = (self.line, self.column);
        let mut lexeme = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_alphanumeric() || c == '_' {
                lexeme.push(c);
                self.pos += 1;
                self.column += 1;
            } else {
                break;
            }
        }
        let kind = if self.profile.keywords.contains(&lexeme) {
            TokenKind::Keyword
        } else {
            TokenKind::Identifier
        };
        self.push(kind, lexeme, line, column);
    }

    fn try_separator(&mut self) -> bool {
        let Some(sep) = self.profile.separator.clone() else { return false };
        if !self.rest_starts_with(&sep) {
            return false;
        }
        let (line, column) = (self.line, self.column);
        self.pos += sep.chars().count();
        self.column += sep.chars().count();
        self.push(TokenKind::Separator, sep, line, column);
        true
    }

    fn lex_operator(&mut self) {
        let (line, column) = (self.line, self.column);
        let ops = std::mem::take(&mut self.operators);
        let matched = ops.iter().find(|op| self.rest_starts_with(op)).cloned();
        self.operators = ops;
        let lexeme = match matched {
            Some(op) => op,
            // Unknown character: surface it as a one-character operator so
            // nothing silently disappears from the stream.
            None => self.chars[self.pos].to_string(),
        };
        let len = lexeme.chars().count();
        self.pos += len;
        self.column += len;
        match lexeme.as_str() {
            "(" | "[" | "{" => self.bracket_depth += 1,
            ")" | "]" | "}" => self.bracket_depth = self.bracket_depth.saturating_sub(1),
            _ => {}
        }
        self.push(TokenKind::Operator, lexeme, line, column);
    }

    fn push(&mut self, kind: TokenKind, lexeme: String, line: usize, column: usize) {
        if kind == TokenKind::Newline {
            self.line_has_content = false;
        } else if kind.is_content() {
            self.line_has_content = true;
        }
        self.tokens.push(Token { kind, lexeme, line, column });
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn rest_starts_with(&self, needle: &str) -> bool {
        self.starts_with_at(self.pos, needle)
    }

    fn starts_with_at(&self, at: usize, needle: &str) -> bool {
        let mut i = at;
        for c in needle.chars() {
            if self.chars.get(i) != Some(&c) {
                return false;
            }
            i += 1;
        }
        true
    }
}
