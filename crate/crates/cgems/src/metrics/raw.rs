//! Raw line metrics: physical, logical and source line counts, comment
//! counts, and the derived density percentages.
//!
//! Every physical line falls into exactly one bucket:
//!
//! * **blank** — no content tokens touch it;
//! * **comment** — only comment tokens touch it;
//! * **multi** — it belongs to a standalone multiline string (a
//!   documentation string forming its own statement), possibly alongside
//!   comments;
//! * **source** — everything else.
//!
//! so `sloc + blank + multi + comment-lines == loc` by construction.

use serde::{Deserialize, Serialize};

use crate::lexer::{logical_lines, TokenKind, TokenStream};

/// Raw size and density measures for one source text.
///
/// `comments` counts comment *tokens* (a trailing comment on a code line
/// counts even though the line is source), while `multi` and `blank`
/// count *lines*. The percentages are clamped to `[0, 100]` and defined
/// as 0 when their denominator is 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawMetrics {
    /// Physical lines.
    pub loc: usize,
    /// Logical lines: statement-bearing segments.
    pub lloc: usize,
    /// Source lines.
    pub sloc: usize,
    /// Comment tokens.
    pub comments: usize,
    /// Lines covered by standalone multiline strings.
    pub multi: usize,
    /// Lines with no content at all.
    pub blank: usize,
    /// `comments / loc`, as a percentage.
    pub c_pct_l: f64,
    /// `comments / sloc`, as a percentage.
    pub c_pct_s: f64,
    /// `(comments + multi) / loc`, as a percentage.
    pub cm_pct_l: f64,
}

#[derive(Clone, Copy, Default)]
struct LineFlags {
    comment: bool,
    standalone_multi: bool,
    other: bool,
}

/// Compute raw line metrics for a token stream.
pub fn raw_metrics(stream: &TokenStream) -> RawMetrics {
    let loc = stream.physical_lines;
    let comments = stream
        .tokens
        .iter()
        .filter(|t| t.kind == TokenKind::Comment)
        .count();
    let lloc = logical_lines(stream).count;

    let standalone = standalone_multiline_tokens(stream);
    let mut flags = vec![LineFlags::default(); loc + 2];
    for (index, token) in stream.tokens.iter().enumerate() {
        if !token.kind.is_content() {
            continue;
        }
        for line in token.line..=token.end_line() {
            let Some(entry) = flags.get_mut(line) else { continue };
            match token.kind {
                TokenKind::Comment => entry.comment = true,
                TokenKind::MultilineString if standalone.contains(&index) => {
                    entry.standalone_multi = true
                }
                _ => entry.other = true,
            }
        }
    }

    let mut sloc = 0;
    let mut multi = 0;
    let mut blank = 0;
    for entry in flags.iter().take(loc + 1).skip(1) {
        if entry.other {
            sloc += 1;
        } else if entry.standalone_multi {
            multi += 1;
        } else if !entry.comment {
            blank += 1;
        }
    }

    let pct = |num: usize, den: usize| -> f64 {
        if den == 0 {
            0.0
        } else {
            (100.0 * num as f64 / den as f64).clamp(0.0, 100.0)
        }
    };
    RawMetrics {
        loc,
        lloc,
        sloc,
        comments,
        multi,
        blank,
        c_pct_l: pct(comments, loc),
        c_pct_s: pct(comments, sloc),
        cm_pct_l: pct(comments + multi, loc),
    }
}

/// Indices of multiline-string tokens that form a statement on their own
/// (nothing but comments shares their newline/separator-delimited segment).
fn standalone_multiline_tokens(stream: &TokenStream) -> Vec<usize> {
    let mut out = Vec::new();
    let mut segment: Vec<usize> = Vec::new();
    let mut close = |segment: &mut Vec<usize>, tokens: &[crate::lexer::Token]| {
        let content: Vec<usize> = segment
            .iter()
            .copied()
            .filter(|&i| tokens[i].kind != TokenKind::Comment)
            .collect();
        if let [only] = content[..] {
            if tokens[only].kind == TokenKind::MultilineString {
                out.push(only);
            }
        }
        segment.clear();
    };
    for (index, token) in stream.tokens.iter().enumerate() {
        match token.kind {
            TokenKind::Newline | TokenKind::Separator => close(&mut segment, &stream.tokens),
            TokenKind::Indent | TokenKind::Dedent => {}
            _ => segment.push(index),
        }
    }
    close(&mut segment, &stream.tokens);
    out
}
