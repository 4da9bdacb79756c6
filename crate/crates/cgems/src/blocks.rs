//! Block-structure recovery for indentation-structured sources.
//!
//! Walks a token stream and rebuilds the nesting of function- and
//! class-like blocks from indent/dedent tokens. The result is a tree with
//! exactly one module root; every other node is a function, method
//! (function directly inside a class) or class with its line extent.
//! One-line definitions (`def f(): return 1`) become blocks whose extent
//! is the defining logical line.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexer::{LexError, Token, TokenKind, TokenStream};
use crate::profile::LanguageProfile;

/// What a block is, structurally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockRole {
    Module,
    Function,
    /// Function defined directly inside a class body.
    Method,
    Class,
}

/// One block and everything nested inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockNode {
    pub name: String,
    pub role: BlockRole,
    /// 1-based line of the defining keyword (or 1 for the module root).
    pub start_line: usize,
    /// 1-based last line of the block body.
    pub end_line: usize,
    pub children: Vec<BlockNode>,
}

impl BlockNode {
    /// Preorder depth-first walk over this node and all descendants, i.e.
    /// document order.
    pub fn walk(&self) -> Vec<&BlockNode> {
        fn visit<'a>(node: &'a BlockNode, out: &mut Vec<&'a BlockNode>) {
            out.push(node);
            for child in &node.children {
                visit(child, out);
            }
        }
        let mut out = Vec::new();
        visit(self, &mut out);
        out
    }
}

/// Block tree for one source file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockTree {
    pub root: BlockNode,
}

impl BlockTree {
    /// All non-module blocks in document order.
    pub fn definitions(&self) -> Vec<&BlockNode> {
        self.root
            .walk()
            .into_iter()
            .filter(|n| n.role != BlockRole::Module)
            .collect()
    }

    /// A tree holding only a module root covering `lines` physical lines.
    pub fn module_only(lines: usize) -> Self {
        BlockTree {
            root: BlockNode {
                name: "<module>".to_string(),
                role: BlockRole::Module,
                start_line: 1,
                end_line: lines,
                children: Vec::new(),
            },
        }
    }
}

/// Structural errors; block extents cannot be trusted after these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("dedent on line {line} does not match any open block")]
    InconsistentDedent { line: usize },
    #[error("lexical error on line {line} truncated the token stream")]
    Lexical { line: usize },
}

/// Rebuild the block tree of a token stream.
///
/// Fails when the stream carries a lexical error, because extents derived
/// from a truncated or mis-indented stream would be wrong.
pub fn block_structure(
    stream: &TokenStream,
    profile: &LanguageProfile,
) -> Result<BlockTree, StructureError> {
    match stream.error {
        Some(LexError::InconsistentDedent { line }) => {
            return Err(StructureError::InconsistentDedent { line })
        }
        Some(LexError::UnterminatedString { line }) => {
            return Err(StructureError::Lexical { line })
        }
        None => {}
    }
    Ok(Builder::new(profile).build(stream))
}

/// A definition whose opener has been seen but whose body has not been
/// attached yet.
struct Pending {
    name: String,
    is_class: bool,
    start_line: usize,
    /// Last content line of the opener's logical line; the extent of a
    /// one-liner.
    segment_end: usize,
    /// Set once the opener's logical line has ended; the next token
    /// decides between an indented suite and a one-liner.
    armed: bool,
}

/// A definition whose indented suite is currently open.
struct Open {
    name: String,
    is_class: bool,
    start_line: usize,
    suite_depth: usize,
    children: Vec<BlockNode>,
}

struct Builder<'p> {
    profile: &'p LanguageProfile,
    depth: usize,
    stack: Vec<Open>,
    root_children: Vec<BlockNode>,
    pending: Option<Pending>,
    /// Kinds of content tokens in the current segment, used to recognise
    /// openers (an opener only counts when preceded by nothing but
    /// keywords, as in `async def`).
    segment_kinds: Vec<TokenKind>,
    last_content_line: usize,
}

impl<'p> Builder<'p> {
    fn new(profile: &'p LanguageProfile) -> Self {
        Builder {
            profile,
            depth: 0,
            stack: Vec::new(),
            root_children: Vec::new(),
            pending: None,
            segment_kinds: Vec::new(),
            last_content_line: 0,
        }
    }

    fn build(mut self, stream: &TokenStream) -> BlockTree {
        for token in &stream.tokens {
            // An armed pending definition is resolved by the next token:
            // an indent opens its suite, anything else makes it a one-liner.
            // Comments and the newlines of blank or comment-only lines say
            // nothing about the body and are ignored here.
            if self.pending.as_ref().is_some_and(|p| p.armed)
                && token.kind != TokenKind::Comment
                && token.kind != TokenKind::Newline
            {
                let pending = self.pending.take().unwrap();
                if token.kind == TokenKind::Indent {
                    self.stack.push(Open {
                        name: pending.name,
                        is_class: pending.is_class,
                        start_line: pending.start_line,
                        suite_depth: self.depth + 1,
                        children: Vec::new(),
                    });
                } else {
                    self.close_node(
                        pending.name,
                        pending.is_class,
                        pending.start_line,
                        pending.segment_end,
                        Vec::new(),
                    );
                }
            }
            match token.kind {
                TokenKind::Indent => self.depth += 1,
                TokenKind::Dedent => {
                    self.depth = self.depth.saturating_sub(1);
                    while self
                        .stack
                        .last()
                        .is_some_and(|open| open.suite_depth > self.depth)
                    {
                        let open = self.stack.pop().unwrap();
                        self.close_node(
                            open.name,
                            open.is_class,
                            open.start_line,
                            self.last_content_line,
                            open.children,
                        );
                    }
                }
                TokenKind::Newline => {
                    if let Some(pending) = &mut self.pending {
                        pending.armed = true;
                        pending.segment_end = self.last_content_line.max(pending.start_line);
                    }
                    self.segment_kinds.clear();
                }
                TokenKind::Separator => self.segment_kinds.clear(),
                TokenKind::Comment => {}
                _ => self.content_token(token),
            }
        }
        if let Some(pending) = self.pending.take() {
            let end = pending.segment_end.max(self.last_content_line);
            self.close_node(pending.name, pending.is_class, pending.start_line, end, Vec::new());
        }
        while let Some(open) = self.stack.pop() {
            self.close_node(
                open.name,
                open.is_class,
                open.start_line,
                self.last_content_line,
                open.children,
            );
        }
        BlockTree {
            root: BlockNode {
                name: "<module>".to_string(),
                role: BlockRole::Module,
                start_line: 1,
                end_line: stream.physical_lines,
                children: self.root_children,
            },
        }
    }

    fn content_token(&mut self, token: &Token) {
        self.last_content_line = self.last_content_line.max(token.end_line());
        if token.kind == TokenKind::Keyword
            && self.profile.is_block_opener(&token.lexeme)
            && self.pending.is_none()
            && self.segment_kinds.iter().all(|&k| k == TokenKind::Keyword)
        {
            self.pending = Some(Pending {
                name: "<anonymous>".to_string(),
                is_class: self.profile.class_keywords.contains(&token.lexeme),
                start_line: token.line,
                segment_end: token.line,
                armed: false,
            });
        } else if let Some(pending) = &mut self.pending {
            if !pending.armed
                && pending.name == "<anonymous>"
                && token.kind == TokenKind::Identifier
            {
                pending.name = token.lexeme.clone();
            }
        }
        self.segment_kinds.push(token.kind);
    }

    fn close_node(
        &mut self,
        name: String,
        is_class: bool,
        start_line: usize,
        end_line: usize,
        children: Vec<BlockNode>,
    ) {
        let parent_is_class = self.stack.last().map(|open| open.is_class);
        let role = if is_class {
            BlockRole::Class
        } else if parent_is_class == Some(true) {
            BlockRole::Method
        } else {
            BlockRole::Function
        };
        let node = BlockNode { name, role, start_line, end_line: end_line.max(start_line), children };
        match self.stack.last_mut() {
            Some(open) => open.children.push(node),
            None => self.root_children.push(node),
        }
    }
}
