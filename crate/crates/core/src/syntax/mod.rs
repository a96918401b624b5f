//! The `.uv` surface language: tokens, parser, pretty printer and name
//! resolution into the core calculus.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod resolve;

use serde::Serialize;

pub use ast::{Binder, Decl, DeclKind, Expr, ExprKind, Former, Module};
pub use lexer::{tokenize, LexError, Tok, Token};
pub use parser::{parse_module, parse_source, ParseError};
pub use resolve::{resolve_decl, CoreDecl, ResolveError, ScopeInfo};

/// Byte range into a source file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: u32,
    pub end: u32,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start: start as u32, end: end as u32 }
    }

    pub fn to(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

/// A span resolved against a file, with 1-based line and column of its start.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub file: String,
    pub start: u32,
    pub end: u32,
    pub line: u32,
    pub column: u32,
}

#[derive(Clone, Debug)]
pub struct SourceFile {
    pub name: String,
    pub text: String,
    line_starts: Vec<usize>,
}

impl SourceFile {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        let text = text.into();
        let line_starts = std::iter::once(0).chain(text.match_indices('\n').map(|(i, _)| i + 1)).collect();
        SourceFile { name: name.into(), text, line_starts }
    }

    pub fn locate(&self, span: Span) -> SourceSpan {
        let start = (span.start as usize).min(self.text.len());
        let line = self.line_starts.partition_point(|&s| s <= start);
        let line_start = self.line_starts[line - 1];
        let column = self.text[line_start..start].chars().count() + 1;
        SourceSpan {
            file: self.name.clone(),
            start: span.start,
            end: span.end,
            line: line as u32,
            column: column as u32,
        }
    }
}
