//! Checking whole source files: parse, then resolve and check each
//! declaration in order against a growing global environment.

use std::collections::HashSet;

use serde::Serialize;

use crate::check::{check_declaration, TypeError};
use crate::diag::{Category, Diagnostic};
use crate::env::GlobalEnv;
use crate::syntax::parser::SyntaxError;
use crate::syntax::resolve::ResolveErrorKind;
use crate::syntax::{parse_source, resolve_decl, DeclKind, SourceFile};
use crate::Name;

/// The prelude shipped with the checker: basic vocabulary plus the global
/// axioms (univalence, extensionality, truncation).
pub const PRELUDE: &str = include_str!("../../../corpus/prelude.uv");
pub const PRELUDE_FILE: &str = "prelude.uv";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeclOutcome {
    pub name: String,
    pub postulate: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FileOutcome {
    pub file: String,
    pub declarations: Vec<DeclOutcome>,
    pub diagnostics: Vec<Diagnostic>,
}

impl FileOutcome {
    pub fn ok(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

fn syntax_diagnostic(file: &SourceFile, e: &SyntaxError) -> Diagnostic {
    let category = match e {
        SyntaxError::Lex(_) => Category::Lex,
        SyntaxError::Parse(_) => Category::Parse,
    };
    Diagnostic { span: Some(file.locate(e.span())), ..Diagnostic::new(&file.name, category, e.to_string()) }
}

pub fn type_error_diagnostic(file: &SourceFile, decl: &str, e: TypeError) -> Diagnostic {
    Diagnostic {
        file: file.name.clone(),
        span: e.span.map(|s| file.locate(s)),
        category: e.category,
        expected: e.expected,
        actual: e.actual,
        declaration: Some(decl.to_string()),
        message: e.message,
    }
}

/// Checks every declaration of `file`, adding the ones that pass to `g`.
///
/// Without `keep_going` checking stops at the first error. With it, later
/// declarations are still checked; errors that only report a reference to
/// an earlier failed declaration are not repeated.
pub fn check_source(g: &mut GlobalEnv, file: &SourceFile, keep_going: bool) -> FileOutcome {
    let mut out = FileOutcome { file: file.name.clone(), ..Default::default() };
    let module = match parse_source(&file.text) {
        Ok(m) => m,
        Err(e) => {
            out.diagnostics.push(syntax_diagnostic(file, &e));
            return out;
        }
    };
    let mut failed: HashSet<Name> = HashSet::new();
    for decl in &module.decls {
        if !out.diagnostics.is_empty() && !keep_going {
            break;
        }
        let mut outcome =
            DeclOutcome { name: decl.name.to_string(), postulate: decl.kind == DeclKind::Postulate, ok: false };
        match resolve_decl(decl, g) {
            Err(e) => {
                let consequential = matches!(&e.kind, ResolveErrorKind::Unbound(n) if failed.contains(n));
                if !consequential {
                    let category = match e.kind {
                        ResolveErrorKind::Unbound(_) | ResolveErrorKind::UnboundLevel(_) => Category::Unbound,
                        ResolveErrorKind::ArityMismatch { .. } => Category::ArityMismatch,
                        ResolveErrorKind::DuplicateLevel(_) => Category::DuplicateName,
                    };
                    out.diagnostics.push(Diagnostic {
                        span: Some(file.locate(e.span)),
                        declaration: Some(decl.name.to_string()),
                        ..Diagnostic::new(&file.name, category, e.to_string())
                    });
                }
                failed.insert(decl.name.clone());
            }
            Ok(core) => match check_declaration(g, &core, &file.name) {
                Ok(()) => outcome.ok = true,
                Err(e) => {
                    // a duplicate does not make the existing name unusable
                    if e.category != Category::DuplicateName {
                        failed.insert(decl.name.clone());
                    }
                    out.diagnostics.push(type_error_diagnostic(file, &decl.name, e));
                }
            },
        }
        out.declarations.push(outcome);
    }
    out
}

/// Global environment containing exactly the checked prelude.
pub fn prelude_env() -> GlobalEnv {
    let mut g = GlobalEnv::new();
    let outcome = check_source(&mut g, &SourceFile::new(PRELUDE_FILE, PRELUDE), false);
    if let Some(d) = outcome.diagnostics.first() {
        panic!("the bundled prelude does not check:\n{d}");
    }
    g
}
