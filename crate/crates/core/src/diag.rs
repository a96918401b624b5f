//! Diagnostic categories and machine-readable error records.

use std::fmt;

use serde::Serialize;

use crate::syntax::SourceSpan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Lex,
    Parse,
    Unbound,
    ArityMismatch,
    DuplicateName,
    NotInferable,
    TypeMismatch,
    UniverseMismatch,
    EndpointMismatch,
    UnknownDefinition,
    ManifestDrift,
    TierViolation,
    Io,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Lex => "lex",
            Category::Parse => "parse",
            Category::Unbound => "unbound",
            Category::ArityMismatch => "arity-mismatch",
            Category::DuplicateName => "duplicate-name",
            Category::NotInferable => "not-inferable",
            Category::TypeMismatch => "type-mismatch",
            Category::UniverseMismatch => "universe-mismatch",
            Category::EndpointMismatch => "endpoint-mismatch",
            Category::UnknownDefinition => "unknown-definition",
            Category::ManifestDrift => "manifest-drift",
            Category::TierViolation => "tier-violation",
            Category::Io => "io",
        }
    }

    /// Process exit code for a run whose first error has this category.
    pub fn exit_code(self) -> i32 {
        match self {
            Category::Lex | Category::Parse | Category::Unbound | Category::ArityMismatch => 2,
            Category::DuplicateName
            | Category::NotInferable
            | Category::TypeMismatch
            | Category::UniverseMismatch
            | Category::EndpointMismatch
            | Category::UnknownDefinition => 1,
            Category::ManifestDrift | Category::TierViolation | Category::Io => 3,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub file: String,
    pub span: Option<SourceSpan>,
    pub category: Category,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
    pub declaration: Option<String>,
    pub message: String,
}

impl Diagnostic {
    pub fn new(file: impl Into<String>, category: Category, message: impl Into<String>) -> Self {
        Diagnostic {
            file: file.into(),
            span: None,
            category,
            expected: None,
            actual: None,
            declaration: None,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.category.exit_code()
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.span {
            Some(s) => write!(f, "{}:{}:{}: ", s.file, s.line, s.column)?,
            None => write!(f, "{}: ", self.file)?,
        }
        write!(f, "error[{}]: {}", self.category, self.message)?;
        if let Some(d) = &self.declaration {
            write!(f, "\n  in declaration `{d}`")?;
        }
        if let Some(e) = &self.expected {
            write!(f, "\n  expected: {e}")?;
        }
        if let Some(a) = &self.actual {
            write!(f, "\n  actual:   {a}")?;
        }
        Ok(())
    }
}
