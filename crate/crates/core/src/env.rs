//! The global environment of checked declarations.

use indexmap::IndexMap;

use crate::syntax::{DeclKind, ScopeInfo, Span};
use crate::term::RcTerm;
use crate::Name;

#[derive(Clone, Debug)]
pub struct GlobalEntry {
    pub name: Name,
    pub kind: DeclKind,
    pub levels: Vec<Name>,
    pub ty: RcTerm,
    pub body: Option<RcTerm>,
    /// File the declaration came from.
    pub file: String,
    pub span: Span,
}

impl GlobalEntry {
    pub fn is_postulate(&self) -> bool {
        self.kind == DeclKind::Postulate
    }
}

/// Append-only, insertion-ordered map of checked declarations.
#[derive(Clone, Debug, Default)]
pub struct GlobalEnv {
    entries: IndexMap<Name, GlobalEntry>,
}

impl GlobalEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&GlobalEntry> {
        self.entries.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GlobalEntry> {
        self.entries.values()
    }

    pub fn postulates(&self) -> impl Iterator<Item = &GlobalEntry> {
        self.iter().filter(|e| e.is_postulate())
    }

    /// Only the checker should call this; the entry must already be checked.
    pub(crate) fn insert(&mut self, entry: GlobalEntry) {
        let previous = self.entries.insert(entry.name.clone(), entry);
        debug_assert!(previous.is_none());
    }
}

impl ScopeInfo for GlobalEnv {
    fn level_arity(&self, name: &str) -> Option<usize> {
        self.get(name).map(|e| e.levels.len())
    }
}
