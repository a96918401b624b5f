//! Corpus manifests and whole-corpus verification.
//!
//! A manifest is a tab-separated file with one record per declaration:
//! `file<TAB>name<TAB>tier<TAB>anchor`. Blank lines and lines starting
//! with `#` are ignored. Files are checked in the order they first appear.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::diag::{Category, Diagnostic};
use crate::driver::check_source;
use crate::env::GlobalEnv;
use crate::syntax::{parse_source, DeclKind, SourceFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Tier {
    /// Fully proved definition.
    #[serde(rename = "TIER1")]
    Tier1,
    /// Statement checked, proof postulated.
    #[serde(rename = "TIER2")]
    Tier2,
    /// Assumed axiom.
    #[serde(rename = "AXIOM")]
    Axiom,
}

impl Tier {
    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Tier1 => "TIER1",
            Tier::Tier2 => "TIER2",
            Tier::Axiom => "AXIOM",
        }
    }

    fn parse(s: &str) -> Option<Tier> {
        match s {
            "TIER1" => Some(Tier::Tier1),
            "TIER2" => Some(Tier::Tier2),
            "AXIOM" => Some(Tier::Axiom),
            _ => None,
        }
    }

    fn expected_kind(self) -> DeclKind {
        match self {
            Tier::Tier1 => DeclKind::Def,
            Tier::Tier2 | Tier::Axiom => DeclKind::Postulate,
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifestEntry {
    pub file: String,
    pub name: String,
    pub tier: Tier,
    pub anchor: String,
    #[serde(skip)]
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
    /// Directory the file names are relative to.
    pub dir: PathBuf,
    /// Path of the manifest itself, for diagnostics.
    pub path: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ManifestError {
    #[error("{path}: cannot read manifest: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}: malformed manifest record: {message}")]
    Malformed { path: String, line: usize, message: String },
}

impl ManifestError {
    pub fn to_diagnostic(&self) -> Diagnostic {
        let (path, category) = match self {
            ManifestError::Io { path, .. } => (path, Category::Io),
            ManifestError::Malformed { path, .. } => (path, Category::ManifestDrift),
        };
        Diagnostic::new(path.clone(), category, self.to_string())
    }
}

impl Manifest {
    pub fn parse(text: &str, dir: impl Into<PathBuf>, path: impl Into<String>) -> Result<Manifest, ManifestError> {
        let path = path.into();
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            if fields.len() != 4 {
                return Err(ManifestError::Malformed {
                    path,
                    line,
                    message: format!("expected 4 tab-separated fields, found {}", fields.len()),
                });
            }
            let tier = Tier::parse(fields[2].trim()).ok_or_else(|| ManifestError::Malformed {
                path: path.clone(),
                line,
                message: format!("unknown tier `{}`", fields[2]),
            })?;
            entries.push(ManifestEntry {
                file: fields[0].trim().to_string(),
                name: fields[1].trim().to_string(),
                tier,
                anchor: fields[3].trim().to_string(),
                line,
            });
        }
        Ok(Manifest { entries, dir: dir.into(), path })
    }

    pub fn load(path: &Path) -> Result<Manifest, ManifestError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ManifestError::Io { path: path.display().to_string(), message: e.to_string() })?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Manifest::parse(&text, dir, path.display().to_string())
    }

    /// Distinct files in first-appearance order.
    pub fn files(&self) -> Vec<&str> {
        let mut seen = HashSet::new();
        self.entries.iter().map(|e| e.file.as_str()).filter(|f| seen.insert(*f)).collect()
    }

    pub fn entry(&self, name: &str) -> Option<&ManifestEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// Not checked because an earlier error stopped verification.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeclReport {
    pub file: String,
    pub name: String,
    pub tier: Tier,
    pub anchor: String,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct FileReport {
    pub file: String,
    pub status: Status,
    pub declarations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub ok: bool,
    pub files: Vec<FileReport>,
    pub declarations: Vec<DeclReport>,
    pub counts: BTreeMap<Tier, usize>,
    /// Every postulate in the final environment, in declaration order.
    pub postulates: Vec<String>,
    pub diagnostics: Vec<Diagnostic>,
    pub duration_ms: u64,
}

impl CorpusReport {
    pub fn exit_code(&self) -> i32 {
        self.diagnostics.iter().map(Diagnostic::exit_code).max().unwrap_or(0)
    }
}

fn drift(file: &str, message: String) -> Diagnostic {
    Diagnostic::new(file, Category::ManifestDrift, message)
}

/// Checks that the manifest and the declarations in the files agree
/// before anything is type checked.
fn check_drift(manifest: &Manifest, sources: &[(String, SourceFile)]) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut listed: HashMap<&str, &ManifestEntry> = HashMap::new();
    for e in &manifest.entries {
        if listed.insert(&e.name, e).is_some() {
            out.push(drift(&manifest.path, format!("line {}: `{}` is listed more than once", e.line, e.name)));
        }
    }
    let mut found = HashSet::new();
    for (file, src) in sources {
        let Ok(module) = parse_source(&src.text) else { continue };
        for d in &module.decls {
            let span = Some(src.locate(d.name_span));
            match listed.get(&*d.name) {
                None => out.push(Diagnostic {
                    span,
                    declaration: Some(d.name.to_string()),
                    ..drift(file, format!("`{}` is not listed in the manifest", d.name))
                }),
                Some(e) if e.file != *file => out.push(Diagnostic {
                    span,
                    declaration: Some(d.name.to_string()),
                    ..drift(file, format!("`{}` is listed under `{}`", d.name, e.file))
                }),
                Some(e) => {
                    found.insert(&*e.name);
                    if e.tier.expected_kind() != d.kind {
                        let what = if d.kind == DeclKind::Def { "a definition" } else { "a postulate" };
                        out.push(Diagnostic {
                            span,
                            declaration: Some(d.name.to_string()),
                            ..Diagnostic::new(
                                file,
                                Category::TierViolation,
                                format!("`{}` is tagged {} but is {what}", d.name, e.tier),
                            )
                        });
                    }
                }
            }
        }
    }
    for e in &manifest.entries {
        let parsed = sources.iter().any(|(f, s)| f == &e.file && parse_source(&s.text).is_ok());
        if parsed && !found.contains(e.name.as_str()) {
            out.push(drift(&e.file, format!("manifest lists `{}` but the file does not declare it", e.name)));
        }
    }
    out
}

/// TIER1 declarations must not depend, through definitions, on TIER2
/// postulates.
fn check_dependencies(g: &GlobalEnv, manifest: &Manifest) -> Vec<Diagnostic> {
    let tier_of: HashMap<&str, Tier> = manifest.entries.iter().map(|e| (e.name.as_str(), e.tier)).collect();
    let mut out = Vec::new();
    for e in manifest.entries.iter().filter(|e| e.tier == Tier::Tier1) {
        let mut stack = vec![e.name.clone()];
        let mut seen: HashSet<String> = HashSet::new();
        while let Some(n) = stack.pop() {
            if !seen.insert(n.clone()) {
                continue;
            }
            let Some(entry) = g.get(&n) else { continue };
            if entry.is_postulate() {
                if tier_of.get(n.as_str()) == Some(&Tier::Tier2) {
                    out.push(Diagnostic {
                        declaration: Some(e.name.clone()),
                        ..Diagnostic::new(
                            &e.file,
                            Category::TierViolation,
                            format!("TIER1 declaration `{}` depends on TIER2 statement `{n}`", e.name),
                        )
                    });
                    break;
                }
                continue;
            }
            let mut refs = Vec::new();
            entry.ty.globals(&mut refs);
            if let Some(b) = &entry.body {
                b.globals(&mut refs);
            }
            stack.extend(refs.iter().map(|r| r.to_string()));
        }
    }
    out
}

/// Checks every file of the manifest, in order, starting from `env0`.
pub fn verify_corpus(env0: GlobalEnv, manifest: &Manifest, keep_going: bool) -> (CorpusReport, GlobalEnv) {
    let start = Instant::now();
    let mut g = env0;
    let mut diagnostics = Vec::new();
    let mut sources = Vec::new();
    for file in manifest.files() {
        let path = manifest.dir.join(file);
        match std::fs::read_to_string(&path) {
            Ok(text) => sources.push((file.to_string(), SourceFile::new(file, text))),
            Err(e) => {
                diagnostics.push(Diagnostic::new(file, Category::Io, format!("cannot read {}: {e}", path.display())))
            }
        }
    }
    if diagnostics.is_empty() {
        diagnostics.extend(check_drift(manifest, &sources));
    }

    let mut status: HashMap<String, Status> = HashMap::new();
    let mut files = Vec::new();
    let mut stopped = !diagnostics.is_empty();
    for (file, src) in &sources {
        if stopped {
            files.push(FileReport { file: file.clone(), status: Status::Skipped, declarations: 0 });
            continue;
        }
        let outcome = check_source(&mut g, src, keep_going);
        for d in &outcome.declarations {
            status.insert(d.name.clone(), if d.ok { Status::Pass } else { Status::Fail });
        }
        let ok = outcome.ok();
        files.push(FileReport {
            file: file.clone(),
            status: if ok { Status::Pass } else { Status::Fail },
            declarations: outcome.declarations.len(),
        });
        diagnostics.extend(outcome.diagnostics);
        if !ok && !keep_going {
            stopped = true;
        }
    }
    if diagnostics.is_empty() {
        diagnostics.extend(check_dependencies(&g, manifest));
    }

    let declarations: Vec<DeclReport> = manifest
        .entries
        .iter()
        .map(|e| DeclReport {
            file: e.file.clone(),
            name: e.name.clone(),
            tier: e.tier,
            anchor: e.anchor.clone(),
            status: status.get(&e.name).copied().unwrap_or(Status::Skipped),
        })
        .collect();
    let mut counts = BTreeMap::new();
    for e in &manifest.entries {
        *counts.entry(e.tier).or_insert(0) += 1;
    }
    let postulates = g.postulates().map(|e| e.name.to_string()).collect();
    let ok = diagnostics.is_empty() && declarations.iter().all(|d| d.status == Status::Pass);
    let report = CorpusReport {
        ok,
        files,
        declarations,
        counts,
        postulates,
        diagnostics,
        duration_ms: start.elapsed().as_millis() as u64,
    };
    (report, g)
}
