//! Name resolution: surface declarations to core declarations.
//!
//! Bound variables become de Bruijn indices, references to earlier
//! declarations become `Global` nodes with explicit level arguments. A
//! declaration's telescope is turned into Π binders in its type and λ
//! binders in its body.

use super::ast::{Binder, Decl, DeclKind, Expr, ExprKind, Former, Sort};
use super::Span;
use crate::level::LevelExpr;
use crate::term::{RcTerm, Term};
use crate::Name;

/// What the resolver needs to know about declarations already in scope.
pub trait ScopeInfo {
    /// Number of level parameters of a global, or `None` if no such global.
    fn level_arity(&self, name: &str) -> Option<usize>;
}

impl ScopeInfo for std::collections::HashMap<Name, usize> {
    fn level_arity(&self, name: &str) -> Option<usize> {
        self.get(name).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreDecl {
    pub kind: DeclKind,
    pub name: Name,
    pub name_span: Span,
    pub levels: Vec<Name>,
    pub ty: Term,
    pub body: Option<Term>,
    pub span: Span,
    /// Names of the telescope binders, outermost first.
    pub params: Vec<Name>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ResolveErrorKind {
    #[error("unbound identifier `{0}`")]
    Unbound(Name),
    #[error("unbound level variable `{0}`")]
    UnboundLevel(Name),
    #[error("`{name}` expects {expected} level argument(s), got {found}")]
    ArityMismatch { name: Name, expected: usize, found: usize },
    #[error("level parameter `{0}` bound twice")]
    DuplicateLevel(Name),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind}")]
pub struct ResolveError {
    pub kind: ResolveErrorKind,
    pub span: Span,
}

struct Resolver<'a> {
    scope: &'a dyn ScopeInfo,
    levels: &'a [Name],
    locals: Vec<Name>,
}

pub fn resolve_decl(decl: &Decl, scope: &dyn ScopeInfo) -> Result<CoreDecl, ResolveError> {
    let levels: Vec<Name> = decl.levels.iter().map(|(n, _)| n.clone()).collect();
    for (i, (n, span)) in decl.levels.iter().enumerate() {
        if levels[..i].contains(n) {
            return Err(ResolveError { kind: ResolveErrorKind::DuplicateLevel(n.clone()), span: *span });
        }
    }
    let mut r = Resolver { scope, levels: &levels, locals: Vec::new() };

    let mut domains = Vec::new();
    let mut params = Vec::new();
    for b in &decl.params {
        for (name, span) in &b.names {
            domains.push((r.expr(&b.ty)?, *span));
            r.locals.push(name.clone());
            params.push(name.clone());
        }
    }
    let mut ty = r.expr(&decl.ty)?;
    let body = match &decl.body {
        Some(b) => Some(r.expr(b)?),
        None => None,
    };
    let mut body = body;
    for (dom, span) in domains.into_iter().rev() {
        ty = Term::Loc(span, Term::Pi(dom.rc(), ty.rc()).rc());
        body = body.map(|b| Term::Lam(b.rc()));
    }
    Ok(CoreDecl {
        kind: decl.kind,
        name: decl.name.clone(),
        name_span: decl.name_span,
        levels,
        ty,
        body,
        span: decl.span,
        params,
    })
}

impl Resolver<'_> {
    fn level(&self, l: &LevelExpr, span: Span) -> Result<LevelExpr, ResolveError> {
        for v in l.free_vars() {
            if !self.levels.contains(&v) {
                return Err(ResolveError { kind: ResolveErrorKind::UnboundLevel(v), span });
            }
        }
        Ok(l.clone())
    }

    fn lookup_local(&self, name: &str) -> Option<usize> {
        if name == "_" {
            return None;
        }
        self.locals.iter().rev().position(|n| &**n == name)
    }

    fn with_binders(
        &mut self,
        binders: &[Binder],
        body: &Expr,
        make: fn(RcTerm, RcTerm) -> Term,
        span: Span,
    ) -> Result<Term, ResolveError> {
        let mut doms = Vec::new();
        for b in binders {
            for (name, _) in &b.names {
                doms.push(self.expr(&b.ty)?);
                self.locals.push(name.clone());
            }
        }
        let result = self.expr(body);
        self.locals.truncate(self.locals.len() - doms.len());
        let mut acc = result?;
        for dom in doms.into_iter().rev() {
            acc = Term::Loc(span, make(dom.rc(), acc.rc()).rc());
        }
        Ok(acc)
    }

    fn anonymous<F: FnOnce(&mut Self) -> Result<Term, ResolveError>>(&mut self, f: F) -> Result<Term, ResolveError> {
        self.locals.push("_".into());
        let r = f(self);
        self.locals.pop();
        r
    }

    fn expr(&mut self, e: &Expr) -> Result<Term, ResolveError> {
        let span = e.span;
        let t = match &e.kind {
            ExprKind::Ident(name) => {
                if let Some(i) = self.lookup_local(name) {
                    Term::Var(i)
                } else {
                    match self.scope.level_arity(name) {
                        Some(0) => Term::Global(name.clone(), Vec::new()),
                        Some(n) => {
                            return Err(ResolveError {
                                kind: ResolveErrorKind::ArityMismatch { name: name.clone(), expected: n, found: 0 },
                                span,
                            })
                        }
                        None => return Err(ResolveError { kind: ResolveErrorKind::Unbound(name.clone()), span }),
                    }
                }
            }
            ExprKind::LevelApp(name, ls) => {
                let expected = if self.lookup_local(name).is_some() { Some(0) } else { self.scope.level_arity(name) };
                match expected {
                    None => return Err(ResolveError { kind: ResolveErrorKind::Unbound(name.clone()), span }),
                    Some(n) if n != ls.len() => {
                        return Err(ResolveError {
                            kind: ResolveErrorKind::ArityMismatch { name: name.clone(), expected: n, found: ls.len() },
                            span,
                        })
                    }
                    Some(_) => {}
                }
                let ls = ls.iter().map(|l| self.level(l, span)).collect::<Result<_, _>>()?;
                Term::Global(name.clone(), ls)
            }
            ExprKind::Sort(sort, l) => {
                let l = self.level(l, span)?;
                match sort {
                    Sort::Universe => Term::Universe(l),
                    Sort::Empty => Term::Empty(l),
                    Sort::Unit => Term::Unit(l),
                }
            }
            ExprKind::Nat => Term::Nat,
            ExprKind::Zero => Term::Zero,
            ExprKind::Star => Term::Star,
            ExprKind::Numeral(n) => Term::numeral(*n),
            ExprKind::Former(f, args) => {
                let a = args.iter().map(|a| self.expr(a).map(Term::rc)).collect::<Result<Vec<_>, _>>()?;
                let a = |i: usize| a[i].clone();
                match f {
                    Former::Id => Term::Id(a(0), a(1), a(2)),
                    Former::Refl => Term::Refl(a(0), a(1)),
                    Former::J => Term::J(a(0), a(1), a(2), a(3), a(4), a(5)),
                    Former::NatInd => Term::NatInd(a(0), a(1), a(2), a(3)),
                    Former::SumInd => Term::SumInd(a(0), a(1), a(2), a(3)),
                    Former::Absurd => Term::Absurd(a(0), a(1)),
                    Former::UnitInd => Term::UnitInd(a(0), a(1), a(2)),
                    Former::Suc => Term::Suc(a(0)),
                    Former::Inl => Term::Inl(a(0)),
                    Former::Inr => Term::Inr(a(0)),
                    Former::Pr1 => Term::Pr1(a(0)),
                    Former::Pr2 => Term::Pr2(a(0)),
                }
            }
            ExprKind::Pi(bs, body) => return self.with_binders(bs, body, Term::Pi, span),
            ExprKind::Sigma(bs, body) => return self.with_binders(bs, body, Term::Sigma, span),
            ExprKind::Lam(xs, body) => {
                self.locals.extend(xs.iter().map(|(n, _)| n.clone()));
                let r = self.expr(body);
                self.locals.truncate(self.locals.len() - xs.len());
                let mut t = r?;
                for _ in xs {
                    t = Term::Lam(t.rc());
                }
                t
            }
            ExprKind::Arrow(a, b) => {
                let a = self.expr(a)?;
                let b = self.anonymous(|r| r.expr(b))?;
                Term::Pi(a.rc(), b.rc())
            }
            ExprKind::Product(a, b) => {
                let a = self.expr(a)?;
                let b = self.anonymous(|r| r.expr(b))?;
                Term::Sigma(a.rc(), b.rc())
            }
            ExprKind::Sum(a, b) => Term::Sum(self.expr(a)?.rc(), self.expr(b)?.rc()),
            ExprKind::Eq(a, b, ty) => Term::Id(self.expr(ty)?.rc(), self.expr(a)?.rc(), self.expr(b)?.rc()),
            ExprKind::App(f, a) => Term::App(self.expr(f)?.rc(), self.expr(a)?.rc()),
            ExprKind::Pair(a, b) => Term::Pair(self.expr(a)?.rc(), self.expr(b)?.rc()),
        };
        Ok(Term::Loc(span, t.rc()))
    }
}
