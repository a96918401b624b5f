//! Core syntax with de Bruijn indices.
//!
//! Binders carry no names, so α-equivalent terms are structurally equal.
//! `Loc` records a source position for diagnostics; evaluation ignores it
//! and readback never produces it.

use std::fmt::{self, Write};
use std::rc::Rc;

use crate::level::LevelExpr;
use crate::syntax::Span;
use crate::Name;

pub type RcTerm = Rc<Term>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Global(Name, Vec<LevelExpr>),
    Universe(LevelExpr),
    Pi(RcTerm, RcTerm),
    Lam(RcTerm),
    App(RcTerm, RcTerm),
    Sigma(RcTerm, RcTerm),
    Pair(RcTerm, RcTerm),
    Pr1(RcTerm),
    Pr2(RcTerm),
    Id(RcTerm, RcTerm, RcTerm),
    Refl(RcTerm, RcTerm),
    /// `J A a motive base y p`
    J(RcTerm, RcTerm, RcTerm, RcTerm, RcTerm, RcTerm),
    Sum(RcTerm, RcTerm),
    Inl(RcTerm),
    Inr(RcTerm),
    /// `sumInd motive onLeft onRight scrutinee`
    SumInd(RcTerm, RcTerm, RcTerm, RcTerm),
    Empty(LevelExpr),
    /// `absurd motive t`
    Absurd(RcTerm, RcTerm),
    Unit(LevelExpr),
    Star,
    /// `unitInd motive base t`
    UnitInd(RcTerm, RcTerm, RcTerm),
    Nat,
    Zero,
    Suc(RcTerm),
    /// `natInd motive zeroCase sucCase n`
    NatInd(RcTerm, RcTerm, RcTerm, RcTerm),
    Loc(Span, RcTerm),
}

impl Term {
    pub fn rc(self) -> RcTerm {
        Rc::new(self)
    }

    pub fn numeral(n: u32) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::Suc(t.rc()))
    }

    /// Copy of the term with all `Loc` wrappers removed.
    pub fn strip_locs(&self) -> Term {
        use Term::*;
        let s = |t: &RcTerm| t.strip_locs().rc();
        match self {
            Loc(_, t) => t.strip_locs(),
            Var(_) | Global(..) | Universe(_) | Empty(_) | Unit(_) | Star | Nat | Zero => self.clone(),
            Pi(a, b) => Pi(s(a), s(b)),
            Lam(b) => Lam(s(b)),
            App(f, a) => App(s(f), s(a)),
            Sigma(a, b) => Sigma(s(a), s(b)),
            Pair(a, b) => Pair(s(a), s(b)),
            Pr1(t) => Pr1(s(t)),
            Pr2(t) => Pr2(s(t)),
            Id(a, x, y) => Id(s(a), s(x), s(y)),
            Refl(a, x) => Refl(s(a), s(x)),
            J(a, x, c, d, y, p) => J(s(a), s(x), s(c), s(d), s(y), s(p)),
            Sum(a, b) => Sum(s(a), s(b)),
            Inl(t) => Inl(s(t)),
            Inr(t) => Inr(s(t)),
            SumInd(c, l, r, t) => SumInd(s(c), s(l), s(r), s(t)),
            Absurd(c, t) => Absurd(s(c), s(t)),
            UnitInd(c, b, t) => UnitInd(s(c), s(b), s(t)),
            Suc(t) => Suc(s(t)),
            NatInd(c, z, k, n) => NatInd(s(c), s(z), s(k), s(n)),
        }
    }

    /// Names of globals referenced anywhere in the term.
    pub fn globals(&self, out: &mut Vec<Name>) {
        use Term::*;
        match self {
            Global(n, _) => {
                if !out.contains(n) {
                    out.push(n.clone())
                }
            }
            Var(_) | Universe(_) | Empty(_) | Unit(_) | Star | Nat | Zero => {}
            Loc(_, t) | Lam(t) | Pr1(t) | Pr2(t) | Inl(t) | Inr(t) | Suc(t) => t.globals(out),
            Pi(a, b) | App(a, b) | Sigma(a, b) | Pair(a, b) | Sum(a, b) | Refl(a, b) | Absurd(a, b) => {
                a.globals(out);
                b.globals(out)
            }
            Id(a, b, c) | UnitInd(a, b, c) => {
                a.globals(out);
                b.globals(out);
                c.globals(out)
            }
            SumInd(a, b, c, d) | NatInd(a, b, c, d) => {
                for t in [a, b, c, d] {
                    t.globals(out)
                }
            }
            J(a, b, c, d, e, f) => {
                for t in [a, b, c, d, e, f] {
                    t.globals(out)
                }
            }
        }
    }

    /// Number of nodes, ignoring `Loc`.
    pub fn size(&self) -> usize {
        use Term::*;
        match self {
            Loc(_, t) => t.size(),
            Var(_) | Global(..) | Universe(_) | Empty(_) | Unit(_) | Star | Nat | Zero => 1,
            Lam(t) | Pr1(t) | Pr2(t) | Inl(t) | Inr(t) | Suc(t) => 1 + t.size(),
            Pi(a, b) | App(a, b) | Sigma(a, b) | Pair(a, b) | Sum(a, b) | Refl(a, b) | Absurd(a, b) => {
                1 + a.size() + b.size()
            }
            Id(a, b, c) | UnitInd(a, b, c) => 1 + a.size() + b.size() + c.size(),
            SumInd(a, b, c, d) | NatInd(a, b, c, d) => 1 + a.size() + b.size() + c.size() + d.size(),
            J(a, b, c, d, e, f) => 1 + a.size() + b.size() + c.size() + d.size() + e.size() + f.size(),
        }
    }

    /// Rebuilds the node with `f` applied to each child. `f` also gets the
    /// number of variables the node binds around that child.
    fn map_children(&self, mut f: impl FnMut(&RcTerm, usize) -> RcTerm) -> Term {
        use Term::*;
        match self {
            Var(_) | Global(..) | Universe(_) | Empty(_) | Unit(_) | Star | Nat | Zero => self.clone(),
            Loc(sp, t) => Loc(*sp, f(t, 0)),
            Pi(a, b) => Pi(f(a, 0), f(b, 1)),
            Lam(b) => Lam(f(b, 1)),
            App(g, a) => App(f(g, 0), f(a, 0)),
            Sigma(a, b) => Sigma(f(a, 0), f(b, 1)),
            Pair(a, b) => Pair(f(a, 0), f(b, 0)),
            Pr1(t) => Pr1(f(t, 0)),
            Pr2(t) => Pr2(f(t, 0)),
            Id(a, x, y) => Id(f(a, 0), f(x, 0), f(y, 0)),
            Refl(a, x) => Refl(f(a, 0), f(x, 0)),
            J(a, x, c, d, y, p) => J(f(a, 0), f(x, 0), f(c, 0), f(d, 0), f(y, 0), f(p, 0)),
            Sum(a, b) => Sum(f(a, 0), f(b, 0)),
            Inl(t) => Inl(f(t, 0)),
            Inr(t) => Inr(f(t, 0)),
            SumInd(c, l, r, t) => SumInd(f(c, 0), f(l, 0), f(r, 0), f(t, 0)),
            Absurd(c, t) => Absurd(f(c, 0), f(t, 0)),
            UnitInd(c, b, t) => UnitInd(f(c, 0), f(b, 0), f(t, 0)),
            Suc(t) => Suc(f(t, 0)),
            NatInd(c, z, k, n) => NatInd(f(c, 0), f(z, 0), f(k, 0), f(n, 0)),
        }
    }

    /// Whether de Bruijn index `i` occurs free.
    pub fn mentions(&self, i: usize) -> bool {
        if let Term::Var(j) = self {
            return *j == i;
        }
        let mut hit = false;
        self.map_children(|t, k| {
            hit = hit || t.mentions(i + k);
            t.clone()
        });
        hit
    }

    /// Removes binder `cutoff`, which must not occur.
    fn unshift(&self, cutoff: usize) -> Term {
        match self {
            Term::Var(j) if *j > cutoff => Term::Var(j - 1),
            Term::Var(_) => self.clone(),
            _ => self.map_children(|t, k| t.unshift(cutoff + k).rc()),
        }
    }

    /// Contracts `λ x, f x` to `f` and `(pr1 t, pr2 t)` to `t`, bottom up.
    /// Readback is η-long; this is only for showing terms to people.
    pub fn eta_contract(&self) -> Term {
        let t = self.map_children(|c, _| c.eta_contract().rc());
        match &t {
            Term::Lam(body) => match &**body {
                Term::App(f, a) if matches!(**a, Term::Var(0)) && !f.mentions(0) => f.unshift(0),
                _ => t,
            },
            Term::Pair(a, b) => match (&**a, &**b) {
                (Term::Pr1(x), Term::Pr2(y)) if x == y => (**x).clone(),
                _ => t,
            },
            _ => t,
        }
    }

    fn as_numeral(&self) -> Option<u32> {
        match self {
            Term::Zero => Some(0),
            Term::Suc(t) => t.as_numeral().map(|n| n + 1),
            Term::Loc(_, t) => t.as_numeral(),
            _ => None,
        }
    }

    /// Renders the term in surface syntax, naming bound variables after
    /// their depth. `names` supplies names for the free variables,
    /// innermost last.
    pub fn display_in(&self, names: &[Name]) -> String {
        let mut p = TermPrinter { names: names.to_vec(), out: String::new() };
        p.term(self, 0);
        p.out
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in(&[]))
    }
}

struct TermPrinter {
    names: Vec<Name>,
    out: String,
}

impl TermPrinter {
    fn fresh(&self) -> Name {
        let mut i = self.names.len();
        loop {
            let candidate: Name = format!("x{i}").into();
            if !self.names.contains(&candidate) {
                return candidate;
            }
            i += 1;
        }
    }

    fn bind<R>(&mut self, f: impl FnOnce(&mut Self, Name) -> R) -> R {
        let n = self.fresh();
        self.names.push(n.clone());
        let r = f(self, n);
        self.names.pop();
        r
    }

    fn var(&self, i: usize) -> String {
        match self.names.len().checked_sub(i + 1) {
            Some(k) => self.names[k].to_string(),
            None => format!("#{i}"),
        }
    }

    fn prec(t: &Term) -> u8 {
        use Term::*;
        match t {
            Loc(_, t) => Self::prec(t),
            Pi(_, b) if !b.mentions(0) => 1,
            Sigma(_, b) if !b.mentions(0) => 4,
            Pi(..) | Sigma(..) | Lam(..) => 0,
            Id(..) => 2,
            Sum(..) => 3,
            App(..) | Pr1(_) | Pr2(_) | Refl(..) | J(..) | Inl(_) | Inr(_) | SumInd(..) | Absurd(..) | UnitInd(..)
            | NatInd(..) | Universe(_) | Empty(_) | Unit(_) => 5,
            Suc(_) if t.as_numeral().is_none() => 5,
            _ => 6,
        }
    }

    fn args(&mut self, kw: &str, args: &[&RcTerm]) {
        self.out.push_str(kw);
        for a in args {
            self.out.push(' ');
            self.term(a, 6);
        }
    }

    fn term(&mut self, t: &Term, ctx: u8) {
        use Term::*;
        let parens = Self::prec(t) < ctx;
        if parens {
            self.out.push('(');
        }
        match t {
            Loc(_, t) => self.term(t, ctx.min(Self::prec(t))),
            Var(i) => {
                let s = self.var(*i);
                self.out.push_str(&s)
            }
            Global(n, ls) => {
                self.out.push_str(n);
                if !ls.is_empty() {
                    let ls: Vec<String> = ls.iter().map(crate::syntax::pretty::level_atom).collect();
                    write!(self.out, " [{}]", ls.join(" ")).unwrap();
                }
            }
            Universe(l) => write!(self.out, "U {}", crate::syntax::pretty::level_atom(l)).unwrap(),
            Empty(l) => write!(self.out, "Empty {}", crate::syntax::pretty::level_atom(l)).unwrap(),
            Unit(l) => write!(self.out, "Unit {}", crate::syntax::pretty::level_atom(l)).unwrap(),
            Pi(a, b) if !b.mentions(0) => {
                self.term(a, 2);
                self.out.push_str(" → ");
                self.bind(|p, _| p.term(b, 0));
            }
            Sigma(a, b) if !b.mentions(0) => {
                self.term(a, 5);
                self.out.push_str(" × ");
                self.bind(|p, _| p.term(b, 4));
            }
            Pi(a, b) | Sigma(a, b) => {
                let sym = if matches!(t, Pi(..)) { "Π" } else { "Σ" };
                self.out.push_str(sym);
                self.out.push_str(" (");
                let x = self.fresh();
                write!(self.out, "{x} : ").unwrap();
                self.term(a, 0);
                self.out.push_str("), ");
                self.bind(|p, _| p.term(b, 0));
            }
            Lam(b) => {
                self.out.push('λ');
                let mut body = b;
                let mut bound = 0;
                loop {
                    let x = self.fresh();
                    write!(self.out, " {x}").unwrap();
                    self.names.push(x);
                    bound += 1;
                    match &**body {
                        Lam(inner) => body = inner,
                        _ => break,
                    }
                }
                self.out.push_str(", ");
                self.term(body, 0);
                for _ in 0..bound {
                    self.names.pop();
                }
            }
            App(f, a) => {
                self.term(f, 5);
                self.out.push(' ');
                self.term(a, 6);
            }
            Pair(a, b) => {
                self.out.push('(');
                self.term(a, 0);
                self.out.push_str(", ");
                self.term(b, 0);
                self.out.push(')');
            }
            Pr1(x) => self.args("pr1", &[x]),
            Pr2(x) => self.args("pr2", &[x]),
            Id(a, x, y) => {
                self.term(x, 3);
                self.out.push_str(" = ");
                self.term(y, 3);
                self.out.push_str(" in ");
                self.term(a, 3);
            }
            Refl(a, x) => self.args("refl", &[a, x]),
            J(a, x, c, d, y, p) => self.args("J", &[a, x, c, d, y, p]),
            Sum(a, b) => {
                self.term(a, 4);
                self.out.push_str(" + ");
                self.term(b, 3);
            }
            Inl(x) => self.args("inl", &[x]),
            Inr(x) => self.args("inr", &[x]),
            SumInd(c, l, r, s) => self.args("sumInd", &[c, l, r, s]),
            Absurd(c, x) => self.args("absurd", &[c, x]),
            Star => self.out.push_str("star"),
            UnitInd(c, b, x) => self.args("unitInd", &[c, b, x]),
            Nat => self.out.push('ℕ'),
            Zero => self.out.push_str("zero"),
            Suc(x) => match t.as_numeral() {
                Some(n) => write!(self.out, "{n}").unwrap(),
                None => self.args("suc", &[x]),
            },
            NatInd(c, z, s, n) => self.args("natInd", &[c, z, s, n]),
        }
        if parens {
            self.out.push(')');
        }
    }
}
