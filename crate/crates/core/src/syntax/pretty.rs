//! Printer for surface syntax. The output parses back to the same tree.

use std::fmt::Write;

use super::ast::*;
use crate::level::LevelExpr;

const BINDER: u8 = 0;
const ARROW: u8 = 1;
const EQ: u8 = 2;
const SUM: u8 = 3;
const PROD: u8 = 4;
const APP: u8 = 5;
const ATOM: u8 = 6;

pub fn print_module(m: &Module) -> String {
    let mut out = String::new();
    for (i, d) in m.decls.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&print_decl(d));
        out.push('\n');
    }
    out
}

pub fn print_decl(d: &Decl) -> String {
    let mut out = String::new();
    out.push_str(match d.kind {
        DeclKind::Def => "def ",
        DeclKind::Postulate => "postulate ",
    });
    out.push_str(&d.name);
    if !d.levels.is_empty() {
        let names: Vec<&str> = d.levels.iter().map(|(n, _)| &**n).collect();
        write!(out, " [{}]", names.join(" ")).unwrap();
    }
    for b in &d.params {
        out.push(' ');
        print_binder(b, &mut out);
    }
    out.push_str(" :\n  ");
    print_expr(&d.ty, BINDER, &mut out);
    if let Some(body) = &d.body {
        out.push_str("\n  := ");
        print_expr(body, BINDER, &mut out);
    }
    out
}

pub fn print_expr_string(e: &Expr) -> String {
    let mut out = String::new();
    print_expr(e, BINDER, &mut out);
    out
}

fn print_binder(b: &Binder, out: &mut String) {
    out.push('(');
    let names: Vec<&str> = b.names.iter().map(|(n, _)| &**n).collect();
    out.push_str(&names.join(" "));
    out.push_str(" : ");
    print_expr(&b.ty, BINDER, out);
    out.push(')');
}

/// Level as it must appear after `U` or inside `[...]`.
pub(crate) fn level_atom(l: &LevelExpr) -> String {
    match l {
        LevelExpr::Max(..) => format!("({l})"),
        _ => l.to_string(),
    }
}

fn prec(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Pi(..) | ExprKind::Sigma(..) | ExprKind::Lam(..) => BINDER,
        ExprKind::Arrow(..) => ARROW,
        ExprKind::Eq(..) => EQ,
        ExprKind::Sum(..) => SUM,
        ExprKind::Product(..) => PROD,
        ExprKind::App(..) | ExprKind::Former(..) | ExprKind::Sort(..) => APP,
        _ => ATOM,
    }
}

fn print_expr(e: &Expr, ctx: u8, out: &mut String) {
    let parens = prec(e) < ctx;
    if parens {
        out.push('(');
    }
    match &e.kind {
        ExprKind::Ident(n) => out.push_str(n),
        ExprKind::LevelApp(n, ls) => {
            let ls: Vec<String> = ls.iter().map(level_atom).collect();
            write!(out, "{n} [{}]", ls.join(" ")).unwrap();
        }
        ExprKind::Sort(sort, l) => {
            let kw = match sort {
                Sort::Universe => "U",
                Sort::Empty => "Empty",
                Sort::Unit => "Unit",
            };
            write!(out, "{kw} {}", level_atom(l)).unwrap();
        }
        ExprKind::Nat => out.push('ℕ'),
        ExprKind::Zero => out.push_str("zero"),
        ExprKind::Star => out.push_str("star"),
        ExprKind::Numeral(n) => write!(out, "{n}").unwrap(),
        ExprKind::Former(f, args) => {
            out.push_str(f.keyword());
            for a in args {
                out.push(' ');
                print_expr(a, ATOM, out);
            }
        }
        ExprKind::Pi(bs, body) | ExprKind::Sigma(bs, body) => {
            out.push(if matches!(e.kind, ExprKind::Pi(..)) { 'Π' } else { 'Σ' });
            for b in bs {
                out.push(' ');
                print_binder(b, out);
            }
            out.push_str(", ");
            print_expr(body, BINDER, out);
        }
        ExprKind::Lam(xs, body) => {
            out.push('λ');
            for (x, _) in xs {
                out.push(' ');
                out.push_str(x);
            }
            out.push_str(", ");
            print_expr(body, BINDER, out);
        }
        ExprKind::Arrow(a, b) => {
            print_expr(a, EQ, out);
            out.push_str(" → ");
            print_expr(b, BINDER, out);
        }
        ExprKind::Eq(a, b, t) => {
            print_expr(a, SUM, out);
            out.push_str(" = ");
            print_expr(b, SUM, out);
            out.push_str(" in ");
            print_expr(t, SUM, out);
        }
        ExprKind::Sum(a, b) => {
            print_expr(a, PROD, out);
            out.push_str(" + ");
            print_expr(b, SUM, out);
        }
        ExprKind::Product(a, b) => {
            print_expr(a, APP, out);
            out.push_str(" × ");
            print_expr(b, PROD, out);
        }
        ExprKind::App(f, a) => {
            print_expr(f, APP, out);
            out.push(' ');
            print_expr(a, ATOM, out);
        }
        ExprKind::Pair(a, b) => {
            out.push('(');
            print_expr(a, BINDER, out);
            let mut rest = &**b;
            while let ExprKind::Pair(x, y) = &rest.kind {
                out.push_str(", ");
                print_expr(x, BINDER, out);
                rest = y;
            }
            out.push_str(", ");
            print_expr(rest, BINDER, out);
            out.push(')');
        }
    }
    if parens {
        out.push(')');
    }
}
