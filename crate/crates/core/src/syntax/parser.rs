//! Recursive-descent parser for `.uv` modules.
//!
//! Precedence, loosest first: binder forms (`λ`, `Π`, `Σ`), `→` (right
//! nested), `a = b in A`, `+` (right nested), `×` (right nested),
//! application (left nested), atoms.

use super::ast::*;
use super::lexer::{tokenize, LexError, Tok, Token};
use super::Span;
use crate::level::LevelExpr;
use crate::Name;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("expected {}, found {}", .expected.join(" or "), .found.as_ref().map_or("end of input".to_string(), |t| t.describe()))]
pub struct ParseError {
    pub expected: Vec<String>,
    pub found: Option<Tok>,
    pub span: Span,
}

/// Either stage of reading a source file.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl SyntaxError {
    pub fn span(&self) -> Span {
        match self {
            SyntaxError::Lex(e) => e.span,
            SyntaxError::Parse(e) => e.span,
        }
    }
}

pub fn parse_source(source: &str) -> Result<Module, SyntaxError> {
    let tokens = tokenize(source)?;
    Ok(parse_module(&tokens, source.len())?)
}

pub fn parse_module(tokens: &[Token], source_len: usize) -> Result<Module, ParseError> {
    let mut p = Parser { tokens, pos: 0, eof: Span::new(source_len, source_len) };
    let mut decls = Vec::new();
    while !p.at_end() {
        decls.push(p.decl()?);
    }
    Ok(Module { decls })
}

/// Parses a single term, used by tests and the book.
pub fn parse_term(source: &str) -> Result<Expr, SyntaxError> {
    let tokens = tokenize(source)?;
    let mut p = Parser { tokens: &tokens, pos: 0, eof: Span::new(source.len(), source.len()) };
    let e = p.term()?;
    if !p.at_end() {
        return Err(p.unexpected(&["end of input"]).into());
    }
    Ok(e)
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    eof: Span,
}

impl<'t> Parser<'t> {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&'t Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_span(&self) -> Span {
        self.tokens.get(self.pos).map_or(self.eof, |t| t.span)
    }

    fn prev_span(&self) -> Span {
        self.tokens[self.pos - 1].span
    }

    fn bump(&mut self) -> &'t Token {
        let t = &self.tokens[self.pos];
        self.pos += 1;
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError {
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().cloned(),
            span: self.peek_span(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Span, ParseError> {
        if self.peek() == Some(&tok) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&[&format!("`{tok}`")]))
        }
    }

    fn ident(&mut self) -> Result<(Name, Span), ParseError> {
        match self.peek() {
            Some(Tok::Ident(n)) => {
                let span = self.bump().span;
                Ok((n.clone(), span))
            }
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    fn decl(&mut self) -> Result<Decl, ParseError> {
        let start = self.peek_span();
        let kind = match self.peek() {
            Some(Tok::KwDef) => DeclKind::Def,
            Some(Tok::KwPostulate) => DeclKind::Postulate,
            _ => return Err(self.unexpected(&["`def`", "`postulate`"])),
        };
        self.bump();
        let (name, name_span) = self.ident()?;
        let mut levels = Vec::new();
        if self.eat(&Tok::LBracket) {
            levels.push(self.ident()?);
            while !self.eat(&Tok::RBracket) {
                match self.peek() {
                    Some(Tok::Ident(_)) => levels.push(self.ident()?),
                    _ => return Err(self.unexpected(&["level variable", "`]`"])),
                }
            }
        }
        let mut params = Vec::new();
        while self.peek() == Some(&Tok::LParen) {
            params.push(self.binder()?);
        }
        if self.peek() != Some(&Tok::Colon) {
            let mut expected = vec!["`:`"];
            if params.is_empty() && levels.is_empty() {
                expected.push("`[`");
            }
            expected.push("`(`");
            return Err(self.unexpected(&expected));
        }
        self.bump();
        let ty = self.term()?;
        let body = match kind {
            DeclKind::Def => {
                if self.peek() != Some(&Tok::ColonEq) {
                    return Err(self.unexpected(&["`:=`"]));
                }
                self.bump();
                Some(self.term()?)
            }
            DeclKind::Postulate => None,
        };
        let span = start.to(self.prev_span());
        Ok(Decl { kind, name, name_span, levels, params, ty, body, span })
    }

    /// `( x y : A )`
    fn binder(&mut self) -> Result<Binder, ParseError> {
        self.expect(Tok::LParen)?;
        let mut names = vec![self.ident()?];
        while let Some(Tok::Ident(_)) = self.peek() {
            names.push(self.ident()?);
        }
        if self.peek() != Some(&Tok::Colon) {
            return Err(self.unexpected(&["identifier", "`:`"]));
        }
        self.bump();
        let ty = self.term()?;
        self.expect(Tok::RParen)?;
        Ok(Binder { names, ty })
    }

    fn binders(&mut self) -> Result<Vec<Binder>, ParseError> {
        let mut bs = vec![self.binder()?];
        while self.peek() == Some(&Tok::LParen) {
            bs.push(self.binder()?);
        }
        Ok(bs)
    }

    pub fn term(&mut self) -> Result<Expr, ParseError> {
        let start = self.peek_span();
        match self.peek() {
            Some(Tok::Lambda) => {
                self.bump();
                let mut params = vec![self.ident()?];
                while let Some(Tok::Ident(_)) = self.peek() {
                    params.push(self.ident()?);
                }
                if self.peek() != Some(&Tok::Comma) {
                    return Err(self.unexpected(&["identifier", "`,`"]));
                }
                self.bump();
                let body = self.term()?;
                let span = start.to(body.span);
                Ok(Expr::new(ExprKind::Lam(params, Box::new(body)), span))
            }
            Some(Tok::KwPi) | Some(Tok::KwSigma) => {
                let is_pi = self.peek() == Some(&Tok::KwPi);
                self.bump();
                let bs = self.binders()?;
                self.expect(Tok::Comma)?;
                let body = Box::new(self.term()?);
                let span = start.to(body.span);
                let kind = if is_pi { ExprKind::Pi(bs, body) } else { ExprKind::Sigma(bs, body) };
                Ok(Expr::new(kind, span))
            }
            _ => self.arrow(),
        }
    }

    fn arrow(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.equation()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.term()?;
            let span = lhs.span.to(rhs.span);
            return Ok(Expr::new(ExprKind::Arrow(Box::new(lhs), Box::new(rhs)), span));
        }
        Ok(lhs)
    }

    fn equation(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.sum()?;
        if self.eat(&Tok::Equals) {
            let rhs = self.sum()?;
            if self.peek() != Some(&Tok::KwIn) {
                return Err(self.unexpected(&["`in`"]));
            }
            self.bump();
            let ty = self.sum()?;
            let span = lhs.span.to(ty.span);
            return Ok(Expr::new(ExprKind::Eq(Box::new(lhs), Box::new(rhs), Box::new(ty)), span));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.product()?;
        if self.eat(&Tok::Plus) {
            let rhs = self.sum()?;
            let span = lhs.span.to(rhs.span);
            return Ok(Expr::new(ExprKind::Sum(Box::new(lhs), Box::new(rhs)), span));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.application()?;
        if self.eat(&Tok::Times) {
            let rhs = self.product()?;
            let span = lhs.span.to(rhs.span);
            return Ok(Expr::new(ExprKind::Product(Box::new(lhs), Box::new(rhs)), span));
        }
        Ok(lhs)
    }

    fn application(&mut self) -> Result<Expr, ParseError> {
        let mut head = self.head()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            let span = head.span.to(arg.span);
            head = Expr::new(ExprKind::App(Box::new(head), Box::new(arg)), span);
        }
        Ok(head)
    }

    fn former(tok: &Tok) -> Option<Former> {
        Some(match tok {
            Tok::KwId => Former::Id,
            Tok::KwRefl => Former::Refl,
            Tok::KwJ => Former::J,
            Tok::KwNatInd => Former::NatInd,
            Tok::KwSumInd => Former::SumInd,
            Tok::KwAbsurd => Former::Absurd,
            Tok::KwUnitInd => Former::UnitInd,
            Tok::KwSuc => Former::Suc,
            Tok::KwInl => Former::Inl,
            Tok::KwInr => Former::Inr,
            Tok::KwPr1 => Former::Pr1,
            Tok::KwPr2 => Former::Pr2,
            _ => return None,
        })
    }

    fn head(&mut self) -> Result<Expr, ParseError> {
        let start = self.peek_span();
        let sort = match self.peek() {
            Some(Tok::KwU) => Some(Sort::Universe),
            Some(Tok::KwEmpty) => Some(Sort::Empty),
            Some(Tok::KwUnit) => Some(Sort::Unit),
            _ => None,
        };
        if let Some(sort) = sort {
            self.bump();
            let level = self.level_expr()?;
            return Ok(Expr::new(ExprKind::Sort(sort, level), start.to(self.prev_span())));
        }
        if let Some(former) = self.peek().and_then(Self::former) {
            self.bump();
            let mut args = Vec::with_capacity(former.arity());
            for _ in 0..former.arity() {
                if !self.starts_atom() {
                    return Err(self.unexpected(&[&format!("argument to `{}`", former.keyword())]));
                }
                args.push(self.atom()?);
            }
            let span = start.to(self.prev_span());
            return Ok(Expr::new(ExprKind::Former(former, args), span));
        }
        if !self.starts_atom() {
            return Err(self.unexpected(&["term"]));
        }
        self.atom()
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_) | Tok::Num(_) | Tok::KwZero | Tok::KwStar | Tok::KwNat | Tok::LParen))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let start = self.peek_span();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Ident(name)) => {
                self.bump();
                if self.eat(&Tok::LBracket) {
                    let mut levels = vec![self.level_expr()?];
                    while !self.eat(&Tok::RBracket) {
                        if !self.starts_level_atom() {
                            return Err(self.unexpected(&["level", "`]`"]));
                        }
                        levels.push(self.level_expr()?);
                    }
                    return Ok(Expr::new(ExprKind::LevelApp(name, levels), start.to(self.prev_span())));
                }
                Ok(Expr::new(ExprKind::Ident(name), start))
            }
            Some(Tok::Num(n)) => {
                self.bump();
                Ok(Expr::new(ExprKind::Numeral(n), start))
            }
            Some(Tok::KwZero) => {
                self.bump();
                Ok(Expr::new(ExprKind::Zero, start))
            }
            Some(Tok::KwStar) => {
                self.bump();
                Ok(Expr::new(ExprKind::Star, start))
            }
            Some(Tok::KwNat) => {
                self.bump();
                Ok(Expr::new(ExprKind::Nat, start))
            }
            Some(Tok::LParen) => {
                self.bump();
                let first = self.term()?;
                let mut items = vec![first];
                while self.eat(&Tok::Comma) {
                    items.push(self.term()?);
                }
                if self.peek() != Some(&Tok::RParen) {
                    let expected: &[&str] = &["`,`", "`)`"];
                    return Err(self.unexpected(expected));
                }
                self.bump();
                let span = start.to(self.prev_span());
                let last = items.pop().expect("at least one item");
                let nested = items.into_iter().rev().fold(last, |acc, item| {
                    let s = item.span.to(acc.span);
                    Expr::new(ExprKind::Pair(Box::new(item), Box::new(acc)), s)
                });
                if let ExprKind::Pair(..) = nested.kind {
                    Ok(Expr { span, ..nested })
                } else {
                    Ok(nested)
                }
            }
            _ => Err(self.unexpected(&["term"])),
        }
    }

    fn starts_level_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_) | Tok::Num(_) | Tok::LParen))
    }

    fn level_expr(&mut self) -> Result<LevelExpr, ParseError> {
        let mut e = self.level_postfix()?;
        while self.eat(&Tok::MaxSym) {
            let rhs = self.level_postfix()?;
            e = e.max(rhs);
        }
        Ok(e)
    }

    fn level_postfix(&mut self) -> Result<LevelExpr, ParseError> {
        let mut e = self.level_atom()?;
        while self.eat(&Tok::SucSym) {
            e = e.suc();
        }
        Ok(e)
    }

    fn level_atom(&mut self) -> Result<LevelExpr, ParseError> {
        match self.peek() {
            Some(Tok::Ident(n)) => {
                let n = n.clone();
                self.bump();
                Ok(LevelExpr::Var(n))
            }
            Some(Tok::Num(n)) => {
                let n = *n;
                self.bump();
                Ok(LevelExpr::numeral(n))
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.level_expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.unexpected(&["level"])),
        }
    }
}
