use std::fmt;

use super::Span;
use crate::Name;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(Name),
    Num(u32),
    KwDef,
    KwPostulate,
    KwLevel,
    KwU,
    KwPi,
    KwSigma,
    KwId,
    KwRefl,
    KwJ,
    KwNat,
    KwZero,
    KwSuc,
    KwNatInd,
    KwInl,
    KwInr,
    KwSumInd,
    KwAbsurd,
    KwStar,
    KwEmpty,
    KwUnit,
    KwUnitInd,
    KwPr1,
    KwPr2,
    KwIn,
    Colon,
    ColonEq,
    Arrow,
    Times,
    Plus,
    MaxSym,
    SucSym,
    Lambda,
    Comma,
    Equals,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

impl Tok {
    fn keyword(word: &str) -> Option<Tok> {
        Some(match word {
            "def" => Tok::KwDef,
            "postulate" => Tok::KwPostulate,
            "level" => Tok::KwLevel,
            "U" => Tok::KwU,
            "Pi" => Tok::KwPi,
            "Sigma" => Tok::KwSigma,
            "Id" => Tok::KwId,
            "refl" => Tok::KwRefl,
            "J" => Tok::KwJ,
            "Nat" => Tok::KwNat,
            "zero" => Tok::KwZero,
            "suc" => Tok::KwSuc,
            "natInd" => Tok::KwNatInd,
            "inl" => Tok::KwInl,
            "inr" => Tok::KwInr,
            "sumInd" => Tok::KwSumInd,
            "absurd" => Tok::KwAbsurd,
            "star" => Tok::KwStar,
            "Empty" => Tok::KwEmpty,
            "Unit" => Tok::KwUnit,
            "unitInd" => Tok::KwUnitInd,
            "pr1" | "pr₁" => Tok::KwPr1,
            "pr2" | "pr₂" => Tok::KwPr2,
            "in" => Tok::KwIn,
            "fun" => Tok::Lambda,
            _ => return None,
        })
    }

    /// Human readable description used in "expected ..." sets.
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(n) => format!("identifier `{n}`"),
            Tok::Num(n) => format!("numeral `{n}`"),
            other => format!("`{other}`"),
        }
    }
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(n) => return write!(f, "{n}"),
            Tok::Num(n) => return write!(f, "{n}"),
            Tok::KwDef => "def",
            Tok::KwPostulate => "postulate",
            Tok::KwLevel => "level",
            Tok::KwU => "U",
            Tok::KwPi => "Π",
            Tok::KwSigma => "Σ",
            Tok::KwId => "Id",
            Tok::KwRefl => "refl",
            Tok::KwJ => "J",
            Tok::KwNat => "ℕ",
            Tok::KwZero => "zero",
            Tok::KwSuc => "suc",
            Tok::KwNatInd => "natInd",
            Tok::KwInl => "inl",
            Tok::KwInr => "inr",
            Tok::KwSumInd => "sumInd",
            Tok::KwAbsurd => "absurd",
            Tok::KwStar => "star",
            Tok::KwEmpty => "Empty",
            Tok::KwUnit => "Unit",
            Tok::KwUnitInd => "unitInd",
            Tok::KwPr1 => "pr1",
            Tok::KwPr2 => "pr2",
            Tok::KwIn => "in",
            Tok::Colon => ":",
            Tok::ColonEq => ":=",
            Tok::Arrow => "→",
            Tok::Times => "×",
            Tok::Plus => "+",
            Tok::MaxSym => "⊔",
            Tok::SucSym => "⁺",
            Tok::Lambda => "λ",
            Tok::Comma => ",",
            Tok::Equals => "=",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("illegal character {ch:?}")]
pub struct LexError {
    pub ch: char,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    (c.is_alphabetic() || c == '_') && !matches!(c, 'λ' | 'Π' | 'Σ' | 'ℕ')
}

fn is_ident_continue(c: char) -> bool {
    is_ident_start(c) || c.is_ascii_digit() || c == '\'' || ('₀'..='₉').contains(&c)
}

/// Splits `source` into tokens, dropping whitespace and `--` line comments.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    let mut chars = source.char_indices().peekable();
    let span = |start: usize, end: usize| Span::new(start, end);

    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let rest = &source[start..];
        if rest.starts_with("--") {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        if is_ident_start(c) {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !is_ident_continue(c) {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let word = &source[start..end];
            let tok = Tok::keyword(word).unwrap_or_else(|| Tok::Ident(word.into()));
            out.push(Token { tok, span: span(start, end) });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let n = source[start..end].parse::<u32>().map_err(|_| LexError { ch: c, span: span(start, end) })?;
            out.push(Token { tok: Tok::Num(n), span: span(start, end) });
            continue;
        }

        const SYMBOLS: &[(&str, Tok)] = &[
            (":=", Tok::ColonEq),
            (":", Tok::Colon),
            ("->", Tok::Arrow),
            ("→", Tok::Arrow),
            ("×", Tok::Times),
            ("*", Tok::Times),
            ("+", Tok::Plus),
            ("⊔", Tok::MaxSym),
            ("\\/", Tok::MaxSym),
            ("⁺", Tok::SucSym),
            ("^+", Tok::SucSym),
            ("λ", Tok::Lambda),
            ("\\", Tok::Lambda),
            ("Π", Tok::KwPi),
            ("Σ", Tok::KwSigma),
            ("ℕ", Tok::KwNat),
            ("𝟘", Tok::KwEmpty),
            ("𝟙", Tok::KwUnit),
            (",", Tok::Comma),
            ("=", Tok::Equals),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("[", Tok::LBracket),
            ("]", Tok::RBracket),
        ];
        let Some((text, tok)) = SYMBOLS.iter().find(|(text, _)| rest.starts_with(text)) else {
            return Err(LexError { ch: c, span: span(start, start + c.len_utf8()) });
        };
        let end = start + text.len();
        while chars.peek().is_some_and(|&(i, _)| i < end) {
            chars.next();
        }
        out.push(Token { tok: tok.clone(), span: span(start, end) });
    }
    Ok(out)
}
