use super::Span;
use crate::level::LevelExpr;
use crate::Name;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Def,
    Postulate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub kind: DeclKind,
    pub name: Name,
    pub name_span: Span,
    pub levels: Vec<(Name, Span)>,
    pub params: Vec<Binder>,
    pub ty: Expr,
    pub body: Option<Expr>,
    pub span: Span,
}

/// `(x y : A)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binder {
    pub names: Vec<(Name, Span)>,
    pub ty: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Keyword-headed forms taking a fixed number of argument atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Former {
    Id,
    Refl,
    J,
    NatInd,
    SumInd,
    Absurd,
    UnitInd,
    Suc,
    Inl,
    Inr,
    Pr1,
    Pr2,
}

impl Former {
    pub fn arity(self) -> usize {
        match self {
            Former::Id => 3,
            Former::Refl => 2,
            Former::J => 6,
            Former::NatInd | Former::SumInd => 4,
            Former::Absurd => 2,
            Former::UnitInd => 3,
            Former::Suc | Former::Inl | Former::Inr | Former::Pr1 | Former::Pr2 => 1,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Former::Id => "Id",
            Former::Refl => "refl",
            Former::J => "J",
            Former::NatInd => "natInd",
            Former::SumInd => "sumInd",
            Former::Absurd => "absurd",
            Former::UnitInd => "unitInd",
            Former::Suc => "suc",
            Former::Inl => "inl",
            Former::Inr => "inr",
            Former::Pr1 => "pr1",
            Former::Pr2 => "pr2",
        }
    }
}

/// Universe-indexed type constants, written with a trailing level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Universe,
    Empty,
    Unit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Ident(Name),
    /// `name [l1 l2 ...]`
    LevelApp(Name, Vec<LevelExpr>),
    Sort(Sort, LevelExpr),
    Nat,
    Zero,
    Star,
    Numeral(u32),
    Former(Former, Vec<Expr>),
    Pi(Vec<Binder>, Box<Expr>),
    Sigma(Vec<Binder>, Box<Expr>),
    Lam(Vec<(Name, Span)>, Box<Expr>),
    Arrow(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    /// `a = b in A`
    Eq(Box<Expr>, Box<Expr>, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    /// Structural equality that ignores source positions.
    pub fn same_shape(&self, other: &Expr) -> bool {
        use ExprKind::*;
        let binders_eq = |a: &[Binder], b: &[Binder]| {
            a.len() == b.len()
                && a.iter().zip(b).all(|(x, y)| {
                    x.names.iter().map(|n| &n.0).eq(y.names.iter().map(|n| &n.0)) && x.ty.same_shape(&y.ty)
                })
        };
        match (&self.kind, &other.kind) {
            (Ident(a), Ident(b)) => a == b,
            (LevelApp(a, la), LevelApp(b, lb)) => a == b && la == lb,
            (Sort(s, a), Sort(t, b)) => s == t && a == b,
            (Nat, Nat) | (Zero, Zero) | (Star, Star) => true,
            (Numeral(a), Numeral(b)) => a == b,
            (Former(f, xs), Former(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.same_shape(y))
            }
            (Pi(bs, t), Pi(cs, u)) | (Sigma(bs, t), Sigma(cs, u)) => binders_eq(bs, cs) && t.same_shape(u),
            (Lam(xs, t), Lam(ys, u)) => xs.iter().map(|x| &x.0).eq(ys.iter().map(|y| &y.0)) && t.same_shape(u),
            (Arrow(a, b), Arrow(c, d))
            | (Product(a, b), Product(c, d))
            | (Sum(a, b), Sum(c, d))
            | (App(a, b), App(c, d))
            | (Pair(a, b), Pair(c, d)) => a.same_shape(c) && b.same_shape(d),
            (Eq(a, b, t), Eq(c, d, u)) => a.same_shape(c) && b.same_shape(d) && t.same_shape(u),
            _ => false,
        }
    }
}
