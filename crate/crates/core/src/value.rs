//! Semantic values for normalization by evaluation.
//!
//! Variables are represented by de Bruijn *levels* inside values, so values
//! never need shifting. Closures pair a term with the environment it was
//! built in; nothing in the kernel substitutes into raw terms.

use std::fmt;
use std::rc::Rc;

use crate::env::GlobalEnv;
use crate::level::LevelNF;
use crate::term::RcTerm;
use crate::Name;

pub type V = Rc<Value>;

#[derive(Clone, Debug)]
pub enum Value {
    Universe(LevelNF),
    Pi(V, Closure),
    Lam(Closure),
    Sigma(V, Closure),
    Pair(V, V),
    Id(V, V, V),
    Refl(V, V),
    Sum(V, V),
    Inl(V),
    Inr(V),
    Empty(LevelNF),
    Unit(LevelNF),
    Star,
    Nat,
    Zero,
    Suc(V),
    Neutral(Neutral),
}

/// A variable or postulate with a stack of stuck eliminations.
#[derive(Clone, Debug)]
pub struct Neutral {
    pub head: Head,
    pub spine: Vec<Frame>,
}

#[derive(Clone, Debug)]
pub enum Head {
    /// A bound variable, identified by its de Bruijn level.
    Var {
        level: usize,
        ty: V,
    },
    Postulate {
        name: Name,
        levels: Vec<LevelNF>,
        ty: V,
    },
}

impl Head {
    pub fn ty(&self) -> &V {
        match self {
            Head::Var { ty, .. } | Head::Postulate { ty, .. } => ty,
        }
    }
}

/// One elimination applied to a neutral. The types of the remaining
/// arguments are recovered from the type of the neutral it is applied to.
#[derive(Clone, Debug)]
pub enum Frame {
    App(V),
    Pr1,
    Pr2,
    J { motive: V, base: V },
    NatInd { motive: V, zero: V, succ: V },
    SumInd { motive: V, on_left: V, on_right: V },
    Absurd { motive: V },
    UnitInd { motive: V, base: V },
}

pub type NativeFn = dyn Fn(&GlobalEnv, V) -> V;

#[derive(Clone)]
pub enum Closure {
    Term {
        env: Env,
        body: RcTerm,
    },
    /// Built by the kernel itself, for eliminator argument types.
    Native(Rc<NativeFn>),
}

impl fmt::Debug for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Closure::Term { body, .. } => write!(f, "Closure({body:?})"),
            Closure::Native(_) => f.write_str("Closure(<native>)"),
        }
    }
}

impl Closure {
    pub fn native(f: impl Fn(&GlobalEnv, V) -> V + 'static) -> Self {
        Closure::Native(Rc::new(f))
    }

    pub fn apply(&self, g: &GlobalEnv, arg: V) -> V {
        match self {
            Closure::Term { env, body } => crate::nbe::eval(g, &env.extend(arg), body),
            Closure::Native(f) => f(g, arg),
        }
    }
}

/// Evaluation environment: level variable bindings plus a persistent list
/// of values, innermost first.
#[derive(Clone, Debug, Default)]
pub struct Env {
    pub levels: Rc<Vec<(Name, LevelNF)>>,
    vals: Option<Rc<Cons>>,
    len: usize,
}

#[derive(Debug)]
struct Cons {
    head: V,
    tail: Option<Rc<Cons>>,
}

impl Env {
    pub fn with_levels(levels: Vec<(Name, LevelNF)>) -> Self {
        Env { levels: Rc::new(levels), vals: None, len: 0 }
    }

    /// Level parameters bound to themselves, for checking a declaration.
    pub fn rigid_levels(names: &[Name]) -> Self {
        Self::with_levels(names.iter().map(|n| (n.clone(), LevelNF::var(n.clone()))).collect())
    }

    pub fn extend(&self, v: V) -> Env {
        Env {
            levels: self.levels.clone(),
            vals: Some(Rc::new(Cons { head: v, tail: self.vals.clone() })),
            len: self.len + 1,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn lookup(&self, index: usize) -> &V {
        let mut node = self.vals.as_deref();
        for _ in 0..index {
            node = node.and_then(|c| c.tail.as_deref());
        }
        &node.unwrap_or_else(|| panic!("de Bruijn index {index} out of range")).head
    }

    pub fn level(&self, name: &Name) -> Option<LevelNF> {
        self.levels.iter().find(|(n, _)| n == name).map(|(_, l)| l.clone())
    }
}

impl Value {
    pub fn rc(self) -> V {
        Rc::new(self)
    }

    pub fn var(level: usize, ty: V) -> V {
        Value::Neutral(Neutral { head: Head::Var { level, ty }, spine: Vec::new() }).rc()
    }

    pub fn is_neutral(&self) -> bool {
        matches!(self, Value::Neutral(_))
    }
}
