//! Universe levels.
//!
//! Levels are built from variables, `0`, successor and binary least upper
//! bound. Definitional equality of levels is decided by normalizing to a
//! max-plus form: a constant together with a finite map from variables to
//! shifts, read as `max(constant, max_v (v + shift_v))`.
//!
//! The normal form is canonical. The constant is always kept at least as
//! large as every shift, which is harmless (`v + n >= n` for every `v`) and
//! makes structural equality coincide with semantic equality.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::Name;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LevelExpr {
    Var(Name),
    Zero,
    Suc(Box<LevelExpr>),
    Max(Box<LevelExpr>, Box<LevelExpr>),
}

impl LevelExpr {
    pub fn var(name: &str) -> Self {
        LevelExpr::Var(name.into())
    }

    pub fn suc(self) -> Self {
        LevelExpr::Suc(Box::new(self))
    }

    pub fn max(self, other: LevelExpr) -> Self {
        LevelExpr::Max(Box::new(self), Box::new(other))
    }

    /// `Suc` applied `n` times to `Zero`.
    pub fn numeral(n: u32) -> Self {
        (0..n).fold(LevelExpr::Zero, |e, _| e.suc())
    }

    pub fn depth(&self) -> usize {
        match self {
            LevelExpr::Var(_) | LevelExpr::Zero => 1,
            LevelExpr::Suc(e) => 1 + e.depth(),
            LevelExpr::Max(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Free level variables, in order of first occurrence.
    pub fn free_vars(&self) -> Vec<Name> {
        fn go(e: &LevelExpr, out: &mut Vec<Name>) {
            match e {
                LevelExpr::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone())
                    }
                }
                LevelExpr::Zero => {}
                LevelExpr::Suc(e) => go(e, out),
                LevelExpr::Max(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Counts the number of `Suc` nodes wrapping `Zero`, if this is a numeral.
    fn as_numeral(&self) -> Option<u32> {
        match self {
            LevelExpr::Zero => Some(0),
            LevelExpr::Suc(e) => e.as_numeral().map(|n| n + 1),
            _ => None,
        }
    }
}

impl fmt::Display for LevelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_numeral() {
            return write!(f, "{n}");
        }
        match self {
            LevelExpr::Var(v) => write!(f, "{v}"),
            LevelExpr::Zero => write!(f, "0"),
            LevelExpr::Suc(e) => match **e {
                LevelExpr::Max(..) => write!(f, "({e})⁺"),
                _ => write!(f, "{e}⁺"),
            },
            LevelExpr::Max(a, b) => match **b {
                LevelExpr::Max(..) => write!(f, "{a} ⊔ ({b})"),
                _ => write!(f, "{a} ⊔ {b}"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LevelError {
    #[error("unbound level variable `{0}`")]
    Unbound(Name),
}

/// Canonical form of a level expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelNF {
    constant: u32,
    atoms: BTreeMap<Name, u32>,
}

impl LevelNF {
    pub fn zero() -> Self {
        LevelNF { constant: 0, atoms: BTreeMap::new() }
    }

    pub fn constant_level(n: u32) -> Self {
        LevelNF { constant: n, atoms: BTreeMap::new() }
    }

    pub fn var(name: Name) -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert(name, 0);
        LevelNF { constant: 0, atoms }
    }

    /// Builds a normal form from raw parts, restoring canonicity.
    pub fn from_parts(constant: u32, atoms: impl IntoIterator<Item = (Name, u32)>) -> Self {
        let mut nf = LevelNF { constant, atoms: BTreeMap::new() };
        for (v, n) in atoms {
            let slot = nf.atoms.entry(v).or_insert(n);
            *slot = (*slot).max(n);
        }
        nf.canonicalize();
        nf
    }

    pub fn constant(&self) -> u32 {
        self.constant
    }

    pub fn atoms(&self) -> &BTreeMap<Name, u32> {
        &self.atoms
    }

    fn canonicalize(&mut self) {
        let top = self.atoms.values().copied().max().unwrap_or(0);
        self.constant = self.constant.max(top);
    }

    pub fn shift(&self, by: u32) -> Self {
        LevelNF { constant: self.constant + by, atoms: self.atoms.iter().map(|(v, n)| (v.clone(), n + by)).collect() }
    }

    pub fn succ(&self) -> Self {
        self.shift(1)
    }

    pub fn join(&self, other: &LevelNF) -> Self {
        let mut out = self.clone();
        out.constant = out.constant.max(other.constant);
        for (v, n) in &other.atoms {
            let slot = out.atoms.entry(v.clone()).or_insert(*n);
            *slot = (*slot).max(*n);
        }
        out
    }

    /// Instantiates the variables of this normal form with other normal forms.
    pub fn instantiate(&self, sigma: &dyn Fn(&Name) -> Option<LevelNF>) -> Result<LevelNF, LevelError> {
        let mut out = LevelNF::constant_level(self.constant);
        for (v, n) in &self.atoms {
            let image = sigma(v).ok_or_else(|| LevelError::Unbound(v.clone()))?;
            out = out.join(&image.shift(*n));
        }
        Ok(out)
    }

    pub fn eval(&self, rho: &HashMap<Name, u32>) -> Option<u32> {
        let mut value = self.constant;
        for (v, n) in &self.atoms {
            value = value.max(rho.get(v)? + n);
        }
        Some(value)
    }

    /// Re-embeds the normal form as a canonical expression.
    ///
    /// The constant is omitted when some atom already dominates it.
    pub fn embed(&self) -> LevelExpr {
        let mut parts: Vec<LevelExpr> =
            self.atoms.iter().map(|(v, n)| (0..*n).fold(LevelExpr::Var(v.clone()), |e, _| e.suc())).collect();
        let top = self.atoms.values().copied().max();
        if top.is_none_or(|t| t < self.constant) {
            parts.push(LevelExpr::numeral(self.constant));
        }
        let mut iter = parts.into_iter();
        let first = iter.next().expect("a level normal form always has a part");
        iter.fold(first, LevelExpr::max)
    }
}

impl fmt::Display for LevelNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.embed())
    }
}

pub fn normalize_level(e: &LevelExpr) -> LevelNF {
    match e {
        LevelExpr::Var(v) => LevelNF::var(v.clone()),
        LevelExpr::Zero => LevelNF::zero(),
        LevelExpr::Suc(e) => normalize_level(e).succ(),
        LevelExpr::Max(a, b) => normalize_level(a).join(&normalize_level(b)),
    }
}

/// Normalizes `e` with its variables interpreted by `env`.
pub fn normalize_level_in(e: &LevelExpr, env: &dyn Fn(&Name) -> Option<LevelNF>) -> Result<LevelNF, LevelError> {
    Ok(match e {
        LevelExpr::Var(v) => env(v).ok_or_else(|| LevelError::Unbound(v.clone()))?,
        LevelExpr::Zero => LevelNF::zero(),
        LevelExpr::Suc(e) => normalize_level_in(e, env)?.succ(),
        LevelExpr::Max(a, b) => normalize_level_in(a, env)?.join(&normalize_level_in(b, env)?),
    })
}

pub fn level_equal(a: &LevelExpr, b: &LevelExpr) -> bool {
    normalize_level(a) == normalize_level(b)
}

pub fn substitute_levels(e: &LevelExpr, sigma: &HashMap<Name, LevelExpr>) -> Result<LevelExpr, LevelError> {
    Ok(match e {
        LevelExpr::Var(v) => sigma.get(v).cloned().ok_or_else(|| LevelError::Unbound(v.clone()))?,
        LevelExpr::Zero => LevelExpr::Zero,
        LevelExpr::Suc(e) => substitute_levels(e, sigma)?.suc(),
        LevelExpr::Max(a, b) => substitute_levels(a, sigma)?.max(substitute_levels(b, sigma)?),
    })
}

/// Numeric value of a level under an assignment of its variables.
///
/// Returns `None` when `rho` misses a free variable.
pub fn eval_level(e: &LevelExpr, rho: &HashMap<Name, u32>) -> Option<u32> {
    Some(match e {
        LevelExpr::Var(v) => *rho.get(v)?,
        LevelExpr::Zero => 0,
        LevelExpr::Suc(e) => eval_level(e, rho)? + 1,
        LevelExpr::Max(a, b) => eval_level(a, rho)?.max(eval_level(b, rho)?),
    })
}
