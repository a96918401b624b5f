//! Evaluation, type-directed readback and conversion.
//!
//! `eval` implements β for functions, projections on pairs, and ι for
//! `J`, `natInd`, `sumInd` and `unitInd`; definitions unfold on sight and
//! postulates stay neutral. `readback` η-expands at Π and Σ types, so two
//! values are definitionally equal exactly when their readbacks agree.

use crate::env::GlobalEnv;
use crate::level::{normalize_level_in, LevelExpr, LevelNF};
use crate::term::{RcTerm, Term};
use crate::value::{Closure, Env, Frame, Head, Neutral, Value, V};

pub fn eval_level(env: &Env, l: &LevelExpr) -> LevelNF {
    normalize_level_in(l, &|n| env.level(n)).unwrap_or_else(|e| panic!("kernel invariant: {e}"))
}

fn closure(env: &Env, body: &RcTerm) -> Closure {
    Closure::Term { env: env.clone(), body: body.clone() }
}

pub fn eval(g: &GlobalEnv, env: &Env, t: &Term) -> V {
    let ev = |t: &RcTerm| eval(g, env, t);
    match t {
        Term::Loc(_, t) => eval(g, env, t),
        Term::Var(i) => env.lookup(*i).clone(),
        Term::Global(name, ls) => {
            let entry = g.get(name).unwrap_or_else(|| panic!("kernel invariant: unknown global `{name}`"));
            let levels = entry.levels.iter().cloned().zip(ls.iter().map(|l| eval_level(env, l))).collect::<Vec<_>>();
            let callee = Env::with_levels(levels.clone());
            match &entry.body {
                Some(body) => eval(g, &callee, body),
                None => {
                    let ty = eval(g, &callee, &entry.ty);
                    Value::Neutral(Neutral {
                        head: Head::Postulate {
                            name: name.clone(),
                            levels: levels.into_iter().map(|p| p.1).collect(),
                            ty,
                        },
                        spine: Vec::new(),
                    })
                    .rc()
                }
            }
        }
        Term::Universe(l) => Value::Universe(eval_level(env, l)).rc(),
        Term::Pi(a, b) => Value::Pi(ev(a), closure(env, b)).rc(),
        Term::Lam(b) => Value::Lam(closure(env, b)).rc(),
        Term::App(f, a) => apply(g, &ev(f), ev(a)),
        Term::Sigma(a, b) => Value::Sigma(ev(a), closure(env, b)).rc(),
        Term::Pair(a, b) => Value::Pair(ev(a), ev(b)).rc(),
        Term::Pr1(p) => pr1(&ev(p)),
        Term::Pr2(p) => pr2(&ev(p)),
        Term::Id(a, x, y) => Value::Id(ev(a), ev(x), ev(y)).rc(),
        Term::Refl(a, x) => Value::Refl(ev(a), ev(x)).rc(),
        Term::J(_, _, motive, base, _, p) => j_elim(ev(motive), ev(base), ev(p)),
        Term::Sum(a, b) => Value::Sum(ev(a), ev(b)).rc(),
        Term::Inl(x) => Value::Inl(ev(x)).rc(),
        Term::Inr(x) => Value::Inr(ev(x)).rc(),
        Term::SumInd(motive, l, r, s) => sum_ind(g, ev(motive), ev(l), ev(r), ev(s)),
        Term::Empty(l) => Value::Empty(eval_level(env, l)).rc(),
        Term::Absurd(motive, t) => absurd(ev(motive), ev(t)),
        Term::Unit(l) => Value::Unit(eval_level(env, l)).rc(),
        Term::Star => Value::Star.rc(),
        Term::UnitInd(motive, base, t) => unit_ind(ev(motive), ev(base), ev(t)),
        Term::Nat => Value::Nat.rc(),
        Term::Zero => Value::Zero.rc(),
        Term::Suc(n) => Value::Suc(ev(n)).rc(),
        Term::NatInd(motive, z, s, n) => nat_ind(g, ev(motive), ev(z), ev(s), ev(n)),
    }
}

fn push(n: &Neutral, frame: Frame) -> V {
    let mut spine = n.spine.clone();
    spine.push(frame);
    Value::Neutral(Neutral { head: n.head.clone(), spine }).rc()
}

fn stuck(what: &str, v: &Value) -> ! {
    panic!("kernel invariant: {what} applied to non-eliminable value {v:?}")
}

pub fn apply(g: &GlobalEnv, f: &V, arg: V) -> V {
    match &**f {
        Value::Lam(c) => c.apply(g, arg),
        Value::Neutral(n) => push(n, Frame::App(arg)),
        v => stuck("application", v),
    }
}

pub fn apply2(g: &GlobalEnv, f: &V, a: V, b: V) -> V {
    let fa = apply(g, f, a);
    apply(g, &fa, b)
}

pub fn pr1(p: &V) -> V {
    match &**p {
        Value::Pair(a, _) => a.clone(),
        Value::Neutral(n) => push(n, Frame::Pr1),
        v => stuck("pr1", v),
    }
}

pub fn pr2(p: &V) -> V {
    match &**p {
        Value::Pair(_, b) => b.clone(),
        Value::Neutral(n) => push(n, Frame::Pr2),
        v => stuck("pr2", v),
    }
}

pub fn j_elim(motive: V, base: V, p: V) -> V {
    match &*p {
        Value::Refl(..) => base,
        Value::Neutral(n) => push(n, Frame::J { motive, base }),
        v => stuck("J", v),
    }
}

pub fn sum_ind(g: &GlobalEnv, motive: V, on_left: V, on_right: V, s: V) -> V {
    match &*s {
        Value::Inl(x) => apply(g, &on_left, x.clone()),
        Value::Inr(y) => apply(g, &on_right, y.clone()),
        Value::Neutral(n) => push(n, Frame::SumInd { motive, on_left, on_right }),
        v => stuck("sumInd", v),
    }
}

pub fn absurd(motive: V, t: V) -> V {
    match &*t {
        Value::Neutral(n) => push(n, Frame::Absurd { motive }),
        v => stuck("absurd", v),
    }
}

pub fn unit_ind(motive: V, base: V, t: V) -> V {
    match &*t {
        Value::Star => base,
        Value::Neutral(n) => push(n, Frame::UnitInd { motive, base }),
        v => stuck("unitInd", v),
    }
}

pub fn nat_ind(g: &GlobalEnv, motive: V, zero: V, succ: V, n: V) -> V {
    // Peel off successors iteratively so large numerals do not recurse.
    let mut preds = Vec::new();
    let mut cur = n;
    while let Value::Suc(m) = &*cur {
        let m = m.clone();
        preds.push(m.clone());
        cur = m;
    }
    let mut acc = match &*cur {
        Value::Zero => zero,
        Value::Neutral(neu) => push(neu, Frame::NatInd { motive, zero, succ: succ.clone() }),
        v => stuck("natInd", v),
    };
    for m in preds.into_iter().rev() {
        acc = apply2(g, &succ, m, acc);
    }
    acc
}

/// Fresh variable at context depth `depth`.
pub fn fresh(depth: usize, ty: V) -> V {
    Value::var(depth, ty)
}

fn level_term(l: &LevelNF) -> LevelExpr {
    l.embed()
}

/// Reads back a value of type `ty` as a β-normal η-long term.
pub fn readback(g: &GlobalEnv, depth: usize, ty: &V, v: &V) -> Term {
    match &**ty {
        Value::Pi(a, b) => {
            let x = fresh(depth, a.clone());
            let body_ty = b.apply(g, x.clone());
            let body = apply(g, v, x);
            Term::Lam(readback(g, depth + 1, &body_ty, &body).rc())
        }
        Value::Sigma(a, b) => {
            let fst = pr1(v);
            let snd_ty = b.apply(g, fst.clone());
            Term::Pair(readback(g, depth, a, &fst).rc(), readback(g, depth, &snd_ty, &pr2(v)).rc())
        }
        Value::Universe(_) => readback_type(g, depth, v),
        _ => match (&**ty, &**v) {
            (_, Value::Neutral(n)) => readback_neutral(g, depth, n).0,
            (Value::Id(..), Value::Refl(a, x)) => {
                Term::Refl(readback_type(g, depth, a).rc(), readback(g, depth, a, x).rc())
            }
            (Value::Sum(a, _), Value::Inl(x)) => Term::Inl(readback(g, depth, a, x).rc()),
            (Value::Sum(_, b), Value::Inr(y)) => Term::Inr(readback(g, depth, b, y).rc()),
            (Value::Unit(_), Value::Star) => Term::Star,
            (Value::Nat, Value::Zero) => Term::Zero,
            (Value::Nat, Value::Suc(n)) => Term::Suc(readback(g, depth, ty, n).rc()),
            (t, v) => panic!("kernel invariant: cannot read back {v:?} at type {t:?}"),
        },
    }
}

/// Reads back a value that is itself a type.
pub fn readback_type(g: &GlobalEnv, depth: usize, v: &V) -> Term {
    match &**v {
        Value::Universe(l) => Term::Universe(level_term(l)),
        Value::Pi(a, b) | Value::Sigma(a, b) => {
            let x = fresh(depth, a.clone());
            let dom = readback_type(g, depth, a).rc();
            let cod = readback_type(g, depth + 1, &b.apply(g, x)).rc();
            if matches!(&**v, Value::Pi(..)) {
                Term::Pi(dom, cod)
            } else {
                Term::Sigma(dom, cod)
            }
        }
        Value::Id(a, x, y) => {
            Term::Id(readback_type(g, depth, a).rc(), readback(g, depth, a, x).rc(), readback(g, depth, a, y).rc())
        }
        Value::Sum(a, b) => Term::Sum(readback_type(g, depth, a).rc(), readback_type(g, depth, b).rc()),
        Value::Empty(l) => Term::Empty(level_term(l)),
        Value::Unit(l) => Term::Unit(level_term(l)),
        Value::Nat => Term::Nat,
        Value::Neutral(n) => readback_neutral(g, depth, n).0,
        other => panic!("kernel invariant: {other:?} is not a type"),
    }
}

/// Domain of one motive argument, given the earlier arguments.
type Telescope<'a> = dyn Fn(&[V]) -> V + 'a;

/// Reads back the η-long motive `λ x1 … xn, C x1 … xn` of an eliminator,
/// given the domains of its telescope.
fn readback_family(g: &GlobalEnv, depth: usize, motive: &V, doms: &[&Telescope<'_>]) -> Term {
    let mut args = Vec::new();
    let mut applied = motive.clone();
    for (k, dom) in doms.iter().enumerate() {
        let x = fresh(depth + k, dom(&args));
        applied = apply(g, &applied, x.clone());
        args.push(x);
    }
    let mut t = readback_type(g, depth + doms.len(), &applied);
    for _ in doms {
        t = Term::Lam(t.rc());
    }
    t
}

/// Reads back a neutral, returning the term and its type.
pub fn readback_neutral(g: &GlobalEnv, depth: usize, n: &Neutral) -> (Term, V) {
    let (mut term, mut ty) = match &n.head {
        Head::Var { level, ty } => {
            assert!(*level < depth, "kernel invariant: variable level {level} escapes depth {depth}");
            (Term::Var(depth - 1 - level), ty.clone())
        }
        Head::Postulate { name, levels, ty } => {
            (Term::Global(name.clone(), levels.iter().map(level_term).collect()), ty.clone())
        }
    };
    let mut prefix = Neutral { head: n.head.clone(), spine: Vec::with_capacity(n.spine.len()) };
    for frame in &n.spine {
        let scrut = || Value::Neutral(prefix.clone()).rc();
        let (next_term, next_ty) = match (frame, &*ty) {
            (Frame::App(arg), Value::Pi(a, b)) => {
                (Term::App(term.rc(), readback(g, depth, a, arg).rc()), b.apply(g, arg.clone()))
            }
            (Frame::Pr1, Value::Sigma(a, _)) => (Term::Pr1(term.rc()), a.clone()),
            (Frame::Pr2, Value::Sigma(_, b)) => (Term::Pr2(term.rc()), b.apply(g, pr1(&scrut()))),
            (Frame::J { motive, base }, Value::Id(a, x, y)) => {
                let (a, x) = (a.clone(), x.clone());
                let motive_t = readback_family(
                    g,
                    depth,
                    motive,
                    &[&|_| a.clone(), &|args: &[V]| Value::Id(a.clone(), x.clone(), args[0].clone()).rc()],
                );
                let base_ty = apply2(g, motive, x.clone(), Value::Refl(a.clone(), x.clone()).rc());
                let t = Term::J(
                    readback_type(g, depth, &a).rc(),
                    readback(g, depth, &a, &x).rc(),
                    motive_t.rc(),
                    readback(g, depth, &base_ty, base).rc(),
                    readback(g, depth, &a, y).rc(),
                    term.rc(),
                );
                (t, apply2(g, motive, y.clone(), scrut()))
            }
            (Frame::NatInd { motive, zero, succ }, Value::Nat) => {
                let motive_t = readback_family(g, depth, motive, &[&|_| Value::Nat.rc()]);
                let zero_ty = apply(g, motive, Value::Zero.rc());
                let k = fresh(depth, Value::Nat.rc());
                let ih = fresh(depth + 1, apply(g, motive, k.clone()));
                let step_ty = apply(g, motive, Value::Suc(k.clone()).rc());
                let step = apply2(g, succ, k, ih);
                let succ_t = Term::Lam(Term::Lam(readback(g, depth + 2, &step_ty, &step).rc()).rc());
                let t = Term::NatInd(motive_t.rc(), readback(g, depth, &zero_ty, zero).rc(), succ_t.rc(), term.rc());
                (t, apply(g, motive, scrut()))
            }
            (Frame::SumInd { motive, on_left, on_right }, Value::Sum(a, b)) => {
                let sum = ty.clone();
                let motive_t = readback_family(g, depth, motive, &[&|_| sum.clone()]);
                let branch = |dom: &V, f: &V, inj: fn(V) -> Value| {
                    let x = fresh(depth, dom.clone());
                    let bty = apply(g, motive, inj(x.clone()).rc());
                    Term::Lam(readback(g, depth + 1, &bty, &apply(g, f, x)).rc())
                };
                let l = branch(a, on_left, Value::Inl);
                let r = branch(b, on_right, Value::Inr);
                (Term::SumInd(motive_t.rc(), l.rc(), r.rc(), term.rc()), apply(g, motive, scrut()))
            }
            (Frame::Absurd { motive }, Value::Empty(_)) => {
                let empty = ty.clone();
                let motive_t = readback_family(g, depth, motive, &[&|_| empty.clone()]);
                (Term::Absurd(motive_t.rc(), term.rc()), apply(g, motive, scrut()))
            }
            (Frame::UnitInd { motive, base }, Value::Unit(_)) => {
                let unit = ty.clone();
                let motive_t = readback_family(g, depth, motive, &[&|_| unit.clone()]);
                let base_ty = apply(g, motive, Value::Star.rc());
                let t = Term::UnitInd(motive_t.rc(), readback(g, depth, &base_ty, base).rc(), term.rc());
                (t, apply(g, motive, scrut()))
            }
            (f, t) => panic!("kernel invariant: frame {f:?} on neutral of type {t:?}"),
        };
        term = next_term;
        ty = next_ty;
        prefix.spine.push(frame.clone());
    }
    (term, ty)
}

/// Definitional equality of two values of type `ty`.
pub fn convertible(g: &GlobalEnv, depth: usize, ty: &V, a: &V, b: &V) -> bool {
    readback(g, depth, ty, a) == readback(g, depth, ty, b)
}

/// Definitional equality of two types.
pub fn convertible_types(g: &GlobalEnv, depth: usize, a: &V, b: &V) -> bool {
    readback_type(g, depth, a) == readback_type(g, depth, b)
}

/// Evaluates a closed term and reads it back at the value of `ty`.
pub fn normalize(g: &GlobalEnv, env: &Env, ty: &Term, t: &Term) -> Term {
    let ty_v = eval(g, env, ty);
    let v = eval(g, env, t);
    readback(g, env.len(), &ty_v, &v)
}
