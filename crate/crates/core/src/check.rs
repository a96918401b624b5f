//! Bidirectional type checking.
//!
//! `infer` handles variables, globals, formers, applications, projections
//! and eliminators; `check` handles λ, pairs, injections, `star` and `refl`
//! and otherwise falls back to inference plus conversion. Eliminator
//! motives carry no universe annotation: a motive is checked by walking its
//! telescope and inferring a universe for the body, whichever universe that
//! turns out to be.

use crate::diag::Category;
use crate::env::{GlobalEntry, GlobalEnv};
use crate::level::LevelNF;
use crate::nbe::{self, apply, apply2, eval_level, readback, readback_type};
use crate::syntax::{CoreDecl, Span};
use crate::term::{RcTerm, Term};
use crate::value::{Closure, Env, Value, V};
use crate::Name;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct TypeError {
    pub category: Category,
    pub span: Option<Span>,
    pub expected: Option<String>,
    pub actual: Option<String>,
    pub message: String,
}

/// Typing context: a telescope of named variables with their types.
#[derive(Clone, Debug, Default)]
pub struct Context {
    names: Vec<Name>,
    types: Vec<V>,
    env: Env,
}

impl Context {
    /// Empty context under the given level parameters.
    pub fn new(levels: &[Name]) -> Self {
        Context { names: Vec::new(), types: Vec::new(), env: Env::rigid_levels(levels) }
    }

    pub fn depth(&self) -> usize {
        self.types.len()
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn names(&self) -> &[Name] {
        &self.names
    }

    /// Adds a variable and returns its value.
    pub fn push(&mut self, name: Name, ty: V) -> V {
        let x = nbe::fresh(self.depth(), ty.clone());
        self.names.push(name);
        self.types.push(ty);
        self.env = self.env.extend(x.clone());
        x
    }

    fn with_binding<R>(&mut self, ty: V, f: impl FnOnce(&mut Self, V) -> R) -> R {
        let saved = self.env.clone();
        let name: Name = format!("x{}", self.depth()).into();
        let x = self.push(name, ty);
        let r = f(self, x);
        self.names.pop();
        self.types.pop();
        self.env = saved;
        r
    }
}

type Family<'a> = &'a dyn Fn(&[V]) -> V;

pub struct Checker<'g> {
    g: &'g GlobalEnv,
    span: Option<Span>,
}

impl<'g> Checker<'g> {
    pub fn new(g: &'g GlobalEnv) -> Self {
        Checker { g, span: None }
    }

    fn err(&self, category: Category, message: impl Into<String>) -> TypeError {
        TypeError { category, span: self.span, expected: None, actual: None, message: message.into() }
    }

    fn mismatch(&self, category: Category, message: &str, expected: String, actual: String) -> TypeError {
        TypeError { expected: Some(expected), actual: Some(actual), ..self.err(category, message) }
    }

    pub fn eval(&self, ctx: &Context, t: &Term) -> V {
        nbe::eval(self.g, &ctx.env, t)
    }

    pub fn show_type(&self, ctx: &Context, ty: &V) -> String {
        readback_type(self.g, ctx.depth(), ty).eta_contract().display_in(&ctx.names)
    }

    fn show_value(&self, ctx: &Context, ty: &V, v: &V) -> String {
        readback(self.g, ctx.depth(), ty, v).eta_contract().display_in(&ctx.names)
    }

    fn conv_types(&self, depth: usize, a: &V, b: &V) -> bool {
        nbe::convertible_types(self.g, depth, a, b)
    }

    fn with_span<R>(&mut self, span: Span, f: impl FnOnce(&mut Self) -> R) -> R {
        let saved = self.span.replace(span);
        let r = f(self);
        self.span = saved;
        r
    }

    /// Infers a type for `t` and requires it to be a universe.
    pub fn infer_universe(&mut self, ctx: &mut Context, t: &Term) -> Result<LevelNF, TypeError> {
        let ty = self.infer(ctx, t)?;
        match &*ty {
            Value::Universe(l) => Ok(l.clone()),
            _ => Err(self.mismatch(
                Category::TypeMismatch,
                "expected a type",
                "a universe U ℓ".into(),
                self.show_type(ctx, &ty),
            )),
        }
    }

    pub fn infer(&mut self, ctx: &mut Context, t: &Term) -> Result<V, TypeError> {
        match t {
            Term::Loc(span, inner) => self.with_span(*span, |c| c.infer(ctx, inner)),
            Term::Var(i) => Ok(ctx.types[ctx.depth() - 1 - i].clone()),
            Term::Global(name, ls) => {
                let entry =
                    self.g.get(name).ok_or_else(|| self.err(Category::Unbound, format!("unknown global `{name}`")))?;
                if entry.levels.len() != ls.len() {
                    return Err(self.err(
                        Category::ArityMismatch,
                        format!("`{name}` expects {} level argument(s), got {}", entry.levels.len(), ls.len()),
                    ));
                }
                let levels = entry.levels.iter().cloned().zip(ls.iter().map(|l| eval_level(&ctx.env, l))).collect();
                Ok(nbe::eval(self.g, &Env::with_levels(levels), &entry.ty))
            }
            Term::Universe(l) => Ok(Value::Universe(eval_level(&ctx.env, l).succ()).rc()),
            Term::Pi(a, b) | Term::Sigma(a, b) => {
                let la = self.infer_universe(ctx, a)?;
                let av = self.eval(ctx, a);
                let lb = ctx.with_binding(av, |ctx, _| self.infer_universe(ctx, b))?;
                Ok(Value::Universe(la.join(&lb)).rc())
            }
            Term::Sum(a, b) => {
                let la = self.infer_universe(ctx, a)?;
                let lb = self.infer_universe(ctx, b)?;
                Ok(Value::Universe(la.join(&lb)).rc())
            }
            Term::Id(a, x, y) => {
                let la = self.infer_universe(ctx, a)?;
                let av = self.eval(ctx, a);
                self.check(ctx, x, &av)?;
                self.check(ctx, y, &av)?;
                Ok(Value::Universe(la).rc())
            }
            Term::Empty(l) | Term::Unit(l) => Ok(Value::Universe(eval_level(&ctx.env, l)).rc()),
            Term::Nat => Ok(Value::Universe(LevelNF::zero()).rc()),
            Term::Zero => Ok(Value::Nat.rc()),
            Term::Suc(n) => {
                self.check(ctx, n, &Value::Nat.rc())?;
                Ok(Value::Nat.rc())
            }
            Term::App(f, a) => {
                let fty = self.infer(ctx, f)?;
                match &*fty {
                    Value::Pi(dom, cod) => {
                        self.check(ctx, a, dom)?;
                        Ok(cod.apply(self.g, self.eval(ctx, a)))
                    }
                    _ => Err(self.mismatch(
                        Category::TypeMismatch,
                        "applied term is not a function",
                        "a Π type".into(),
                        self.show_type(ctx, &fty),
                    )),
                }
            }
            Term::Pr1(p) | Term::Pr2(p) => {
                let pty = self.infer(ctx, p)?;
                match &*pty {
                    Value::Sigma(a, b) => {
                        if matches!(t, Term::Pr1(_)) {
                            Ok(a.clone())
                        } else {
                            Ok(b.apply(self.g, nbe::pr1(&self.eval(ctx, p))))
                        }
                    }
                    _ => Err(self.mismatch(
                        Category::TypeMismatch,
                        "projection from a term that is not a pair",
                        "a Σ type".into(),
                        self.show_type(ctx, &pty),
                    )),
                }
            }
            Term::Refl(a, x) => {
                self.infer_universe(ctx, a)?;
                let av = self.eval(ctx, a);
                self.check(ctx, x, &av)?;
                let xv = self.eval(ctx, x);
                Ok(Value::Id(av, xv.clone(), xv).rc())
            }
            Term::J(a, x, motive, base, y, p) => {
                self.infer_universe(ctx, a)?;
                let av = self.eval(ctx, a);
                self.check(ctx, x, &av)?;
                let xv = self.eval(ctx, x);
                {
                    let (a1, a2, x2) = (av.clone(), av.clone(), xv.clone());
                    self.check_motive(
                        ctx,
                        motive,
                        &[&move |_| a1.clone(), &move |args| Value::Id(a2.clone(), x2.clone(), args[0].clone()).rc()],
                    )?;
                }
                let mv = self.eval(ctx, motive);
                let base_ty = apply2(self.g, &mv, xv.clone(), Value::Refl(av.clone(), xv.clone()).rc());
                self.check(ctx, base, &base_ty)?;
                self.check(ctx, y, &av)?;
                let yv = self.eval(ctx, y);
                self.check(ctx, p, &Value::Id(av, xv, yv.clone()).rc())?;
                Ok(apply2(self.g, &mv, yv, self.eval(ctx, p)))
            }
            Term::SumInd(motive, on_left, on_right, s) => {
                let sty = self.infer(ctx, s)?;
                let Value::Sum(a, b) = &*sty else {
                    return Err(self.mismatch(
                        Category::TypeMismatch,
                        "sumInd scrutinee is not of a sum type",
                        "A + B".into(),
                        self.show_type(ctx, &sty),
                    ));
                };
                let s_ty = sty.clone();
                self.check_motive(ctx, motive, &[&move |_| s_ty.clone()])?;
                let mv = self.eval(ctx, motive);
                for (branch, dom, inj) in [(on_left, a, Value::Inl as fn(V) -> Value), (on_right, b, Value::Inr)] {
                    let m = mv.clone();
                    let branch_ty = Value::Pi(dom.clone(), Closure::native(move |g, x| apply(g, &m, inj(x).rc()))).rc();
                    self.check(ctx, branch, &branch_ty)?;
                }
                Ok(apply(self.g, &mv, self.eval(ctx, s)))
            }
            Term::Absurd(motive, e) => {
                let ety = self.infer(ctx, e)?;
                if !matches!(&*ety, Value::Empty(_)) {
                    return Err(self.mismatch(
                        Category::TypeMismatch,
                        "absurd applied to a term that is not of an empty type",
                        "Empty ℓ".into(),
                        self.show_type(ctx, &ety),
                    ));
                }
                self.check_motive(ctx, motive, &[&move |_| ety.clone()])?;
                let mv = self.eval(ctx, motive);
                Ok(apply(self.g, &mv, self.eval(ctx, e)))
            }
            Term::UnitInd(motive, base, u) => {
                let uty = self.infer(ctx, u)?;
                if !matches!(&*uty, Value::Unit(_)) {
                    return Err(self.mismatch(
                        Category::TypeMismatch,
                        "unitInd applied to a term that is not of a unit type",
                        "Unit ℓ".into(),
                        self.show_type(ctx, &uty),
                    ));
                }
                self.check_motive(ctx, motive, &[&move |_| uty.clone()])?;
                let mv = self.eval(ctx, motive);
                self.check(ctx, base, &apply(self.g, &mv, Value::Star.rc()))?;
                Ok(apply(self.g, &mv, self.eval(ctx, u)))
            }
            Term::NatInd(motive, zero, succ, n) => {
                self.check(ctx, n, &Value::Nat.rc())?;
                self.check_motive(ctx, motive, &[&|_| Value::Nat.rc()])?;
                let mv = self.eval(ctx, motive);
                self.check(ctx, zero, &apply(self.g, &mv, Value::Zero.rc()))?;
                let m = mv.clone();
                let step_ty = Value::Pi(
                    Value::Nat.rc(),
                    Closure::native(move |g, k| {
                        let m2 = m.clone();
                        let k2 = k.clone();
                        Value::Pi(
                            apply(g, &m, k),
                            Closure::native(move |g, _| apply(g, &m2, Value::Suc(k2.clone()).rc())),
                        )
                        .rc()
                    }),
                )
                .rc();
                self.check(ctx, succ, &step_ty)?;
                Ok(apply(self.g, &mv, self.eval(ctx, n)))
            }
            Term::Lam(_) | Term::Pair(..) | Term::Inl(_) | Term::Inr(_) | Term::Star => Err(self.err(
                Category::NotInferable,
                "cannot infer a type for this term; it must appear where its type is known",
            )),
        }
    }

    pub fn check(&mut self, ctx: &mut Context, t: &Term, ty: &V) -> Result<(), TypeError> {
        match (t, &**ty) {
            (Term::Loc(span, inner), _) => self.with_span(*span, |c| c.check(ctx, inner, ty)),
            (Term::Lam(body), Value::Pi(a, b)) => {
                ctx.with_binding(a.clone(), |ctx, x| self.check(ctx, body, &b.apply(self.g, x)))
            }
            (Term::Pair(x, y), Value::Sigma(a, b)) => {
                self.check(ctx, x, a)?;
                let xv = self.eval(ctx, x);
                self.check(ctx, y, &b.apply(self.g, xv))
            }
            (Term::Inl(x), Value::Sum(a, _)) => self.check(ctx, x, a),
            (Term::Inr(y), Value::Sum(_, b)) => self.check(ctx, y, b),
            (Term::Star, Value::Unit(_)) => Ok(()),
            (Term::Refl(..), Value::Id(a, x, y)) => {
                let actual = self.infer(ctx, t)?;
                let Value::Id(a2, x2, _) = &*actual else { unreachable!() };
                if !self.conv_types(ctx.depth(), a, a2) {
                    return Err(self.mismatch(
                        Category::TypeMismatch,
                        "refl is taken in a different type",
                        self.show_type(ctx, ty),
                        self.show_type(ctx, &actual),
                    ));
                }
                let d = ctx.depth();
                if !nbe::convertible(self.g, d, a, x2, x) || !nbe::convertible(self.g, d, a, x2, y) {
                    return Err(self.mismatch(
                        Category::EndpointMismatch,
                        "the endpoints of this identity type are not definitionally equal",
                        format!("{} ≡ {}", self.show_value(ctx, a, x), self.show_value(ctx, a, y)),
                        format!("refl at {}", self.show_value(ctx, a, x2)),
                    ));
                }
                Ok(())
            }
            (Term::Lam(_) | Term::Pair(..) | Term::Inl(_) | Term::Inr(_) | Term::Star, _) => {
                let what = match t {
                    Term::Lam(_) => "a λ-abstraction",
                    Term::Pair(..) => "a pair",
                    Term::Inl(_) | Term::Inr(_) => "an injection",
                    _ => "star",
                };
                Err(self.mismatch(
                    Category::TypeMismatch,
                    &format!("{what} cannot have this type"),
                    self.show_type(ctx, ty),
                    what.to_string(),
                ))
            }
            _ => {
                let actual = self.infer(ctx, t)?;
                self.expect_type(ctx, &actual, ty)
            }
        }
    }

    fn expect_type(&self, ctx: &Context, actual: &V, expected: &V) -> Result<(), TypeError> {
        if self.conv_types(ctx.depth(), actual, expected) {
            return Ok(());
        }
        let category = match (&**actual, &**expected) {
            (Value::Universe(_), Value::Universe(_)) => Category::UniverseMismatch,
            _ => Category::TypeMismatch,
        };
        let message = if category == Category::UniverseMismatch {
            "universe levels differ (universes are not cumulative)"
        } else {
            "type mismatch"
        };
        Err(self.mismatch(category, message, self.show_type(ctx, expected), self.show_type(ctx, actual)))
    }

    /// Checks that `t` is a type family over the telescope `doms`, where
    /// each domain may depend on the variables bound before it.
    pub fn check_motive(&mut self, ctx: &mut Context, t: &Term, doms: &[Family<'_>]) -> Result<(), TypeError> {
        let mut args = Vec::new();
        self.motive_rec(ctx, t, doms, &mut args)
    }

    fn motive_rec(
        &mut self,
        ctx: &mut Context,
        t: &Term,
        doms: &[Family<'_>],
        args: &mut Vec<V>,
    ) -> Result<(), TypeError> {
        if let Term::Loc(span, inner) = t {
            return self.with_span(*span, |c| c.motive_rec(ctx, inner, doms, args));
        }
        let k = args.len();
        if k == doms.len() {
            return self.infer_universe(ctx, t).map(|_| ());
        }
        if let Term::Lam(body) = t {
            let dom = doms[k](args);
            return ctx.with_binding(dom, |ctx, x| {
                args.push(x);
                let r = self.motive_rec(ctx, body, doms, args);
                args.pop();
                r
            });
        }
        let mut fty = self.infer(ctx, t)?;
        let depth = ctx.depth();
        let start = args.len();
        let mut result = Ok(());
        for (i, dom_fn) in doms.iter().enumerate().skip(start) {
            let dom = dom_fn(args);
            let next = match &*fty {
                Value::Pi(a, b) if self.conv_types(depth + i - start, a, &dom) => {
                    let x = nbe::fresh(depth + i - start, dom);
                    args.push(x.clone());
                    b.apply(self.g, x)
                }
                _ => {
                    result = Err(self.mismatch(
                        Category::TypeMismatch,
                        "eliminator motive has the wrong domain",
                        format!(
                            "a type family over {}",
                            readback_type(self.g, depth + i - start, &dom).eta_contract().display_in(&ctx.names)
                        ),
                        self.show_type(ctx, &fty),
                    ));
                    break;
                }
            };
            fty = next;
        }
        if result.is_ok() && !matches!(&*fty, Value::Universe(_)) {
            result = Err(self.err(Category::TypeMismatch, "eliminator motive must return a type"));
        }
        args.truncate(start);
        result
    }
}

/// Checks a resolved declaration against `g` and, on success, adds it.
pub fn check_declaration(g: &mut GlobalEnv, d: &CoreDecl, file: &str) -> Result<(), TypeError> {
    let entry = check_declaration_entry(g, d, file)?;
    g.insert(entry);
    Ok(())
}

fn check_declaration_entry(g: &GlobalEnv, d: &CoreDecl, file: &str) -> Result<GlobalEntry, TypeError> {
    if g.contains(&d.name) {
        return Err(TypeError {
            category: Category::DuplicateName,
            span: Some(d.name_span),
            expected: None,
            actual: None,
            message: format!("`{}` is already declared", d.name),
        });
    }
    let mut checker = Checker::new(g);
    let mut ctx = Context::new(&d.levels);
    // Walk the parameter telescope by hand so the binders keep their source
    // names in diagnostics. Same judgement as checking the whole Π and λ.
    let mut ty = &d.ty;
    let mut body = d.body.as_ref();
    for name in &d.params {
        let (span, inner) = match ty {
            Term::Loc(span, inner) => (Some(*span), &**inner),
            t => (None, t),
        };
        let (Term::Pi(dom, cod), Some(Term::Lam(_)) | None) = (inner, body) else {
            break;
        };
        let dom_ty = match span {
            Some(span) => checker.with_span(span, |c| c.infer_universe(&mut ctx, dom)),
            None => checker.infer_universe(&mut ctx, dom),
        };
        dom_ty?;
        let dom_v = checker.eval(&ctx, dom);
        ctx.push(name.clone(), dom_v);
        ty = cod;
        body = match body {
            Some(Term::Lam(b)) => Some(&**b),
            _ => None,
        };
    }
    checker.infer_universe(&mut ctx, ty)?;
    if let Some(body) = body {
        let ty = checker.eval(&ctx, ty);
        checker.check(&mut ctx, body, &ty)?;
    }
    let rc = |t: &Term| -> RcTerm { t.clone().rc() };
    Ok(GlobalEntry {
        name: d.name.clone(),
        kind: d.kind,
        levels: d.levels.clone(),
        ty: rc(&d.ty),
        body: d.body.as_ref().map(rc),
        file: file.to_string(),
        span: d.span,
    })
}

/// β-normal η-long form of a checked definition's body, with its level
/// parameters left as variables. `None` for postulates.
pub fn normalize_definition(g: &GlobalEnv, name: &str) -> Option<Term> {
    let entry = g.get(name)?;
    let body = entry.body.as_ref()?;
    let env = Env::rigid_levels(&entry.levels);
    Some(nbe::normalize(g, &env, &entry.ty, body))
}
