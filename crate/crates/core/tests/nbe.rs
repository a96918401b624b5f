use proptest::prelude::*;
use uvkernel::driver::check_source;
use uvkernel::level::LevelExpr;
use uvkernel::nbe::{convertible, convertible_types, eval, fresh, readback};
use uvkernel::term::RcTerm;
use uvkernel::value::{Env, Value};
use uvkernel::{GlobalEnv, SourceFile, Term};

fn rc(t: Term) -> RcTerm {
    t.rc()
}

fn app(f: Term, a: Term) -> Term {
    Term::App(rc(f), rc(a))
}

fn global(name: &str) -> Term {
    Term::Global(name.into(), vec![])
}

fn env0() -> Env {
    Env::rigid_levels(&[])
}

const ARITH: &str = "
def add (m n : ℕ) : ℕ := natInd (λ _, ℕ) m (λ k r, suc r) n
def mul (m n : ℕ) : ℕ := natInd (λ _, ℕ) 0 (λ k r, add r m) n
def addAlias : ℕ → ℕ → ℕ := add
postulate opaque : ℕ → ℕ
postulate A : U 0
postulate B : A → U 0
";

fn arith() -> GlobalEnv {
    let mut g = GlobalEnv::new();
    let out = check_source(&mut g, &SourceFile::new("arith.uv", ARITH), false);
    assert!(out.ok(), "{:?}", out.diagnostics);
    g
}

#[test]
fn beta_example() {
    let g = GlobalEnv::new();
    let v = eval(&g, &env0(), &app(Term::Lam(rc(Term::Var(0))), Term::Star));
    assert!(matches!(*v, Value::Star));
}

#[test]
fn j_on_refl_is_the_base_case() {
    let g = GlobalEnv::new();
    let three = Term::numeral(3);
    let t = Term::J(
        rc(Term::Nat),
        rc(three.clone()),
        rc(Term::Lam(rc(Term::Lam(rc(Term::Nat))))),
        rc(Term::numeral(9)),
        rc(three.clone()),
        rc(Term::Refl(rc(Term::Nat), rc(three))),
    );
    let v = eval(&g, &env0(), &t);
    assert_eq!(readback(&g, 0, &eval(&g, &env0(), &Term::Nat), &v), Term::numeral(9));
}

#[test]
fn nat_ind_example_is_four() {
    // natInd C (suc (suc zero)) (λ n ih, suc ih) (suc (suc zero))
    let g = GlobalEnv::new();
    let step = Term::Lam(rc(Term::Lam(rc(Term::Suc(rc(Term::Var(0)))))));
    let t = Term::NatInd(rc(Term::Lam(rc(Term::Nat))), rc(Term::numeral(2)), rc(step), rc(Term::numeral(2)));
    let nat = eval(&g, &env0(), &Term::Nat);
    assert_eq!(readback(&g, 0, &nat, &eval(&g, &env0(), &t)), Term::numeral(4));
}

#[test]
fn readback_is_eta_long() {
    let g = arith();
    let a = eval(&g, &env0(), &global("A"));
    // f : A → A reads back as λ x, f x
    let arrow = eval(&g, &env0(), &Term::Pi(rc(global("A")), rc(global("A"))));
    let f = fresh(0, arrow.clone());
    assert_eq!(readback(&g, 1, &arrow, &f), Term::Lam(rc(app(Term::Var(1), Term::Var(0)))));
    // z : Σ (x : A), B x reads back as (pr1 z, pr2 z)
    let sigma = eval(&g, &env0(), &Term::Sigma(rc(global("A")), rc(app(global("B"), Term::Var(0)))));
    let z = fresh(0, sigma.clone());
    assert_eq!(
        readback(&g, 1, &sigma, &z),
        Term::Pair(rc(Term::Pr1(rc(Term::Var(0)))), rc(Term::Pr2(rc(Term::Var(0)))))
    );
    let unit = eval(&g, &env0(), &Term::Unit(LevelExpr::Zero));
    assert_eq!(readback(&g, 0, &unit, &eval(&g, &env0(), &Term::Star)), Term::Star);
    // no η at A itself: a variable stays a variable
    assert_eq!(readback(&g, 1, &a, &fresh(0, a.clone())), Term::Var(0));
}

#[test]
fn convertible_examples() {
    let g = arith();
    let arrow = eval(&g, &env0(), &Term::Pi(rc(global("A")), rc(global("A"))));
    let env = env0().extend(fresh(0, arrow.clone()));
    let f = eval(&g, &env, &Term::Var(0));
    let eta = eval(&g, &env, &Term::Lam(rc(app(Term::Var(1), Term::Var(0)))));
    assert!(convertible(&g, 1, &arrow, &eta, &f));

    let (u, v) = (LevelExpr::var("u"), LevelExpr::var("v"));
    let lenv = Env::rigid_levels(&["u".into(), "v".into()]);
    let uv = eval(&g, &lenv, &Term::Universe(u.clone().max(v.clone())));
    let vu = eval(&g, &lenv, &Term::Universe(v.max(u)));
    assert!(convertible_types(&g, 0, &uv, &vu));

    let nat = eval(&g, &env0(), &Term::Nat);
    let zero = eval(&g, &env0(), &Term::Zero);
    let one = eval(&g, &env0(), &Term::numeral(1));
    assert!(!convertible(&g, 0, &nat, &zero, &one));
}

#[test]
fn recursion_on_the_second_argument_decides_what_computes() {
    let g = arith();
    let nat = eval(&g, &env0(), &Term::Nat);
    let env = env0().extend(fresh(0, nat.clone()));
    let n = eval(&g, &env, &Term::Var(0));
    let add = |a: Term, b: Term| eval(&g, &env, &app(app(global("add"), a), b));
    // add n 0 ≡ n, but add 0 n is stuck on the neutral n
    assert!(convertible(&g, 1, &nat, &add(Term::Var(0), Term::Zero), &n));
    assert!(!convertible(&g, 1, &nat, &add(Term::Zero, Term::Var(0)), &n));
    // add n (suc m) ≡ suc (add n m)
    let lhs = add(Term::Var(0), Term::numeral(2));
    let rhs = eval(&g, &env, &Term::Suc(rc(Term::Suc(rc(Term::Var(0))))));
    assert!(convertible(&g, 1, &nat, &lhs, &rhs));
}

#[test]
fn postulates_never_reduce() {
    let g = arith();
    let v = eval(&g, &env0(), &app(global("opaque"), Term::numeral(3)));
    assert!(v.is_neutral());
    let nat = eval(&g, &env0(), &Term::Nat);
    let other = eval(&g, &env0(), &app(global("opaque"), Term::numeral(4)));
    assert!(!convertible(&g, 0, &nat, &v, &other));
}

#[test]
fn definitions_unfold() {
    let g = arith();
    let nat = eval(&g, &env0(), &Term::Nat);
    let via_alias = eval(&g, &env0(), &app(app(global("addAlias"), Term::numeral(2)), Term::numeral(3)));
    let direct = eval(&g, &env0(), &app(app(global("add"), Term::numeral(2)), Term::numeral(3)));
    assert!(convertible(&g, 0, &nat, &via_alias, &direct));
    assert_eq!(readback(&g, 0, &nat, &direct), Term::numeral(5));
}

// closed arithmetic against a recursive oracle

#[derive(Clone, Debug)]
enum Arith {
    Lit(u32),
    Suc(Box<Arith>),
    Add(Box<Arith>, Box<Arith>),
    Mul(Box<Arith>, Box<Arith>),
    /// (λ x, body) arg, with `Hole` standing for x inside body
    Let(Box<Arith>, Box<Arith>),
    Hole,
    /// pr1 (e, 0)
    Fst(Box<Arith>),
}

impl Arith {
    fn value(&self, hole: Option<u32>) -> u32 {
        match self {
            Arith::Lit(n) => *n,
            Arith::Suc(e) => e.value(hole) + 1,
            Arith::Add(a, b) => (0..b.value(hole)).fold(a.value(hole), |acc, _| acc + 1),
            Arith::Mul(a, b) => (0..b.value(hole)).fold(0, |acc, _| acc + a.value(hole)),
            Arith::Let(body, arg) => body.value(Some(arg.value(hole))),
            Arith::Hole => hole.unwrap_or(0),
            Arith::Fst(e) => e.value(hole),
        }
    }

    /// `depth` counts enclosing `Let` binders; `Hole` is the innermost.
    fn term(&self, depth: usize) -> Term {
        match self {
            Arith::Lit(n) => Term::numeral(*n),
            Arith::Suc(e) => Term::Suc(rc(e.term(depth))),
            Arith::Add(a, b) => app(app(global("add"), a.term(depth)), b.term(depth)),
            Arith::Mul(a, b) => app(app(global("mul"), a.term(depth)), b.term(depth)),
            Arith::Let(body, arg) => app(Term::Lam(rc(body.term(depth + 1))), arg.term(depth)),
            Arith::Hole if depth > 0 => Term::Var(0),
            Arith::Hole => Term::Zero,
            Arith::Fst(e) => Term::Pr1(rc(Term::Pair(rc(e.term(depth)), rc(Term::Zero)))),
        }
    }
}

fn arb_arith() -> impl Strategy<Value = Arith> {
    let leaf = prop_oneof![(0u32..4).prop_map(Arith::Lit), Just(Arith::Hole)];
    leaf.prop_recursive(4, 16, 2, |e| {
        let b = |s: BoxedStrategy<Arith>| s.prop_map(Box::new);
        let e = e.boxed();
        prop_oneof![
            b(e.clone()).prop_map(Arith::Suc),
            (b(e.clone()), b(e.clone())).prop_map(|(x, y)| Arith::Add(x, y)),
            (b(e.clone()), b(e.clone())).prop_map(|(x, y)| Arith::Mul(x, y)),
            (b(e.clone()), b(e.clone())).prop_map(|(x, y)| Arith::Let(x, y)),
            b(e).prop_map(Arith::Fst),
        ]
    })
}

fn small(e: &Arith) -> bool {
    e.value(None) <= 400
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_arithmetic_reads_back_as_its_value(e in arb_arith().prop_filter("size", small)) {
        let g = arith();
        let nat = eval(&g, &env0(), &Term::Nat);
        let v = eval(&g, &env0(), &e.term(0));
        prop_assert_eq!(readback(&g, 0, &nat, &v), Term::numeral(e.value(None)));
    }

    #[test]
    fn convertibility_matches_the_oracle(
        a in arb_arith().prop_filter("size", small),
        b in arb_arith().prop_filter("size", small),
        c in arb_arith().prop_filter("size", small),
    ) {
        let g = arith();
        let nat = eval(&g, &env0(), &Term::Nat);
        let [va, vb, vc] = [&a, &b, &c].map(|e| eval(&g, &env0(), &e.term(0)));
        let conv = |x, y| convertible(&g, 0, &nat, x, y);
        prop_assert!(conv(&va, &va));
        prop_assert_eq!(conv(&va, &vb), a.value(None) == b.value(None));
        prop_assert_eq!(conv(&va, &vb), conv(&vb, &va));
        if conv(&va, &vb) && conv(&vb, &vc) {
            prop_assert!(conv(&va, &vc));
        }
    }

    #[test]
    fn evaluation_is_stable_under_readback(e in arb_arith().prop_filter("size", small)) {
        // open terms too: the hole becomes a free variable
        let g = arith();
        let nat = eval(&g, &env0(), &Term::Nat);
        let env = env0().extend(fresh(0, nat.clone()));
        let body = Arith::Let(Box::new(e.clone()), Box::new(Arith::Hole)).term(1);
        let v = eval(&g, &env, &body);
        let again = eval(&g, &env, &readback(&g, 1, &nat, &v));
        prop_assert!(convertible(&g, 1, &nat, &v, &again));
    }
}
