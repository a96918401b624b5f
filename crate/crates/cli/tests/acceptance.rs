//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Built with `harness = false` so the verdict lines are always printed.
//! Oracles here are written independently of the kernel: levels are
//! compared by brute-force evaluation, arithmetic by plain recursion on
//! `u32`, η-expansions are built syntactically.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use uvkernel::check::{normalize_definition, Checker, Context};
use uvkernel::corpus::{verify_corpus, Manifest, Tier};
use uvkernel::driver::{check_source, prelude_env};
use uvkernel::level::{normalize_level, LevelExpr};
use uvkernel::nbe;
use uvkernel::value::Env;
use uvkernel::{Category, GlobalEnv, SourceFile, Term};

type Verdict = Result<String, String>;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn uvk() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uvk"))
}

// ---------------------------------------------------------------------------
// 1. level normal forms against exhaustive evaluation

#[derive(Clone, Debug)]
enum Lv {
    Var(usize),
    Zero,
    Suc(Box<Lv>),
    Max(Box<Lv>, Box<Lv>),
}

const LEVEL_VARS: [&str; 4] = ["a", "b", "c", "d"];

impl Lv {
    fn depth(&self) -> usize {
        match self {
            Lv::Var(_) | Lv::Zero => 1,
            Lv::Suc(e) => 1 + e.depth(),
            Lv::Max(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    fn value(&self, rho: &[u32; 4]) -> u32 {
        match self {
            Lv::Var(i) => rho[*i],
            Lv::Zero => 0,
            Lv::Suc(e) => e.value(rho) + 1,
            Lv::Max(a, b) => a.value(rho).max(b.value(rho)),
        }
    }

    fn to_expr(&self) -> LevelExpr {
        match self {
            Lv::Var(i) => LevelExpr::var(LEVEL_VARS[*i]),
            Lv::Zero => LevelExpr::Zero,
            Lv::Suc(e) => e.to_expr().suc(),
            Lv::Max(a, b) => a.to_expr().max(b.to_expr()),
        }
    }
}

fn suc(e: Lv) -> Lv {
    Lv::Suc(Box::new(e))
}

fn max(a: Lv, b: Lv) -> Lv {
    Lv::Max(Box::new(a), Box::new(b))
}

fn gen_level(rng: &mut StdRng, depth: usize) -> Lv {
    let leaf = depth <= 1 || rng.gen_bool(0.25);
    if leaf {
        return if rng.gen_bool(0.8) { Lv::Var(rng.gen_range(0..4)) } else { Lv::Zero };
    }
    if rng.gen_bool(0.4) {
        suc(gen_level(rng, depth - 1))
    } else {
        max(gen_level(rng, depth - 1), gen_level(rng, depth - 1))
    }
}

/// One equality-preserving rewrite somewhere in `e`.
fn rewrite(rng: &mut StdRng, e: Lv) -> Lv {
    match (rng.gen_range(0..7), e) {
        (0, e) => max(e.clone(), e),
        (1, Lv::Max(a, b)) => Lv::Max(b, a),
        (2, Lv::Max(a, bc)) => match *bc {
            Lv::Max(b, c) => max(Lv::Max(a, b), *c),
            bc => max(*a, bc),
        },
        (3, Lv::Suc(inner)) => match *inner {
            Lv::Max(a, b) => max(Lv::Suc(a), Lv::Suc(b)),
            inner => max(inner.clone(), suc(inner)),
        },
        (4, e) => max(Lv::Zero, e),
        (_, Lv::Suc(inner)) => suc(rewrite(rng, *inner)),
        (_, Lv::Max(a, b)) => {
            if rng.gen_bool(0.5) {
                Lv::Max(Box::new(rewrite(rng, *a)), b)
            } else {
                Lv::Max(a, Box::new(rewrite(rng, *b)))
            }
        }
        (_, e) => e,
    }
}

/// Wraps one leaf in a successor; usually changes the meaning.
fn perturb(rng: &mut StdRng, e: Lv) -> Lv {
    match e {
        Lv::Var(_) | Lv::Zero => suc(e),
        Lv::Suc(inner) => suc(perturb(rng, *inner)),
        Lv::Max(a, b) => {
            if rng.gen_bool(0.5) {
                max(perturb(rng, *a), *b)
            } else {
                max(*a, perturb(rng, *b))
            }
        }
    }
}

fn semantically_equal(a: &Lv, b: &Lv) -> bool {
    for i in 0..9u32.pow(4) {
        let rho = [i % 9, i / 9 % 9, i / 81 % 9, i / 729 % 9];
        if a.value(&rho) != b.value(&rho) {
            return false;
        }
    }
    true
}

fn level_pair(rng: &mut StdRng, k: usize) -> (Lv, Lv) {
    loop {
        let a = gen_level(rng, 6);
        let b = match k % 3 {
            0 => gen_level(rng, 6),
            kind => {
                let mut b = a.clone();
                for _ in 0..rng.gen_range(1..4) {
                    b = rewrite(rng, b);
                }
                if kind == 2 {
                    b = perturb(rng, b);
                }
                b
            }
        };
        if b.depth() <= 6 {
            return (a, b);
        }
    }
}

fn level_oracle() -> Verdict {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x1e7e1);
    let (mut equal, mut disagreements) = (0, Vec::new());
    for k in 0..1000 {
        let (a, b) = level_pair(&mut rng, k);
        let oracle = semantically_equal(&a, &b);
        let kernel = normalize_level(&a.to_expr()) == normalize_level(&b.to_expr());
        equal += oracle as usize;
        if oracle != kernel {
            disagreements.push(format!("{} vs {}", a.to_expr(), b.to_expr()));
        }
    }
    let elapsed = start.elapsed();
    let detail =
        format!("1000 pairs, {equal} semantically equal, {} disagreements, {elapsed:.2?}", disagreements.len());
    if !disagreements.is_empty() {
        return Err(format!("{detail}; first: {}", disagreements[0]));
    }
    if !(200..=800).contains(&equal) {
        return Err(format!("{detail}; sample is too lopsided to be informative"));
    }
    if elapsed > Duration::from_secs(5) {
        return Err(format!("{detail}; over the 5 s budget"));
    }
    Ok(detail)
}

// ---------------------------------------------------------------------------
// 2. definitional level laws

fn level_laws() -> Verdict {
    let (u, v, w) = (LevelExpr::var("u"), LevelExpr::var("v"), LevelExpr::var("w"));
    let nf = |e: &LevelExpr| normalize_level(e);
    let laws: [(&str, LevelExpr, LevelExpr); 6] = [
        ("u ⊔ u = u", u.clone().max(u.clone()), u.clone()),
        ("u ⊔ v = v ⊔ u", u.clone().max(v.clone()), v.clone().max(u.clone())),
        ("(u ⊔ v) ⊔ w = u ⊔ (v ⊔ w)", u.clone().max(v.clone()).max(w.clone()), u.clone().max(v.clone().max(w))),
        ("0 ⊔ u = u", LevelExpr::Zero.max(u.clone()), u.clone()),
        ("u ⊔ u⁺ = u⁺", u.clone().max(u.clone().suc()), u.clone().suc()),
        ("(u ⊔ v)⁺ = u⁺ ⊔ v⁺", u.clone().max(v.clone()).suc(), u.clone().suc().max(v.suc())),
    ];
    for (name, lhs, rhs) in &laws {
        if nf(lhs) != nf(rhs) {
            return Err(format!("law {name} fails: {} vs {}", nf(lhs), nf(rhs)));
        }
    }
    // U u : U u⁺, and nothing else
    let mut g = GlobalEnv::new();
    let good = check_source(&mut g, &SourceFile::new("laws.uv", "def univ [u] : U u⁺ := U u"), false);
    if !good.ok() {
        return Err(format!("U u : U u⁺ rejected: {}", good.diagnostics[0]));
    }
    for bad in ["def univ2 [u] : U u⁺⁺ := U u", "def univ3 [u] : U u := U u"] {
        let out = check_source(&mut g, &SourceFile::new("laws.uv", bad), false);
        match out.diagnostics.first() {
            Some(d) if d.category == Category::UniverseMismatch => {}
            _ => return Err(format!("`{bad}` was not a universe mismatch")),
        }
    }
    Ok("7 laws hold as exact normal-form and typing assertions".into())
}

// ---------------------------------------------------------------------------
// 3. η for neutral terms

/// Closed types with no redexes, so distinct trees are distinct types.
#[derive(Clone, Debug, PartialEq)]
enum Ty {
    Nat,
    Unit,
    Pi(Box<Ty>, Box<Ty>),
    Sigma(Box<Ty>, Box<Ty>),
    /// Π (n : ℕ), n = n in ℕ
    PiRefl,
    /// Σ (n : ℕ), n = n in ℕ
    SigmaRefl,
}

fn gen_ty(rng: &mut StdRng, depth: usize) -> Ty {
    if depth == 0 {
        return if rng.gen_bool(0.6) { Ty::Nat } else { Ty::Unit };
    }
    match rng.gen_range(0..8) {
        0 => Ty::Nat,
        1 => Ty::Unit,
        2 => Ty::PiRefl,
        3 => Ty::SigmaRefl,
        4 | 5 => Ty::Pi(Box::new(gen_ty(rng, depth - 1)), Box::new(gen_ty(rng, depth - 1))),
        _ => Ty::Sigma(Box::new(gen_ty(rng, depth - 1)), Box::new(gen_ty(rng, depth - 1))),
    }
}

fn gen_former(rng: &mut StdRng) -> Ty {
    loop {
        let t = gen_ty(rng, 3);
        if matches!(t, Ty::Pi(..) | Ty::Sigma(..) | Ty::PiRefl | Ty::SigmaRefl) {
            return t;
        }
    }
}

fn rc(t: Term) -> uvkernel::term::RcTerm {
    t.rc()
}

fn refl_nat_type(n: Term) -> Term {
    Term::Id(rc(Term::Nat), rc(n.clone()), rc(n))
}

impl Ty {
    fn term(&self) -> Term {
        match self {
            Ty::Nat => Term::Nat,
            Ty::Unit => Term::Unit(LevelExpr::Zero),
            // codomains are closed, so no shifting is needed under the binder
            Ty::Pi(a, b) => Term::Pi(rc(a.term()), rc(b.term())),
            Ty::Sigma(a, b) => Term::Sigma(rc(a.term()), rc(b.term())),
            Ty::PiRefl => Term::Pi(rc(Term::Nat), rc(refl_nat_type(Term::Var(0)))),
            Ty::SigmaRefl => Term::Sigma(rc(Term::Nat), rc(refl_nat_type(Term::Var(0)))),
        }
    }

    /// Some closed inhabitant.
    fn inhabitant(&self, rng: &mut StdRng) -> Term {
        match self {
            Ty::Nat => Term::numeral(rng.gen_range(0..4)),
            Ty::Unit => Term::Star,
            Ty::Pi(_, b) => Term::Lam(rc(b.inhabitant(rng))),
            Ty::Sigma(a, b) => Term::Pair(rc(a.inhabitant(rng)), rc(b.inhabitant(rng))),
            Ty::PiRefl => Term::Lam(rc(Term::Refl(rc(Term::Nat), rc(Term::Var(0))))),
            Ty::SigmaRefl => {
                let n = Term::numeral(rng.gen_range(0..4));
                Term::Pair(rc(n.clone()), rc(Term::Refl(rc(Term::Nat), rc(n))))
            }
        }
    }
}

fn shift(t: &Term, cutoff: usize) -> Term {
    use Term::*;
    let s = |u: &uvkernel::term::RcTerm| rc(shift(u, cutoff));
    match t {
        Var(i) if *i >= cutoff => Var(i + 1),
        Lam(b) => Lam(rc(shift(b, cutoff + 1))),
        App(f, a) => App(s(f), s(a)),
        Pair(a, b) => Pair(s(a), s(b)),
        Pr1(p) => Pr1(s(p)),
        Pr2(p) => Pr2(s(p)),
        Refl(a, x) => Refl(s(a), s(x)),
        Suc(n) => Suc(s(n)),
        _ => t.clone(),
    }
}

fn eta_expand(t: &Term, ty: &Ty) -> Term {
    match ty {
        Ty::Pi(..) | Ty::PiRefl => Term::Lam(rc(Term::App(rc(shift(t, 0)), rc(Term::Var(0))))),
        Ty::Sigma(..) | Ty::SigmaRefl => Term::Pair(rc(Term::Pr1(rc(t.clone()))), rc(Term::Pr2(rc(t.clone())))),
        _ => unreachable!("η only at Π and Σ"),
    }
}

/// A chain of eliminations out of variable 0, stopping at a Π or Σ type.
fn gen_neutral(rng: &mut StdRng, var_ty: &Ty) -> (Term, Ty) {
    let mut stops = vec![(Term::Var(0), var_ty.clone())];
    let (mut t, mut ty) = (Term::Var(0), var_ty.clone());
    loop {
        let next = match &ty {
            Ty::Pi(a, b) => (Term::App(rc(t.clone()), rc(a.inhabitant(rng))), (**b).clone()),
            Ty::Sigma(a, b) => {
                if rng.gen_bool(0.5) {
                    (Term::Pr1(rc(t.clone())), (**a).clone())
                } else {
                    (Term::Pr2(rc(t.clone())), (**b).clone())
                }
            }
            Ty::SigmaRefl => (Term::Pr1(rc(t.clone())), Ty::Nat),
            _ => break,
        };
        (t, ty) = next;
        if matches!(ty, Ty::Pi(..) | Ty::Sigma(..) | Ty::PiRefl | Ty::SigmaRefl) {
            stops.push((t.clone(), ty.clone()));
        }
    }
    stops.swap_remove(rng.gen_range(0..stops.len()))
}

fn eta_suite() -> Verdict {
    let start = Instant::now();
    let g = GlobalEnv::new();
    let env0 = Env::rigid_levels(&[]);
    let mut rng = StdRng::seed_from_u64(0xe7a);
    let mut depths = 0;
    for k in 0..50 {
        let var_ty = gen_former(&mut rng);
        let (t, ty) = gen_neutral(&mut rng, &var_ty);
        depths += t.size() - 1;

        // well-typed by the checker's own account
        let mut ctx = Context::new(&[]);
        let mut checker = Checker::new(&g);
        let var_v = checker.eval(&ctx, &var_ty.term());
        ctx.push("x".into(), var_v.clone());
        let inferred =
            checker.infer(&mut ctx, &t).map_err(|e| format!("case {k}: {t} does not infer: {}", e.message))?;
        let ty_v = nbe::eval(&g, &env0, &ty.term());
        if !nbe::convertible_types(&g, 1, &inferred, &ty_v) {
            return Err(format!("case {k}: {t} inferred at the wrong type"));
        }

        let env = env0.extend(nbe::fresh(0, var_v));
        let a = nbe::eval(&g, &env, &t);
        let b = nbe::eval(&g, &env, &eta_expand(&t, &ty));
        if !a.is_neutral() {
            return Err(format!("case {k}: {t} is not neutral"));
        }
        if !nbe::convertible(&g, 1, &ty_v, &a, &b) {
            return Err(format!("case {k}: {t} not convertible with its η-expansion at {}", ty.term()));
        }
    }
    let mut distinct = 0;
    while distinct < 50 {
        let dom = gen_ty(&mut rng, 2);
        let (c1, c2) = (gen_ty(&mut rng, 2), gen_ty(&mut rng, 2));
        if c1 == c2 {
            continue;
        }
        distinct += 1;
        let p1 = nbe::eval(&g, &env0, &Ty::Pi(Box::new(dom.clone()), Box::new(c1)).term());
        let p2 = nbe::eval(&g, &env0, &Ty::Pi(Box::new(dom), Box::new(c2)).term());
        if nbe::convertible_types(&g, 0, &p1, &p2) {
            return Err("Π types with distinct codomains were identified".into());
        }
    }
    let elapsed = start.elapsed();
    let detail =
        format!("50 neutrals ({depths} eliminations) η-convertible, 50 distinct-codomain Π pairs apart, {elapsed:.2?}");
    if elapsed > Duration::from_secs(5) {
        return Err(format!("{detail}; over the 5 s budget"));
    }
    Ok(detail)
}

// ---------------------------------------------------------------------------
// 4. ι rules

fn oracle_add(m: u32, n: u32) -> u32 {
    if n == 0 {
        m
    } else {
        oracle_add(m, n - 1) + 1
    }
}

fn oracle_mul(m: u32, n: u32) -> u32 {
    if n == 0 {
        0
    } else {
        oracle_add(oracle_mul(m, n - 1), m)
    }
}

fn oracle_pred(n: u32) -> u32 {
    n.saturating_sub(1)
}

fn numeral_of(t: &Term) -> Option<u32> {
    match t {
        Term::Zero => Some(0),
        Term::Suc(n) => numeral_of(n).map(|k| k + 1),
        Term::Loc(_, t) => numeral_of(t),
        _ => None,
    }
}

const IOTA_PRELUDE: &str = "
def add (m n : ℕ) : ℕ := natInd (λ _, ℕ) m (λ k r, suc r) n
def mul (m n : ℕ) : ℕ := natInd (λ _, ℕ) 0 (λ k r, add r m) n
def pred (n : ℕ) : ℕ := natInd (λ _, ℕ) 0 (λ k r, k) n
def jConst : ℕ := J ℕ 3 (λ y p, ℕ) 7 3 (refl ℕ 3)
def jDep : 2 = 2 in ℕ := J ℕ 2 (λ y p, y = y in ℕ) (refl ℕ 2) 2 (refl ℕ 2)
def left : ℕ + Unit 0 := inl 5
def right : ℕ + Unit 0 := inr star
def onLeft : ℕ := sumInd (λ _, ℕ) (λ n, suc n) (λ u, 0) left
def onRight : ℕ := sumInd (λ _, ℕ) (λ n, suc n) (λ u, 0) right
";

fn iota_suite() -> Verdict {
    let mut src = String::from(IOTA_PRELUDE);
    for m in 0..=10 {
        src.push_str(&format!("def pred_{m} : ℕ := pred {m}\n"));
        for n in 0..=10 {
            src.push_str(&format!("def add_{m}_{n} : ℕ := add {m} {n}\ndef mul_{m}_{n} : ℕ := mul {m} {n}\n"));
        }
    }
    let mut g = GlobalEnv::new();
    let out = check_source(&mut g, &SourceFile::new("iota.uv", src), false);
    if let Some(d) = out.diagnostics.first() {
        return Err(format!("ι test file does not check: {d}"));
    }
    let nf = |name: &str| normalize_definition(&g, name).expect("definition").strip_locs();
    let num = |name: &str| numeral_of(&nf(name));

    if num("jConst") != Some(7) {
        return Err(format!("J on refl with constant motive gave {}", nf("jConst")));
    }
    let refl2 = Term::Refl(rc(Term::Nat), rc(Term::numeral(2)));
    if nf("jDep") != refl2 {
        return Err(format!("J on refl with dependent motive gave {}", nf("jDep")));
    }
    if num("onLeft") != Some(6) || num("onRight") != Some(0) {
        return Err(format!("sumInd gave {} and {}", nf("onLeft"), nf("onRight")));
    }
    let mut cases = 4;
    for m in 0..=10u32 {
        if num(&format!("pred_{m}")) != Some(oracle_pred(m)) {
            return Err(format!("pred {m} gave {}", nf(&format!("pred_{m}"))));
        }
        for n in 0..=10u32 {
            for (op, want) in [("add", oracle_add(m, n)), ("mul", oracle_mul(m, n))] {
                let name = format!("{op}_{m}_{n}");
                if num(&name) != Some(want) {
                    return Err(format!("{op} {m} {n}: kernel {}, oracle {want}", nf(&name)));
                }
            }
        }
        cases += 1 + 2 * 11;
    }
    Ok(format!("{cases} closed eliminations match after readback (J, natInd on 0..10, sumInd)"))
}

// ---------------------------------------------------------------------------
// 5. shipped corpus through the binary

fn corpus_run() -> Verdict {
    let start = Instant::now();
    let out = uvk()
        .arg("--json")
        .arg("corpus")
        .arg(root().join("corpus/manifest.tsv"))
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| format!("report is not JSON: {e}"))?;
    let decls = report["declarations"].as_array().ok_or("no declarations array")?;
    let files = report["files"].as_array().ok_or("no files array")?;
    if let Some(bad) = decls.iter().find(|d| d["status"] != "PASS") {
        return Err(format!("{} did not pass", bad["name"]));
    }
    let detail = format!("{} declarations across {} files pass, exit 0, {elapsed:.2?}", decls.len(), files.len());
    if decls.len() < 45 || files.len() < 11 {
        return Err(format!("{detail}; corpus is smaller than required"));
    }
    if elapsed > Duration::from_secs(30) {
        return Err(format!("{detail}; over the 30 s budget"));
    }
    Ok(detail)
}

// ---------------------------------------------------------------------------
// 6. axiom ledger

const AXIOMS: [&str; 9] =
    ["univalence", "funext", "propext", "trunc", "truncIsProp", "truncIn", "truncRec", "propResize", "omegaResize"];

const TIER2_STUBS: [&str; 37] = [
    "lowerIsLeftKan",
    "upperIsRightKan",
    "lowerIterated",
    "upperIterated",
    "lowerIsEmbedding",
    "upperIsEmbedding",
    "upperRetractPointwise",
    "idEmbedding",
    "ainjectiveRetractOfPower",
    "subuniverseSigmaFlabby",
    "subuniversePiFlabby",
    "hlevelFlabby",
    "liftToLargerEmbedding",
    "universeRetractOfLarger",
    "ainjectiveIsRetractOfPower",
    "subuniverseRetract",
    "hlevelCharacterization",
    "powersetCharacterization",
    "injectivePowerTransfer",
    "injectiveTruncRetractOfPower",
    "injectiveTruncAInjective",
    "injectiveIffTruncAInjective",
    "liftEqChar",
    "liftUnitEmbedding",
    "liftUnitLeft",
    "liftUnitRight",
    "liftAssoc",
    "flabbyIffUnitalAlgebra",
    "universeSigmaAlgebra",
    "universePiAlgebra",
    "retractOfLift",
    "secondCharacterization",
    "liftResize",
    "injectiveIffTruncAInjectiveOmega",
    "inhabitedInjectiveToEM",
    "omegaInhabitedInjectiveToEM",
    "inhabitedInjectiveIffEM",
];

fn load_shipped() -> Result<(Manifest, GlobalEnv), String> {
    let manifest = Manifest::load(&root().join("corpus/manifest.tsv")).map_err(|e| e.to_string())?;
    let (report, g) = verify_corpus(GlobalEnv::new(), &manifest, false);
    if let Some(d) = report.diagnostics.first() {
        return Err(format!("corpus does not verify: {d}"));
    }
    Ok((manifest, g))
}

fn axiom_ledger() -> Verdict {
    let (manifest, g) = load_shipped()?;
    let found: BTreeSet<&str> = g.postulates().map(|e| &*e.name).collect();
    let ledger: BTreeSet<&str> = AXIOMS.iter().chain(TIER2_STUBS.iter()).copied().collect();
    let extra: Vec<_> = found.difference(&ledger).collect();
    let missing: Vec<_> = ledger.difference(&found).collect();
    if !extra.is_empty() || !missing.is_empty() {
        return Err(format!("extra postulates {extra:?}, missing {missing:?}"));
    }
    let tagged = |tier: Tier| -> BTreeSet<&str> {
        manifest.entries.iter().filter(|e| e.tier == tier).map(|e| e.name.as_str()).collect()
    };
    if tagged(Tier::Axiom) != AXIOMS.into_iter().collect() || tagged(Tier::Tier2) != TIER2_STUBS.into_iter().collect() {
        return Err("manifest tiers disagree with the ledger".into());
    }
    Ok(format!("{} postulates = {} axioms + {} TIER2 stubs, no extras", found.len(), AXIOMS.len(), TIER2_STUBS.len()))
}

// ---------------------------------------------------------------------------
// 7. negative suite

/// Reads the `expect: <category> <exit> [normalize <name>]` header.
fn expectation(text: &str) -> Option<(String, i32, Option<String>)> {
    let line = text.lines().find_map(|l| l.trim_start_matches(['-', '#', ' ']).strip_prefix("expect:"))?;
    let mut words = line.split_whitespace();
    let category = words.next()?.to_string();
    let code = words.next()?.parse().ok()?;
    let normalize = match words.next() {
        Some("normalize") => Some(words.next()?.to_string()),
        _ => None,
    };
    Some((category, code, normalize))
}

fn first_category(stderr: &[u8]) -> Option<String> {
    let line = String::from_utf8_lossy(stderr).lines().next()?.to_string();
    let v: serde_json::Value = serde_json::from_str(&line).ok()?;
    v["category"].as_str().map(str::to_string)
}

fn run_case(path: &Path, category: &str, code: i32, normalize: Option<&str>) -> Result<(), String> {
    let mut cmd = uvk();
    cmd.arg("--json");
    match normalize {
        Some(name) => cmd.arg("normalize").arg(path).arg(name),
        None if path.ends_with("manifest.tsv") => cmd.arg("corpus").arg(path),
        None => cmd.arg("check").arg(path),
    };
    let out = cmd.output().map_err(|e| e.to_string())?;
    let got = first_category(&out.stderr);
    if out.status.code() != Some(code) || got.as_deref() != Some(category) {
        return Err(format!(
            "{}: expected {category}/{code}, got {}/{:?}",
            path.display(),
            got.unwrap_or_else(|| "nothing".into()),
            out.status.code()
        ));
    }
    if !out.stdout.is_empty() && normalize.is_none() && !path.ends_with("manifest.tsv") {
        return Err(format!("{}: failing check wrote to stdout", path.display()));
    }
    Ok(())
}

fn negative_cases() -> Vec<PathBuf> {
    let tests = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let mut cases: Vec<PathBuf> = std::fs::read_dir(tests.join("neg"))
        .into_iter()
        .flatten()
        .flatten()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "uv"))
        .collect();
    for dir in std::fs::read_dir(tests.join("corpora")).into_iter().flatten().flatten() {
        cases.push(dir.path().join("manifest.tsv"));
    }
    cases.sort();
    cases
}

fn negative_suite() -> Verdict {
    let cases = negative_cases();
    let mut categories = BTreeSet::new();
    let mut ill_typed = 0;
    for path in &cases {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let (category, code, normalize) = expectation(&text).ok_or(format!("{}: no expect header", path.display()))?;
        run_case(path, &category, code, normalize.as_deref())?;
        if path.extension().is_some_and(|x| x == "uv") {
            ill_typed += 1;
        }
        categories.insert(category);
    }
    let required = ["universe-mismatch", "endpoint-mismatch", "unbound", "duplicate-name", "arity-mismatch"];
    if let Some(r) = required.iter().find(|r| !categories.contains(**r)) {
        return Err(format!("no negative case for {r}"));
    }
    if ill_typed < 12 {
        return Err(format!("only {ill_typed} ill-typed files"));
    }
    Ok(format!(
        "{} cases ({ill_typed} files, {} corpora) fail as designated, {} categories",
        cases.len(),
        cases.len() - ill_typed,
        categories.len()
    ))
}

// ---------------------------------------------------------------------------
// 8. truncation computation rule

fn truncation_rule() -> Verdict {
    let (manifest, g) = load_shipped()?;
    let entry = g.get("truncRecComp").ok_or("truncRecComp missing")?;
    if entry.is_postulate() {
        return Err("truncRecComp is postulated".into());
    }
    if manifest.entry("truncRecComp").map(|e| e.tier) != Some(Tier::Tier1) {
        return Err("truncRecComp is not tagged TIER1".into());
    }
    let mut refs = Vec::new();
    entry.body.as_ref().expect("definition").globals(&mut refs);
    // the endpoints mention the truncation formers; nothing else may appear
    if let Some(r) = refs.iter().find(|r| !matches!(&***r, "truncRec" | "truncIn")) {
        return Err(format!("proof should only use the isProp hypothesis, uses `{r}`"));
    }
    // and refl does not do
    let mut env = prelude_env();
    let neg = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/neg/trunc_comp_refl.uv");
    let text = std::fs::read_to_string(&neg).map_err(|e| e.to_string())?;
    let out = check_source(&mut env, &SourceFile::new("trunc_comp_refl.uv", text), false);
    match out.diagnostics.first() {
        Some(d) if d.category == Category::EndpointMismatch => {}
        other => return Err(format!("refl proof not rejected as endpoint mismatch: {other:?}")),
    }
    run_case(&neg, "endpoint-mismatch", 1, None)?;
    Ok("truncRecComp checks from isProp alone; the refl proof is rejected".into())
}

type Criterion = fn() -> Verdict;

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("level normal form vs exhaustive oracle", level_oracle),
        ("definitional level laws", level_laws),
        ("η for neutrals at Π and Σ", eta_suite),
        ("ι rules against recursive oracles", iota_suite),
        ("shipped corpus", corpus_run),
        ("axiom ledger", axiom_ledger),
        ("negative suite", negative_suite),
        ("truncation computation rule is derived", truncation_rule),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}. {name}: {detail}", i + 1)
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
