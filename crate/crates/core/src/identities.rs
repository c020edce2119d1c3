//! Registry of identity checks. Each entry computes two sides through
//! different routes (enumeration, recurrence, grammar, series) and compares
//! them exactly up to a size bound.

use std::collections::BTreeMap;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::{
    mq_expansion_coeffs_at, partial_gamma, positivity_report, symmetric_decompose,
};
use crate::exactpoly::{bindings, rising_product};
use crate::families::{
    ak_recurrence, build_by_enumeration_with, build_by_recurrence, gamma_table, mq_from_fg, pxy_from_xi_eta, weigh,
    xi_eta, zeta_table, ab_decomp, CrossTerm, Enumerator, FamilyId, KParam,
};
use crate::grammar::{self, Grammar};
use crate::series::{
    carlitz_sides, four_variable_sides, ksavrelof_zeng_sides, ogf_operator_check_with, savage_sides, Series,
};
use crate::{poly, Monomial, Poly, Rational, Var};

/// Why a check failed, as shown to the user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure(pub String);

impl<E: fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// `Ok(details)` or the first counterexample.
pub type Outcome = Result<Vec<String>, Failure>;

type Checker = fn(&Enumerator, usize) -> Outcome;

pub struct IdentityCheck {
    pub id: &'static str,
    pub claim: &'static str,
    pub default_bound: usize,
    /// Set when the check samples points instead of comparing polynomials.
    pub sampling: Option<&'static str>,
    checker: Checker,
}

impl fmt::Debug for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCheck")
            .field("id", &self.id)
            .field("default_bound", &self.default_bound)
            .finish_non_exhaustive()
    }
}

impl IdentityCheck {
    pub fn run(&self, e: &Enumerator, bound: usize) -> IdentityReport {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| (self.checker)(e, bound)))
            .unwrap_or_else(|p| Err(Failure(format!("checker panicked: {}", panic_text(&p)))));
        let elapsed = start.elapsed();
        let (passed, counterexample, details) = match outcome {
            Ok(d) => (true, None, d),
            Err(Failure(c)) => (false, Some(c), Vec::new()),
        };
        IdentityReport {
            id: self.id.to_string(),
            claim: self.claim.to_string(),
            bound,
            passed,
            counterexample,
            details,
            sampling: self.sampling.map(str::to_string),
            elapsed,
        }
    }
}

fn panic_text(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub claim: String,
    pub bound: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<String>,
    /// Wall time; not part of the serialized form so output stays reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl IdentityReport {
    /// Equality on everything except the wall time.
    pub fn same_outcome(&self, other: &IdentityReport) -> bool {
        (&self.id, &self.claim, self.bound, self.passed, &self.counterexample, &self.details, &self.sampling)
            == (&other.id, &other.claim, other.bound, other.passed, &other.counterexample, &other.details, &other.sampling)
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} (bound {})", self.id, self.bound)?;
        if let Some(s) = &self.sampling {
            write!(f, " [sampling: {s}]")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: {c}")?;
        }
        for d in &self.details {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown identity `{0}`")]
pub struct UnknownIdentity(pub String);

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Replaces every default bound.
    pub bound: Option<usize>,
    /// Per-identity bounds; these win over `bound`.
    pub bounds: BTreeMap<String, usize>,
    pub enumerator: Enumerator,
    /// Worker threads; 0 means one per core.
    pub jobs: usize,
}

impl RunOptions {
    fn bound_for(&self, c: &IdentityCheck) -> usize {
        self.bounds.get(c.id).copied().or(self.bound).unwrap_or(c.default_bound)
    }
}

pub fn lookup(id: &str) -> Result<&'static IdentityCheck, UnknownIdentity> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| UnknownIdentity(id.to_string()))
}

pub fn ids() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|c| c.id)
}

pub fn registry() -> &'static [IdentityCheck] {
    REGISTRY
}

pub fn run_identity(id: &str, bound: Option<usize>) -> Result<IdentityReport, UnknownIdentity> {
    run_identity_with(&Enumerator::default(), id, bound)
}

pub fn run_identity_with(e: &Enumerator, id: &str, bound: Option<usize>) -> Result<IdentityReport, UnknownIdentity> {
    let c = lookup(id)?;
    Ok(c.run(e, bound.unwrap_or(c.default_bound)))
}

/// Runs `checks` (all of them if empty) in parallel; reports come back sorted by id.
pub fn run_selected(checks: &[&'static IdentityCheck], opts: &RunOptions) -> Vec<IdentityReport> {
    let selected: Vec<&IdentityCheck> = if checks.is_empty() { REGISTRY.iter().collect() } else { checks.to_vec() };
    let work = || -> Vec<IdentityReport> {
        selected.par_iter().map(|c| c.run(&opts.enumerator, opts.bound_for(c))).collect()
    };
    let mut out = match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn run_all(opts: &RunOptions) -> Vec<IdentityReport> {
    run_selected(&[], opts)
}

pub fn all_passed(reports: &[IdentityReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

// ---------------------------------------------------------------------------
// helpers

fn v(name: &str) -> Poly {
    Poly::var(name)
}

fn vs<const D: usize>(names: [&str; D]) -> [Poly; D] {
    names.map(Poly::var)
}

fn int(c: i64) -> Poly {
    Poly::from_i64(c)
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

fn eq(label: impl fmt::Display, lhs: &Poly, rhs: &Poly) -> Result<(), Failure> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((m, a, b)) => Err(Failure(format!("{label}: coefficient of {m} is {a} on the left, {b} on the right"))),
    }
}

fn eq_series(label: impl fmt::Display, (lhs, rhs): (Series, Series)) -> Result<(), Failure> {
    match lhs.first_difference(&rhs) {
        None => Ok(()),
        Some((i, a, b)) => Err(Failure(format!("{label}: coefficient of z^{i} is {a} on the left, {b} on the right"))),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure(msg()))
    }
}

fn g(name: &str) -> Grammar {
    grammar::builtin(name).expect("grammar ships with the crate")
}

/// Exponent complement that cannot underflow under a corrupted statistic.
fn co(total: usize, s: u32) -> u32 {
    (total as u32).saturating_sub(s)
}

fn binom(n: usize, i: usize) -> Rational {
    let mut r = Rational::from(1);
    for t in 0..i {
        r = &(&r * &Rational::from((n - t) as i64)) / &Rational::from((t + 1) as i64);
    }
    r
}

/// Replaces `p^f q^c` in `A_n(x, y, p, q)` by `num^f den^(c - f)`, which is
/// `A_n(x, y, num/den, den)` cleared of denominators.
fn pq_specialize(pq: &Poly, x: &Poly, y: &Poly, num: &Poly, den: &Poly) -> Poly {
    let (vx, vy, vp, vq) = (Var::new("x"), Var::new("y"), Var::new("p"), Var::new("q"));
    let mut out = Poly::zero();
    for (m, c) in pq.terms() {
        let (f, cy) = (m.exponent(&vp), m.exponent(&vq));
        let t = &(&x.pow(m.exponent(&vx)) * &y.pow(m.exponent(&vy))) * &(&num.pow(f) * &den.pow(cy - f));
        out += &t.scale(c);
    }
    out
}

fn reverse(p: &Poly, n: usize) -> Result<Poly, Failure> {
    Ok(p.reverse_in(&Var::new("x"), n as u32)?)
}

fn eulerian(n: usize) -> Result<Poly, Failure> {
    Ok(build_by_recurrence(FamilyId::A, n, None)?)
}

fn ok(details: impl IntoIterator<Item = String>) -> Outcome {
    Ok(details.into_iter().collect())
}

// ---------------------------------------------------------------------------
// family and grammar checks

fn ankap_both(e: &Enumerator, b: usize) -> Outcome {
    for k in 1..=3 {
        for n in 1..=b {
            let t = e.tally_words(n, k, |_, s| [s.ap, s.lap])?;
            let ap = weigh(&t, &[v("x"), int(1)]);
            let lap = weigh(&t, &[int(1), v("x")]);
            let a = ak_recurrence(n, &KParam::Int(k as i64));
            eq(format_args!("k={k}, n={n}, ap"), &ap, &a)?;
            eq(format_args!("k={k}, n={n}, lap"), &lap, &reverse(&a, n)?)?;
        }
    }
    ok([])
}

fn exc_cyc_ak(e: &Enumerator, b: usize) -> Outcome {
    for n in 1..=b {
        let lhs = weigh(&e.tally_perms(n, |_, s| [s.exc, co(n, s.cyc)])?, &vs(["x", "k"]));
        eq(format_args!("n={n}"), &lhs, &ak_recurrence(n, &KParam::Symbolic))?;
    }
    ok([])
}

fn dumont(e: &Enumerator, b: usize) -> Outcome {
    let gr = g("dumont");
    let (va, vb) = (v("a"), v("b"));
    for n in 1..=b {
        let an = weigh(&e.tally_perms(n, |_, s| [s.des])?, &[v("x")]);
        let x = Var::new("x");
        let hom = Poly::from_terms(an.terms().map(|(m, c)| {
            let i = m.exponent(&x);
            (Monomial::from_pairs([(Var::new("a"), i), (Var::new("b"), n as u32 + 1 - i)]), c.clone())
        }));
        eq(format_args!("n={n}, D^n(a)"), &gr.derive_n(&va, n), &hom)?;
        eq(format_args!("n={n}, D^n(b)"), &gr.derive_n(&vb, n), &hom)?;
    }
    ok([])
}

fn ank_grammar(e: &Enumerator, b: usize) -> Outcome {
    let (va, vb) = (Var::new("a"), Var::new("b"));
    for k in 1..=3u32 {
        let gr = grammar::ank(k);
        for n in 1..=b {
            let t = e.tally_words(n, k as usize, |_, s| [s.ap])?;
            let mut rhs = Poly::zero();
            for (exps, c) in &t {
                let j = exps[0];
                let m = Monomial::from_pairs([(va.clone(), k * j + 1), (vb.clone(), (k * (n as u32)).saturating_sub(k * j))]);
                rhs += &Poly::term(Rational::from(*c as i64), m);
            }
            eq(format_args!("k={k}, n={n}"), &gr.derive_n(&v("a"), n), &rhs)?;
        }
    }
    ok([])
}

fn lemmacycle(e: &Enumerator, b: usize) -> Outcome {
    let gr = g("lemmacycle");
    for n in 1..=b {
        let s = weigh(&e.tally_perms(n, |_, s| [s.exc, s.drop, s.fix, s.cyc])?, &vs(["x", "y", "p", "q"]));
        eq(format_args!("n={n}"), &gr.derive_n(&v("I"), n), &(&v("I") * &s))?;
    }
    ok([])
}

fn keylemma(e: &Enumerator, b: usize) -> Outcome {
    let gr = g("keylemma");
    for n in 1..=b {
        let s = weigh(&e.tally_perms(n, |_, s| [s.exc, s.drop, s.fix, co(n, s.cyc)])?, &vs(["x", "y", "p", "q"]));
        eq(format_args!("n={n}"), &gr.derive_n(&v("I"), n), &(&v("I") * &s))?;
    }
    ok([])
}

fn lemma_ji(e: &Enumerator, b: usize) -> Outcome {
    let gr = g("lemmaJi");
    let ab = poly("a*b");
    let w = vs(["x", "y", "alpha", "beta"]);
    for n in 1..=b {
        let lhs = gr.derive_n(&ab, n);
        let s = weigh(&e.tally_perms(n + 1, |_, s| [s.asc_star, s.des_star, s.lrmax - 1, s.rlmax - 1])?, &w);
        eq(format_args!("n={n}"), &lhs, &(&ab * &s))?;
        let c = weigh(
            &e.tally_perms(n + 1, |_, s| [s.des_star, s.asc_star, s.lrmin.saturating_sub(1), s.rlmin.saturating_sub(1)])?,
            &w,
        );
        eq(format_args!("n={n}, complement form with lrmin, rlmin"), &lhs, &(&ab * &c))?;
    }
    ok([])
}

fn plateau_lemma(e: &Enumerator, b: usize, gr: &Grammar, k: usize, label: &str) -> Result<(), Failure> {
    for n in 1..=b {
        let s = weigh(&e.tally_words(n, k, |_, s| [s.implap, s.plap, co(n, s.lap)])?, &vs(["x", "y", "z"]));
        eq(format_args!("{label}n={n}"), &gr.derive_n(&v("I"), n), &(&v("I") * &s))?;
    }
    Ok(())
}

fn lemmaap(e: &Enumerator, b: usize) -> Outcome {
    plateau_lemma(e, b, &g("lemmaap"), 2, "")?;
    ok([])
}

fn lemmaapp(e: &Enumerator, b: usize) -> Outcome {
    for k in 1..=3 {
        plateau_lemma(e, b, &grammar::lemmaapp(&int(k)), k as usize, &format!("k={k}, "))?;
    }
    let symbolic = grammar::lemmaapp(&v("k"));
    for k in 1..=3 {
        let at = bindings([("k", int(k))]);
        for n in 1..=b {
            let lhs = symbolic.derive_n(&v("I"), n).substitute(&at);
            eq(format_args!("k={k}, n={n}, letter k"), &lhs, &grammar::lemmaapp(&int(k)).derive_n(&v("I"), n))?;
        }
    }
    ok([])
}

fn lapap(e: &Enumerator, b: usize) -> Outcome {
    let gr = g("lapap");
    let at = bindings([("I", int(1)), ("J", v("x")), ("x", poly("x*y")), ("z", int(1))]);
    for n in 1..=b {
        let lhs = gr.derive_then_substitute(&v("I"), n, &at);
        let rhs = weigh(&e.tally_words(n, 2, |_, s| [s.lap, s.ap])?, &vs(["x", "y"]));
        eq(format_args!("n={n}"), &lhs, &rhs)?;
    }
    ok([])
}

fn lemma1(e: &Enumerator, b: usize) -> Outcome {
    for k in 2..=3u32 {
        let gr = grammar::lemma1(k);
        for n in 1..=b {
            let kn = k as usize * n;
            let s = weigh(&e.tally_words(n, k as usize, |_, s| [s.ap2, s.lrmin, co(kn, 2 * s.ap2)])?, &vs(["x", "q", "y"]));
            eq(format_args!("k={k}, n={n}"), &gr.derive_n(&v("I"), n), &(&v("I") * &s))?;
        }
    }
    ok(["k = 1 is excluded: two equal adjacent letters cannot occur in a permutation".to_string()])
}

fn g3(e: &Enumerator, b: usize) -> Outcome {
    let gr = g("g3");
    let ij = poly("I*J");
    for n in 1..=b {
        let s = weigh(
            &e.tally_perms(n + 1, |_, s| [s.impdes, s.pdes, s.impasc, s.pasc, s.lrmin - 1, s.rlmin - 1])?,
            &vs(["x1", "x2", "y1", "y2", "p", "q"]),
        );
        eq(format_args!("n={n}"), &gr.derive_n(&ij, n), &(&ij * &s))?;
    }
    ok([])
}

// ---------------------------------------------------------------------------
// convolutions and tables

fn convo_2n(e: &Enumerator, b: usize) -> Outcome {
    let nn: Vec<Poly> = (0..=b).map(|i| build_by_recurrence(FamilyId::N, i, None)).collect::<Result<_, _>>()?;
    for n in 0..=b {
        let lhs = build_by_enumeration_with(e, FamilyId::A, n, None)?.scale(&Rational::from(1i64 << n));
        let mut rhs = Poly::zero();
        for i in 0..=n {
            rhs += &(&nn[i] * &nn[n - i]).scale(&binom(n, i));
        }
        eq(format_args!("n={n}"), &lhs, &rhs)?;
    }
    ok([])
}

fn convo_type_b(e: &Enumerator, b: usize) -> Outcome {
    let mm: Vec<Poly> = (0..=b).map(|i| build_by_recurrence(FamilyId::M, i, None)).collect::<Result<_, _>>()?;
    let nn: Vec<Poly> = (0..=b).map(|i| build_by_recurrence(FamilyId::N, i, None)).collect::<Result<_, _>>()?;
    for n in 0..=b {
        let lhs = build_by_enumeration_with(e, FamilyId::B, n, None)?;
        let mut rhs = Poly::zero();
        for i in 0..=n {
            rhs += &(&mm[i] * &nn[n - i]).scale(&binom(n, i));
        }
        eq(format_args!("n={n}"), &lhs, &rhs)?;
    }
    ok([])
}

fn thm1_reconstruct(_: &Enumerator, b: usize) -> Outcome {
    for n in 1..=b {
        let t = partial_gamma(n, KParam::Symbolic);
        eq(format_args!("n={n}"), &t.reconstruct(), &ak_recurrence(n + 1, &KParam::Symbolic))?;
        ensure(t.nonnegative_integer(), || format!("n={n}: a gamma coefficient is not a nonnegative integer polynomial in k"))?;
    }
    ok([])
}

fn zeta_gamma(_: &Enumerator, b: usize) -> Outcome {
    for n in 1..=b {
        let z = zeta_table(n);
        let gm = gamma_table(n, &KParam::Int(2));
        let keys: std::collections::BTreeSet<_> = z.keys().chain(gm.keys()).collect();
        for key in keys {
            let (i, j) = *key;
            let lhs = z.get(key).cloned().unwrap_or_else(Poly::zero).scale(&Rational::from(1i64 << j));
            eq(format_args!("n={n}, i={i}, j={j}"), &lhs, &gm.get(key).cloned().unwrap_or_else(Poly::zero))?;
        }
    }
    ok([])
}

fn ank_bigamma(_: &Enumerator, b: usize) -> Outcome {
    for k in 1..=3 {
        for n in 1..=b {
            let r = positivity_report(&ak_recurrence(n, &KParam::Int(k)), (n - 1) as u32)?;
            ensure(r.bi_gamma_positive, || format!("k={k}, n={n}: not bi-gamma-positive"))?;
        }
    }
    ok([])
}

// ---------------------------------------------------------------------------
// equidistribution theorems

fn thmab(e: &Enumerator, b: usize) -> Outcome {
    let gr = g("lemmaJi");
    let at = bindings([("a", int(1)), ("b", int(1))]);
    let w = [v("x"), v("y"), poly("alpha*x + beta*y"), poly("alpha + beta")];
    for n in 1..=b {
        let lhs = gr.derive_then_substitute(&poly("a*b"), n, &at);
        let rhs = weigh(&e.tally_perms(n, |_, s| [s.exc, s.drop, s.fix, s.cyc.saturating_sub(s.fix)])?, &w);
        eq(format_args!("n={n}"), &lhs, &rhs)?;
    }
    ok([])
}

fn thmproper(e: &Enumerator, b: usize) -> Outcome {
    for n in 1..=b {
        let t = e.tally_words(n, 2, |_, s| [s.implap, s.plap])?;
        let p = e.tally_perms(n, |_, s| [s.exc, s.fix, co(n, s.cyc)])?;
        let lhs = weigh(&t, &vs(["x", "y"]));
        eq(format_args!("n={n}"), &lhs, &weigh(&p, &[v("x"), v("y"), int(2)]))?;
        let lap = weigh(&e.tally_words(n, 2, |_, s| [s.lap])?, &[v("x")]);
        eq(format_args!("n={n}, y=x"), &lap, &weigh(&p, &[v("x"), v("x"), int(2)]))?;
    }
    ok([])
}

fn thm17(e: &Enumerator, b: usize) -> Outcome {
    for k in 1..=3usize {
        for n in 1..=b {
            let t = e.tally_words(n, k, |_, s| [s.implap, s.plap, s.lap])?;
            let p = e.tally_perms(n, |_, s| [s.exc, s.fix, co(n, s.cyc)])?;
            let kk = int(k as i64);
            eq(
                format_args!("k={k}, n={n}"),
                &weigh(&t, &[v("x"), v("y"), int(1)]),
                &weigh(&p, &[v("x"), v("y"), kk.clone()]),
            )?;
            let lap = weigh(&t, &[int(1), int(1), v("x")]);
            eq(format_args!("k={k}, n={n}, y=x"), &lap, &weigh(&p, &[v("x"), v("x"), kk]))?;
            eq(format_args!("k={k}, n={n}, reversed 1/k-Eulerian"), &lap, &reverse(&ak_recurrence(n, &KParam::Int(k as i64)), n)?)?;
        }
    }
    ok([])
}

fn thm24(e: &Enumerator, b: usize) -> Outcome {
    let w = [v("x1"), v("y1"), poly("p*x2 + q*y2"), poly("p + q")];
    for n in 1..=b {
        let lhs = weigh(
            &e.tally_perms(n + 1, |_, s| [s.impdes, s.pdes, s.impasc, s.pasc, s.lrmin - 1, s.rlmin - 1])?,
            &vs(["x1", "x2", "y1", "y2", "p", "q"]),
        );
        let rhs = weigh(&e.tally_perms(n, |_, s| [s.exc, s.drop, s.fix, s.cyc.saturating_sub(s.fix)])?, &w);
        eq(format_args!("n={n}"), &lhs, &rhs)?;
    }
    ok([])
}

fn cor20_cases(e: &Enumerator, b: usize) -> Outcome {
    for n in 1..=b {
        let big = e.tally_perms(n + 1, |_, s| [s.impdes, s.pdes, s.impasc, s.pasc, s.lrmin - 1, s.rlmin - 1])?;
        let small = e.tally_perms(n, |_, s| [s.exc, s.drop, s.fix, s.cyc.saturating_sub(s.fix)])?;
        let one = || int(1);
        let case = |name: &str, l: [Poly; 6], r: [Poly; 4]| eq(format_args!("n={n}, {name}"), &weigh(&big, &l), &weigh(&small, &r));
        case(
            "x1=y1=1",
            [one(), v("x"), one(), v("y"), v("p"), v("q")],
            [one(), one(), poly("p*x + q*y"), poly("p + q")],
        )?;
        case(
            "x2=y2=1",
            [v("x"), one(), v("y"), one(), v("p"), v("q")],
            [v("x"), v("y"), poly("p + q"), poly("p + q")],
        )?;
        case("y1=y2=p=q=1", [v("x"), v("y"), one(), one(), one(), one()], [v("x"), one(), poly("1 + y"), int(2)])?;
        case("pdes and pasc", [one(), v("x"), one(), v("y"), one(), one()], [one(), one(), poly("x + y"), int(2)])?;
        let lhs = &v("x") * &weigh(&big, &[v("x"), v("x"), one(), one(), one(), one()]);
        eq(format_args!("n={n}, Eulerian"), &lhs, &eulerian(n + 1)?)?;
        eq(format_args!("n={n}, Eulerian via excedances"), &lhs, &(&v("x") * &weigh(&small, &[v("x"), one(), poly("1 + x"), int(2)])))?;
        let signed = weigh(&big, &[one(), v("x"), one(), poly("-x"), one(), one()]);
        let der = e.tally_perms(n, |_, s| [s.fix, s.cyc])?;
        let mut rhs = Poly::zero();
        for (ex, c) in &der {
            if ex[0] == 0 {
                rhs += &int(*c as i64 * (1i64 << ex[1]));
            }
        }
        eq(format_args!("n={n}, y=-x"), &signed, &rhs)?;
    }
    ok([])
}

fn aug_sym(e: &Enumerator, b: usize) -> Outcome {
    let w = vs(["x", "y", "p", "q"]);
    for n in 1..=b {
        let lhs = weigh(&e.tally_perms(n, |_, s| [s.impasc_hat, s.des_star, s.pasc_hat, s.rlmin])?, &w);
        let rhs = weigh(&e.tally_perms(n, |_, s| [s.exc, s.drop, s.fix, s.cyc])?, &w);
        eq(format_args!("n={n}"), &lhs, &rhs)?;
        let two = e.tally_perms(n, |_, s| [s.impasc_hat, s.des_star])?;
        eq(format_args!("n={n}, symmetry"), &weigh(&two, &vs(["x", "y"])), &weigh(&two, &vs(["y", "x"])))?;
    }
    ok([])
}

fn final_cor(e: &Enumerator, b: usize) -> Outcome {
    let pq = poly("p + q");
    for n in 1..=b {
        let a = build_by_recurrence(FamilyId::PQ, n, None)?.substitute(&bindings([("q", pq.clone()), ("p", v("w"))]));
        let mid = weigh(
            &e.tally_perms(n, |_, s| [s.impasc_hat, s.des_star, s.pasc_hat, s.rlmin])?,
            &[v("x"), v("y"), v("w"), pq.clone()],
        );
        let big = e.tally_perms(n + 1, |_, s| [s.impdes, s.impasc, s.pdes + s.pasc, s.lrmin - 1, s.rlmin - 1])?;
        let right = weigh(&big, &vs(["x", "y", "w", "p", "q"]));
        eq(format_args!("n={n}, recurrence vs S_n"), &a, &mid)?;
        eq(format_args!("n={n}, S_n vs S_(n+1)"), &mid, &right)?;
        let left = weigh(&e.tally_perms(n, |_, s| [s.des_star, s.rlmin])?, &[v("y"), pq.clone()]);
        let right = weigh(&big, &[int(1), v("y"), int(1), v("p"), v("q")]);
        eq(format_args!("n={n}, x=w=1"), &left, &right)?;
    }
    ok([])
}

// ---------------------------------------------------------------------------
// decompositions

fn xieta_expansion(e: &Enumerator, b: usize) -> Outcome {
    let mut details = Vec::new();
    let y = v("y");
    let opy = poly("1 + y");
    for n in 1..=b {
        let lhs = build_by_enumeration_with(e, FamilyId::Pxy, n + 1, None)?;
        eq(format_args!("n={n}"), &lhs, &pxy_from_xi_eta(n + 1, CrossTerm::Shifted))?;
        let t = e.tally_words(n + 1, 2, |w, s| [u32::from(w[0] == w[1]), s.ap])?;
        let (xi, eta) = xi_eta(n, CrossTerm::Shifted);
        let mut same = Poly::zero();
        for (i, c) in xi.iter().enumerate() {
            same += &(&y.pow(i as u32) * &opy.pow((n - 2 * i) as u32)).scale(c);
        }
        let mut rise = Poly::zero();
        for (j, c) in eta.iter().enumerate() {
            let e = n.checked_sub(1 + 2 * j).ok_or_else(|| Failure(format!("n={n}: eta index {j} out of range")))?;
            rise += &(&y.pow(j as u32 + 1) * &opy.pow(e as u32)).scale(c);
        }
        let all = weigh(&t, &[int(1), y.clone()]);
        let rises = weigh(&t, &[int(0), y.clone()]);
        eq(format_args!("n={n}, sigma_1 = sigma_2"), &(&all - &rises), &same)?;
        eq(format_args!("n={n}, sigma_1 < sigma_2"), &rises, &rise)?;
    }
    if let Some(n) = (1..=b.max(3)).find(|&n| pxy_from_xi_eta(n, CrossTerm::Aligned) != pxy_from_xi_eta(n, CrossTerm::Shifted)) {
        details.push(format!("cross term read as eta_(n,i-1); the reading eta_(n,i) disagrees from n={n}"));
    }
    Ok(details)
}

const SAMPLED_Q: [(i64, i64); 3] = [(1, 2), (1, 1), (3, 2)];

fn fg_mq(e: &Enumerator, b: usize) -> Outcome {
    let mut details = Vec::new();
    let q = Var::new("q");
    for n in 1..=b.min(7) {
        let m = mq_from_fg(n);
        eq(format_args!("n={n}"), &build_by_enumeration_with(e, FamilyId::Mq, n, None)?, &m)?;
        for (a, d) in SAMPLED_Q.into_iter().chain([(2, 1)]) {
            let q0 = rat(a, d);
            let (f, g) = mq_expansion_coeffs_at(n, &q0);
            ensure(f.iter().chain(&g).all(|c| !c.is_negative()), || format!("n={n}, q={q0}: negative expansion coefficient"))?;
        }
        for (a, d) in SAMPLED_Q {
            let q0 = rat(a, d);
            let at = m.substitute(&bindings([(q.name(), Poly::constant(q0.clone()))]));
            let r = positivity_report(&at, (n - 1) as u32)?;
            ensure(r.bi_gamma_positive, || format!("n={n}, q={q0}: not bi-gamma-positive"))?;
        }
    }
    let mut at2 = Vec::new();
    for n in 1..=b.max(8) {
        let m2 = mq_from_fg(n).substitute(&bindings([("q", int(2))]));
        let lhs = build_by_enumeration_with(e, FamilyId::A, n, None)?.scale(&Rational::from(1i64 << n));
        eq(format_args!("n={n}, q=2 collapse"), &lhs, &reverse(&m2, n)?)?;
        if n >= 2 {
            let r = positivity_report(&m2, (n - 1) as u32)?;
            at2.push(format!("{}", u8::from(r.bi_gamma_positive)));
        }
    }
    details.push(format!("q=2 (boundary, reported separately): bi-gamma-positive flags for n=2.. are [{}]", at2.join(",")));
    Ok(details)
}

fn ab_decomp_check(e: &Enumerator, b: usize) -> Outcome {
    for n in 1..=b {
        let m = build_by_enumeration_with(e, FamilyId::M, n, None)?;
        let d = symmetric_decompose(&m, (n - 1) as u32)?;
        let (a, bb) = ab_decomp(n);
        eq(format_args!("n={n}, a"), &d.a, &a)?;
        eq(format_args!("n={n}, b"), &d.b, &bb)?;
    }
    ok([])
}

// ---------------------------------------------------------------------------
// series

fn egf_savage(e: &Enumerator, b: usize) -> Outcome {
    let t: Vec<_> = (0..=b).map(|n| e.tally_perms(n, |_, s| [s.exc, co(n, s.cyc)])).collect::<Result<_, _>>()?;
    for k in 1..=3 {
        let a: Vec<Poly> = t.iter().map(|t| weigh(t, &[v("x"), int(k)])).collect();
        eq_series(format_args!("k={k}"), savage_sides(&a, k as u32))?;
    }
    ok([])
}

fn pq_tallies(e: &Enumerator, b: usize) -> Result<Vec<crate::families::Tally<4>>, Failure> {
    Ok((0..=b).map(|n| e.tally_perms(n, |_, s| [s.exc, s.drop, s.fix, s.cyc])).collect::<Result<_, _>>()?)
}

fn egf_ksavrelof_zeng(e: &Enumerator, b: usize) -> Outcome {
    let t = pq_tallies(e, b)?;
    for q0 in 1..=3 {
        let a: Vec<Poly> = t.iter().map(|t| weigh(t, &[v("x"), int(1), v("p"), int(q0)])).collect();
        eq_series(format_args!("q={q0}"), ksavrelof_zeng_sides(&a, q0 as u32))?;
    }
    ok([])
}

fn egf_four_variable(e: &Enumerator, b: usize) -> Outcome {
    let t = pq_tallies(e, b)?;
    for q0 in 1..=2 {
        let a: Vec<Poly> = t.iter().map(|t| weigh(t, &[v("x"), v("y"), v("p"), int(q0)])).collect();
        eq_series(format_args!("q={q0}"), four_variable_sides(&a, q0 as u32))?;
    }
    ok([])
}

fn egf_carlitz(e: &Enumerator, b: usize) -> Outcome {
    let t: Vec<_> = (0..=b)
        .map(|n| e.tally_perms(n + 1, |_, s| [s.asc_star, s.des_star, s.lrmax - 1, s.rlmax - 1]))
        .collect::<Result<_, _>>()?;
    for (al, be) in [(1, 1), (1, 2), (2, 1)] {
        let a: Vec<Poly> = t.iter().map(|t| weigh(t, &[v("x"), v("y"), int(al), int(be)])).collect();
        eq_series(format_args!("alpha={al}, beta={be}"), carlitz_sides(&a, al as u32, be as u32))?;
    }
    ok([])
}

fn operator_ank(e: &Enumerator, b: usize) -> Outcome {
    for k in 1..=3usize {
        for n in 1..=b {
            let a = weigh(&e.tally_words(n, k, |_, s| [s.ap])?, &[v("x")]);
            let r = ogf_operator_check_with(&a, n as u32, k as u32, 10)?;
            ensure(r.holds(), || format!("k={k}, n={n}: operator identity fails to order x^10 ({r:?})"))?;
        }
    }
    ok([])
}

// ---------------------------------------------------------------------------
// sampling

/// `(x, y, u3)`; `u1 = x y`, `u2 = 1`, `u4 = x + y - u3`.
pub fn xu01_points() -> Vec<(Rational, Rational, Rational)> {
    (0..20i64).map(|t| (rat(2 * t + 3, 5), rat(7 - 2 * t, 4), rat(t + 2, t + 7))).collect()
}

fn xu01_sample(e: &Enumerator, b: usize) -> Outcome {
    let points = xu01_points();
    for n in 1..=b {
        let lhs_t = e.tally_perms(n + 1, |_, s| [s.val, s.dasc, s.ddes, s.lrmax - 1, s.rlmax - 1])?;
        let pq = build_by_recurrence(FamilyId::PQ, n, None)?;
        for (idx, (x, y, u3)) in points.iter().enumerate() {
            let u4 = &(x + y) - u3;
            let c = |r: &Rational| Poly::constant(r.clone());
            let lhs = weigh(&lhs_t, &[c(&(x * y)), c(u3), c(&u4), v("alpha"), v("beta")]);
            let num = &(&v("alpha") * &c(u3)) + &(&v("beta") * &c(&u4));
            let rhs = pq_specialize(&pq, &c(x), &c(y), &num, &poly("alpha + beta"));
            eq(format_args!("n={n}, point {idx} (x={x}, y={y}, u3={u3})"), &lhs, &rhs)?;
        }
    }
    ok(["(p, q) identified with (alpha, beta); alpha and beta kept symbolic".to_string()])
}

// ---------------------------------------------------------------------------
// classical sanity identities

fn eulerian_stats(e: &Enumerator, b: usize) -> Outcome {
    for n in 1..=b {
        let t = e.tally_perms(n, |_, s| [s.des, s.asc, s.exc + 1, s.drop + 1])?;
        let a = eulerian(n)?;
        let x = v("x");
        let one = int(1);
        let weights = [
            ("des", [x.clone(), one.clone(), one.clone(), one.clone()]),
            ("asc", [one.clone(), x.clone(), one.clone(), one.clone()]),
        ];
        for (name, w) in weights {
            eq(format_args!("n={n}, {name}"), &weigh(&t, &w), &a)?;
        }
        eq(format_args!("n={n}, exc+1"), &weigh(&t, &[one.clone(), one.clone(), x.clone(), one.clone()]), &a)?;
        eq(format_args!("n={n}, drop+1"), &weigh(&t, &[one.clone(), one.clone(), one.clone(), x.clone()]), &a)?;
    }
    ok([])
}

fn stirling_cyc_lrmin(e: &Enumerator, b: usize) -> Outcome {
    let x = Var::new("x");
    for n in 1..=b {
        let t = e.tally_perms(n, |_, s| [s.cyc, s.lrmin])?;
        let r: Poly = rising_product(&x, 0, 1, n);
        eq(format_args!("n={n}, cyc"), &weigh(&t, &[v("x"), int(1)]), &r)?;
        eq(format_args!("n={n}, lrmin"), &weigh(&t, &[int(1), v("x")]), &r)?;
    }
    ok([])
}

fn word_minima(e: &Enumerator, b: usize) -> Outcome {
    let q = Var::new("q");
    for k in 1..=3usize {
        for n in 1..=b {
            let t = e.tally_words(n, k, |_, s| [s.lrmin, s.rlmin])?;
            let r: Poly = rising_product(&q, 0, k as i64, n);
            eq(format_args!("k={k}, n={n}, lrmin"), &weigh(&t, &[v("q"), int(1)]), &r)?;
            eq(format_args!("k={k}, n={n}, rlmin"), &weigh(&t, &[int(1), v("q")]), &r)?;
        }
    }
    ok([])
}

/// `P_n = n x P_{n-1} + 2x(1-x) P'_{n-1}`, `P_0 = 1`.
fn peak_recurrence(n: usize) -> Poly {
    let x = v("x");
    let d = poly("2*x - 2*x^2");
    (1..=n).fold(int(1), |p, m| &(&x.scale(&Rational::from(m as i64)) * &p) + &(&d * &p.partial_derive(&Var::new("x"))))
}

fn peak_count(e: &Enumerator, b: usize) -> Outcome {
    for n in 1..=b {
        let lhs = weigh(&e.tally_perms(n, |_, s| [s.pk])?, &[v("x")]);
        eq(format_args!("n={n}"), &lhs, &peak_recurrence(n))?;
    }
    ok([])
}

// ---------------------------------------------------------------------------

macro_rules! check {
    ($id:literal, $bound:expr, $f:ident, $claim:literal) => {
        IdentityCheck { id: $id, claim: $claim, default_bound: $bound, sampling: None, checker: $f }
    };
}

static REGISTRY: &[IdentityCheck] = &[
    check!("ankap-both", 6, ankap_both, "sum over Q_n^(k) of x^ap is A_n^(k)(x) and x^lap gives x^n A_n^(k)(1/x), k <= 3"),
    check!("exc-cyc-Ak", 7, exc_cyc_ak, "A_n^(k)(x) = sum over S_n of x^exc k^(n-cyc), symbolic k"),
    check!("dumont", 8, dumont, "D^n(a) = D^n(b) = b^(n+1) A_n(a/b) for a -> ab, b -> ab"),
    check!("ank-grammar", 6, ank_grammar, "D^n(a) = a b^(kn) A_n^(k)(a^k/b^k) for a -> a b^k, b -> a^k b"),
    check!("lemmacycle", 7, lemmacycle, "D^n(I) = I sum over S_n of x^exc y^drop p^fix q^cyc"),
    check!("keylemma", 7, keylemma, "D^n(I) = I sum over S_n of x^exc y^drop p^fix q^(n-cyc)"),
    check!("lemmaJi", 6, lemma_ji, "D^n(ab) = ab sum over S_(n+1) of x^asc* y^des* alpha^(lrmax-1) beta^(rlmax-1)"),
    check!("lemmaap", 6, lemmaap, "D^n(I) = I sum over Q_n of x^implap y^plap z^(n-lap)"),
    check!("lemmaapp", 5, lemmaapp, "D^n(I) = I sum over Q_n^(k) of x^implap y^plap z^(n-lap), k <= 3"),
    check!("lapap", 6, lapap, "the lap/ap grammar specializes to sum over Q_n of x^lap y^ap"),
    check!("lemma1", 5, lemma1, "D^n(I) = I sum over Q_n^(k) of x^ap2 q^lrmin y^(kn-2ap2), k in {2,3}"),
    check!("G3", 6, g3, "D^n(IJ) = IJ sum over S_(n+1) of x1^impdes x2^pdes y1^impasc y2^pasc p^(lrmin-1) q^(rlmin-1)"),
    check!("convo-2n", 8, convo_2n, "2^n A_n(x) = sum_i C(n,i) N_i(x) N_(n-i)(x)"),
    check!("convo-typeB", 7, convo_type_b, "B_n(x) = sum_i C(n,i) M_i(x) N_(n-i)(x)"),
    check!("thm1-reconstruct", 8, thm1_reconstruct, "A_(n+1)^(k) = sum gamma_(n,i,j)(k) (1+kx)^i x^j (1+x)^(n-i-2j), gamma in N[k]"),
    check!("zeta-gamma", 6, zeta_gamma, "2^j zeta_(n,i,j) = gamma_(n,i,j)(2)"),
    check!("ank-bigamma", 7, ank_bigamma, "A_n^(k)(x) is bi-gamma-positive for k <= 3"),
    check!("thmab", 6, thmab, "A_n(x,y|alpha,beta) = sum over S_n of x^exc y^drop (alpha x + beta y)^fix (alpha+beta)^(cyc-fix)"),
    check!("thmproper", 6, thmproper, "sum over Q_n of x^implap y^plap = sum over S_n of x^exc y^fix 2^(n-cyc)"),
    check!("thm17", 5, thm17, "sum over Q_n^(k) of x^implap y^plap = sum over S_n of x^exc y^fix k^(n-cyc), k <= 3"),
    check!("thm24", 6, thm24, "six-variable enumerator over S_(n+1) = A_n(x1, y1, (p x2 + q y2)/(p+q), p+q)"),
    check!("cor20-cases", 6, cor20_cases, "specializations of the six-variable identity, including y = -x giving sum over derangements of 2^cyc"),
    check!("aug-sym", 7, aug_sym, "(impasc_hat, des*, pasc_hat, rlmin) ~ (exc, drop, fix, cyc) on S_n, symmetric in the first two"),
    check!("final-cor", 6, final_cor, "A_n(x,y,w,p+q) = sum over S_n of x^impasc_hat y^des* w^pasc_hat (p+q)^rlmin = six-variable form"),
    check!("xieta-expansion", 6, xieta_expansion, "P_(n+1)(x,y) from the xi/eta expansion, with the sigma_1 = sigma_2 split"),
    check!("fg-Mq", 8, fg_mq, "M_n(x,q) expansion in f/g, nonnegativity and bi-gamma at sampled q, 2^n A_n(x) = x^n M_n(1/x, 2)"),
    check!("ab-decomp", 7, ab_decomp_check, "symmetric decomposition of M_n(x) obeys the (a_n, b_n) recurrence"),
    check!("egf-savage", 8, egf_savage, "EGF of A_n^(k)(x) to order 8, k <= 3"),
    check!("egf-ksavrelof-zeng", 8, egf_ksavrelof_zeng, "EGF of A_n(x, 1, p, q) to order 8, q <= 3"),
    check!("egf-four-variable", 8, egf_four_variable, "EGF of A_n(x, y, p, q) to order 8, q <= 2"),
    check!("egf-carlitz", 8, egf_carlitz, "EGF of A_n(x, y|alpha, beta) to order 8"),
    check!("operator-Ank", 5, operator_ank, "(kx d/dx + 1)^n (1-x)^(-1/k) = A_n^(k)(x) (1-x)^(-n-1/k) and the unshifted form with x^n A_n^(k)(1/x), to order x^10"),
    IdentityCheck {
        id: "xu01-sample",
        claim: "sum over S_(n+1) of (u1 u2)^val u3^dasc u4^ddes alpha^(lrmax-1) beta^(rlmax-1) = A_n(x, y, (alpha u3 + beta u4)/(alpha+beta), alpha+beta) when xy = u1 u2, x+y = u3+u4",
        default_bound: 5,
        sampling: Some("20 rational points (x, y, u3) on xy = u1 u2, x + y = u3 + u4 with u2 = 1; both sides exact in alpha, beta; degree in the sampled variables is at most n+1 <= 6"),
        checker: xu01_sample,
    },
    check!("eulerian-stats", 8, eulerian_stats, "des, asc (with the zero boundary), exc+1 and drop+1 are Eulerian on S_n"),
    check!("stirling-cyc-lrmin", 7, stirling_cyc_lrmin, "sum over S_n of x^cyc = sum of x^lrmin = x(x+1)...(x+n-1)"),
    check!("word-minima", 5, word_minima, "sum over Q_n^(k) of q^lrmin = q^rlmin = q(q+k)...(q+(n-1)k)"),
    check!("peak-count", 8, peak_count, "sum over S_n of x^pk = P_n with P_n = n x P_(n-1) + 2x(1-x) P'_(n-1)"),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique_and_sorted_lookup() {
        let mut seen: Vec<_> = ids().collect();
        let len = seen.len();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), len);
        assert!(lookup("nope").is_err());
    }

    #[test]
    fn small_examples() {
        for (id, b) in [("thmproper", 2), ("thm24", 1), ("convo-typeB", 3)] {
            let r = run_identity(id, Some(b)).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn thmproper_at_two() {
        let e = Enumerator::default();
        let lhs = weigh(&e.tally_words(2, 2, |_, s| [s.implap, s.plap]).unwrap(), &vs(["x", "y"]));
        assert_eq!(lhs, poly("y^2 + 2*x"));
    }

    #[test]
    fn thm24_at_one() {
        let e = Enumerator::default();
        let t = e.tally_perms(2, |_, s| [s.impdes, s.pdes, s.impasc, s.pasc, s.lrmin - 1, s.rlmin - 1]).unwrap();
        assert_eq!(weigh(&t, &vs(["x1", "x2", "y1", "y2", "p", "q"])), poly("p*x2 + q*y2"));
    }

    #[test]
    fn xu01_points_generic() {
        for (x, y, u3) in xu01_points() {
            let u4 = &(&x + &y) - &u3;
            for r in [&x * &y, u3.clone(), u4] {
                assert!(r != Rational::from(0) && r != Rational::from(1));
            }
        }
    }

    #[test]
    fn peak_recurrence_small() {
        assert_eq!(peak_recurrence(1), poly("x"));
        assert_eq!(peak_recurrence(2), poly("2*x"));
        assert_eq!(peak_recurrence(3), poly("4*x + 2*x^2"));
    }

    #[test]
    fn unit_bound_fast() {
        let r = run_all(&RunOptions { bound: Some(1), ..Default::default() });
        assert!(all_passed(&r), "{}", r.iter().filter(|r| !r.passed).map(|r| r.to_string()).collect::<Vec<_>>().join("\n"));
    }

    #[test]
    fn mutation_is_caught() {
        use crate::stats::{Mutation, PermField};
        let e = Enumerator::default().with_mutation(Some(Mutation::Perm(PermField::Pasc)));
        let r = run_identity_with(&e, "thm24", Some(3)).unwrap();
        assert!(!r.passed && r.counterexample.is_some());
    }

    #[test]
    fn reports_reproducible() {
        let a = run_identity("fg-Mq", Some(3)).unwrap();
        let b = run_identity("fg-Mq", Some(3)).unwrap();
        assert!(a.same_outcome(&b));
    }
}
