//! The polynomial families, each reachable by exhaustive enumeration, by
//! iterating its recurrence, or by a grammar derivation, plus the
//! coefficient arrays defined by the auxiliary recurrences.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::combgen::{gen_signed_perms, gen_stirling, for_each_perm, GenError, Limits};
use crate::exactpoly::{bindings, Monomial, Var};
use crate::grammar;
use crate::stats::{
    perm_stats_with, signed_stats_with, stirling_stats_with, Mutation, PermStatRecord, SignedStatRecord,
    StirlingStatRecord,
};
use crate::{poly, Poly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    A,
    B,
    M,
    N,
    Ak,
    PQ,
    AlphaBeta,
    Pxy,
    Mq,
    GammaK,
    ZetaK2,
    XiEta,
    FG,
    ABdecomp,
    Fn,
    Ank,
}

impl FamilyId {
    pub const ALL: &'static [FamilyId] = &[
        FamilyId::A,
        FamilyId::B,
        FamilyId::M,
        FamilyId::N,
        FamilyId::Ak,
        FamilyId::PQ,
        FamilyId::AlphaBeta,
        FamilyId::Pxy,
        FamilyId::Mq,
        FamilyId::GammaK,
        FamilyId::ZetaK2,
        FamilyId::XiEta,
        FamilyId::FG,
        FamilyId::ABdecomp,
        FamilyId::Fn,
        FamilyId::Ank,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyId::A => "A",
            FamilyId::B => "B",
            FamilyId::M => "M",
            FamilyId::N => "N",
            FamilyId::Ak => "Ak",
            FamilyId::PQ => "PQ",
            FamilyId::AlphaBeta => "AlphaBeta",
            FamilyId::Pxy => "Pxy",
            FamilyId::Mq => "Mq",
            FamilyId::GammaK => "GammaK",
            FamilyId::ZetaK2 => "ZetaK2",
            FamilyId::XiEta => "XiEta",
            FamilyId::FG => "FG",
            FamilyId::ABdecomp => "ABdecomp",
            FamilyId::Fn => "Fn",
            FamilyId::Ank => "ank",
        }
    }

    /// Families whose value is an indexed coefficient array rather than one polynomial.
    pub fn is_table(self) -> bool {
        matches!(
            self,
            FamilyId::GammaK
                | FamilyId::ZetaK2
                | FamilyId::XiEta
                | FamilyId::FG
                | FamilyId::ABdecomp
                | FamilyId::Fn
                | FamilyId::Ank
        )
    }

    pub fn routes(self) -> &'static [Route] {
        use Route::*;
        match self {
            FamilyId::A | FamilyId::M | FamilyId::N | FamilyId::Ak => &[Enumeration, Recurrence, Grammar],
            FamilyId::PQ | FamilyId::AlphaBeta | FamilyId::Pxy | FamilyId::Mq => &[Enumeration, Recurrence, Grammar],
            FamilyId::B => &[Enumeration, Recurrence],
            FamilyId::Fn => &[Recurrence],
            _ => &[],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        FamilyId::ALL
            .iter()
            .copied()
            .find(|f| f.tag() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    Enumeration,
    Recurrence,
    Grammar,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Enumeration => "enum",
            Route::Recurrence => "rec",
            Route::Grammar => "grammar",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        match s {
            "enum" => Ok(Route::Enumeration),
            "rec" => Ok(Route::Recurrence),
            "grammar" => Ok(Route::Grammar),
            _ => Err(FamilyError::Invalid(format!("unknown route `{s}` (expected enum, rec or grammar)"))),
        }
    }
}

/// The parameter `k` of the 1/k-Eulerian family: a positive integer or the letter `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KParam {
    Int(i64),
    Symbolic,
}

impl KParam {
    pub fn as_poly(&self) -> Poly {
        match self {
            KParam::Int(k) => Poly::from_i64(*k),
            KParam::Symbolic => Poly::var("k"),
        }
    }
}

impl fmt::Display for KParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KParam::Int(k) => write!(f, "{k}"),
            KParam::Symbolic => f.write_str("k"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error(transparent)]
    Guard(#[from] GenError),
    #[error("family {0} needs a value for k")]
    NeedsK(FamilyId),
    #[error("family {family} has no {route} route")]
    NoRoute { family: FamilyId, route: Route },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{0}")]
    Invalid(String),
}

/// Enumeration context: generator guards plus an optional corrupted statistic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Enumerator {
    pub limits: Limits,
    pub mutation: Option<Mutation>,
}

/// Multiset of exponent vectors collected over an object set.
pub type Tally<const D: usize> = HashMap<[u32; D], u64>;

impl Enumerator {
    pub fn new(limits: Limits) -> Self {
        Enumerator { limits, mutation: None }
    }

    pub fn with_mutation(mut self, mutation: Option<Mutation>) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn perm_stats(&self, pi: &[usize]) -> PermStatRecord {
        perm_stats_with(pi, self.mutation)
    }

    pub fn stirling_stats(&self, w: &[usize], k: usize) -> StirlingStatRecord {
        stirling_stats_with(w, k, self.mutation)
    }

    pub fn signed_stats(&self, s: &[i64]) -> SignedStatRecord {
        signed_stats_with(s, self.mutation)
    }

    pub fn tally_perms<const D: usize>(
        &self,
        n: usize,
        f: impl Fn(&[usize], &PermStatRecord) -> [u32; D],
    ) -> Result<Tally<D>, GenError> {
        let mut t = Tally::new();
        for_each_perm(n, &self.limits, |pi| {
            *t.entry(f(pi, &self.perm_stats(pi))).or_insert(0) += 1;
        })?;
        Ok(t)
    }

    pub fn tally_words<const D: usize>(
        &self,
        n: usize,
        k: usize,
        f: impl Fn(&[usize], &StirlingStatRecord) -> [u32; D],
    ) -> Result<Tally<D>, GenError> {
        let mut t = Tally::new();
        for w in gen_stirling(n, k, &self.limits)? {
            let s = self.stirling_stats(w.as_slice(), k);
            *t.entry(f(w.as_slice(), &s)).or_insert(0) += 1;
        }
        Ok(t)
    }

    pub fn tally_signed<const D: usize>(
        &self,
        n: usize,
        f: impl Fn(&SignedStatRecord) -> [u32; D],
    ) -> Result<Tally<D>, GenError> {
        let mut t = Tally::new();
        for s in gen_signed_perms(n, &self.limits)? {
            *t.entry(f(&self.signed_stats(s.as_slice()))).or_insert(0) += 1;
        }
        Ok(t)
    }
}

/// `sum over the tally of count * prod_d factors[d]^e_d`.
pub fn weigh<const D: usize>(tally: &Tally<D>, factors: &[Poly; D]) -> Poly {
    let mut powers: Vec<Vec<Poly>> = factors.iter().map(|f| vec![Poly::one(), f.clone()]).collect();
    let mut keys: Vec<&[u32; D]> = tally.keys().collect();
    keys.sort();
    let mut out = Poly::zero();
    for exps in keys {
        let mut term = Poly::from_i64(tally[exps] as i64);
        for d in 0..D {
            let e = exps[d] as usize;
            while powers[d].len() <= e {
                let next = &powers[d][powers[d].len() - 1] * &factors[d];
                powers[d].push(next);
            }
            term = &term * &powers[d][e];
        }
        out += &term;
    }
    out
}

fn x() -> Poly {
    Poly::var("x")
}

fn vars<const D: usize>(names: [&str; D]) -> [Poly; D] {
    names.map(Poly::var)
}

/// `a * p + b * dp/dx` in the variable `x`.
fn lin_step(p: &Poly, a: &Poly, b: &Poly) -> Poly {
    &(a * p) + &(b * &p.partial_derive(&Var::new("x")))
}

fn k_value(f: FamilyId, k: Option<KParam>) -> Result<KParam, FamilyError> {
    match k {
        Some(KParam::Int(v)) if v < 1 => Err(FamilyError::Invalid(format!("k must be a positive integer, got {v}"))),
        Some(k) => Ok(k),
        None => Err(FamilyError::NeedsK(f)),
    }
}

fn no_route(family: FamilyId, route: Route) -> FamilyError {
    FamilyError::NoRoute { family, route }
}

/// Exact enumerator of the family's defining object set.
pub fn build_by_enumeration(f: FamilyId, n: usize, k: Option<KParam>) -> Result<Poly, FamilyError> {
    build_by_enumeration_with(&Enumerator::default(), f, n, k)
}

pub fn build_by_enumeration_with(e: &Enumerator, f: FamilyId, n: usize, k: Option<KParam>) -> Result<Poly, FamilyError> {
    let t = match f {
        FamilyId::A => weigh(&e.tally_perms(n, |_, s| [s.des])?, &[x()]),
        FamilyId::B => weigh(&e.tally_signed(n, |s| [s.des_b])?, &[x()]),
        FamilyId::M => weigh(&e.tally_words(n, 2, |_, s| [s.ap])?, &[x()]),
        FamilyId::N => weigh(&e.tally_words(n, 2, |_, s| [s.lap])?, &[x()]),
        FamilyId::Ak => match k_value(f, k)? {
            KParam::Int(k) => weigh(&e.tally_words(n, k as usize, |_, s| [s.ap])?, &[x()]),
            KParam::Symbolic => {
                let n32 = n as u32;
                weigh(&e.tally_perms(n, |_, s| [s.exc, n32 - s.cyc])?, &vars(["x", "k"]))
            }
        },
        FamilyId::PQ => weigh(&e.tally_perms(n, |_, s| [s.exc, s.drop, s.fix, s.cyc])?, &vars(["x", "y", "p", "q"])),
        FamilyId::AlphaBeta => weigh(
            &e.tally_perms(n + 1, |_, s| [s.asc_star, s.des_star, s.lrmax - 1, s.rlmax - 1])?,
            &vars(["x", "y", "alpha", "beta"]),
        ),
        FamilyId::Pxy => weigh(&e.tally_words(n, 2, |_, s| [s.lap, s.ap])?, &vars(["x", "y"])),
        FamilyId::Mq => weigh(&e.tally_words(n, 2, |_, s| [s.ap, s.lrmin])?, &vars(["x", "q"])),
        _ => return Err(no_route(f, Route::Enumeration)),
    };
    Ok(t)
}

/// Iterates the family's recurrence from its initial value.
pub fn build_by_recurrence(f: FamilyId, n: usize, k: Option<KParam>) -> Result<Poly, FamilyError> {
    let one = Poly::one();
    let x = x();
    let omx = &one - &x;
    let iterate = |a: &dyn Fn(usize) -> Poly, b: &Poly| {
        (0..n).fold(Poly::one(), |p, m| lin_step(&p, &a(m), b))
    };
    Ok(match f {
        FamilyId::A => iterate(&|m| x.scale(&Rational::from(m as i64 + 1)), &(&x * &omx)),
        FamilyId::B => {
            iterate(&|m| &x.scale(&Rational::from(2 * m as i64 + 1)) + &one, &(&x * &omx).scale(&Rational::from(2)))
        }
        FamilyId::M => iterate(&|m| &x.scale(&Rational::from(2 * m as i64)) + &one, &(&x * &omx).scale(&Rational::from(2))),
        FamilyId::N => iterate(&|m| x.scale(&Rational::from(2 * m as i64 + 1)), &(&x * &omx).scale(&Rational::from(2))),
        FamilyId::Ak => ak_recurrence(n, &k_value(f, k)?),
        FamilyId::PQ => pq_recurrence(n),
        FamilyId::AlphaBeta => alpha_beta_recurrence(n),
        FamilyId::Pxy => pxy_from_xi_eta(n, CrossTerm::Shifted),
        FamilyId::Mq => mq_from_fg(n),
        FamilyId::Fn => fn_poly(n),
        _ => return Err(no_route(f, Route::Recurrence)),
    })
}

/// `A_{n+1} = (n k x + 1) A_n + k x (1 - x) A_n'`, starting from `A_0 = A_1 = 1`.
pub fn ak_recurrence(n: usize, k: &KParam) -> Poly {
    let kp = k.as_poly();
    let x = x();
    let b = &(&kp * &x) * &(&Poly::one() - &x);
    (1..n.max(1)).fold(Poly::one(), |p, m| {
        let a = &(&kp * &x).scale(&Rational::from(m as i64)) + &Poly::one();
        lin_step(&p, &a, &b)
    })
}

/// `A_{n+1} = pq A_n + xy (d/dp + d/dx + d/dy) A_n`.
fn pq_recurrence(n: usize) -> Poly {
    let pq = poly("p*q");
    let xy = poly("x*y");
    let dvars = [Var::new("p"), Var::new("x"), Var::new("y")];
    (0..n).fold(Poly::one(), |a, _| {
        let mut d = Poly::zero();
        for v in &dvars {
            d += &a.partial_derive(v);
        }
        &(&pq * &a) + &(&xy * &d)
    })
}

/// `f_{n+1} = J f_n + (alpha+beta) xy df/dJ + xy (df/dx + df/dy)`, then `J = alpha x + beta y`.
fn alpha_beta_recurrence(n: usize) -> Poly {
    let j = Poly::var("J");
    let ab_xy = poly("(alpha + beta)*x*y");
    let xy = poly("x*y");
    let (vj, vx, vy) = (Var::new("J"), Var::new("x"), Var::new("y"));
    let f = (0..n).fold(Poly::one(), |f, _| {
        let mut d = &ab_xy * &f.partial_derive(&vj);
        d += &(&xy * &(&f.partial_derive(&vx) + &f.partial_derive(&vy)));
        &(&j * &f) + &d
    });
    f.substitute(&bindings([("J", poly("alpha*x + beta*y"))]))
}

/// Derivation through the family's grammar, followed by its specialization.
pub fn build_by_grammar(f: FamilyId, n: usize, k: Option<KParam>) -> Result<Poly, FamilyError> {
    let g = |name: &str| grammar::builtin(name).expect("grammar ships with the crate");
    let one = Poly::one;
    Ok(match f {
        FamilyId::A => {
            if n == 0 {
                return Ok(one());
            }
            g("dumont").derive_then_substitute(&poly("a"), n, &bindings([("a", x()), ("b", one())]))
        }
        FamilyId::M => g("lemmaap")
            .derive_then_substitute(&poly("I"), n, &bindings([("I", one()), ("x", one()), ("y", one()), ("z", x())])),
        FamilyId::N => {
            g("lemmaap").derive_then_substitute(&poly("I"), n, &bindings([("I", one()), ("y", x()), ("z", one())]))
        }
        FamilyId::Ak => match k_value(f, k)? {
            KParam::Int(k) => ank_grammar_extract(&grammar::ank(k as u32).derive_n(&poly("a"), n), k as u32),
            KParam::Symbolic => g("thm1").derive_then_substitute(
                &poly("a"),
                n,
                &bindings([("a", one()), ("beta", one()), ("alpha", x())]),
            ),
        },
        FamilyId::PQ => g("lemmacycle").derive_then_substitute(&poly("I"), n, &bindings([("I", one())])),
        FamilyId::AlphaBeta => {
            g("lemmaJi").derive_then_substitute(&poly("a*b"), n, &bindings([("a", one()), ("b", one())]))
        }
        FamilyId::Pxy => g("lapap").derive_then_substitute(
            &poly("I"),
            n,
            &bindings([("I", one()), ("J", x()), ("x", poly("x*y")), ("z", one())]),
        ),
        FamilyId::Mq => grammar::lemma1(2).derive_then_substitute(&poly("I"), n, &bindings([("I", one()), ("y", one())])),
        _ => return Err(no_route(f, Route::Grammar)),
    })
}

/// Reads `A_n^{(k)}` off `D^n(a) = a b^{kn} A_n^{(k)}(a^k / b^k)`.
fn ank_grammar_extract(d: &Poly, k: u32) -> Poly {
    let (a, x) = (Var::new("a"), Var::new("x"));
    Poly::from_terms(d.terms().map(|(m, c)| {
        let j = (m.exponent(&a) - 1) / k;
        (Monomial::var(x.clone(), j), c.clone())
    }))
}

pub fn build(route: Route, f: FamilyId, n: usize, k: Option<KParam>) -> Result<Poly, FamilyError> {
    match route {
        Route::Enumeration => build_by_enumeration(f, n, k),
        Route::Recurrence => build_by_recurrence(f, n, k),
        Route::Grammar => build_by_grammar(f, n, k),
    }
}

/// Sparse coefficient array; reads outside the support give 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub family: FamilyId,
    pub n: usize,
    entries: BTreeMap<(&'static str, usize, usize), Poly>,
}

impl CoeffTable {
    fn new(family: FamilyId, n: usize) -> Self {
        CoeffTable { family, n, entries: BTreeMap::new() }
    }

    fn put(&mut self, part: &'static str, i: usize, j: usize, v: Poly) {
        if !v.is_zero() {
            self.entries.insert((part, i, j), v);
        }
    }

    fn put_coeffs(&mut self, part: &'static str, p: &Poly) {
        for (i, c) in p.coeffs_in(&Var::new("x")).into_iter().enumerate() {
            self.put(part, i, 0, c);
        }
    }

    pub fn get(&self, part: &str, i: usize, j: usize) -> Poly {
        self.entries
            .iter()
            .find(|((p, a, b), _)| *p == part && *a == i && *b == j)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Poly::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&'static str, usize, usize, &Poly)> {
        self.entries.iter().map(|((p, i, j), v)| (*p, *i, *j, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for CoeffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, i, j, v) in self.entries() {
            writeln!(f, "{p}[{},{i},{j}] = {v}", self.n)?;
        }
        Ok(())
    }
}

/// The recurrence-defined arrays. Parts: `gamma`, `zeta`, `xi`/`eta`, `f`/`g`,
/// `a` (for `ank`), `a`/`b` coefficients (ABdecomp) and `F` coefficients (Fn).
pub fn coeff_table(f: FamilyId, n: usize, k: Option<KParam>) -> Result<CoeffTable, FamilyError> {
    if n == 0 {
        return Err(FamilyError::Invalid("coefficient tables start at n = 1".into()));
    }
    let mut t = CoeffTable::new(f, n);
    match f {
        FamilyId::GammaK => {
            for ((i, j), v) in gamma_table(n, &k.unwrap_or(KParam::Symbolic)) {
                t.put("gamma", i, j, v);
            }
        }
        FamilyId::ZetaK2 => {
            for ((i, j), v) in zeta_table(n) {
                t.put("zeta", i, j, v);
            }
        }
        FamilyId::XiEta => {
            let (xi, eta) = xi_eta(n, CrossTerm::Shifted);
            for (i, c) in xi.into_iter().enumerate() {
                t.put("xi", i, 0, Poly::constant(c));
            }
            for (j, c) in eta.into_iter().enumerate() {
                t.put("eta", j, 0, Poly::constant(c));
            }
        }
        FamilyId::FG => {
            let (fs, gs) = fg_table(n);
            for (i, v) in fs {
                t.put("f", i, 0, v);
            }
            for (i, v) in gs {
                t.put("g", i, 0, v);
            }
        }
        FamilyId::Ank => {
            for (k, c) in ank_numbers(n).into_iter().enumerate() {
                t.put("a", k, 0, Poly::constant(c));
            }
        }
        FamilyId::ABdecomp => {
            let (a, b) = ab_decomp(n);
            t.put_coeffs("a", &a);
            t.put_coeffs("b", &b);
        }
        FamilyId::Fn => t.put_coeffs("F", &fn_poly(n)),
        _ => return Err(FamilyError::Invalid(format!("{f} is not a coefficient-table family"))),
    }
    Ok(t)
}

/// One forward step of a two-index recurrence given in scatter form.
fn scatter<T: Clone + Zero>(
    cur: &BTreeMap<(usize, usize), T>,
    mut push: impl FnMut(&mut BTreeMap<(usize, usize), T>, usize, usize, &T),
) -> BTreeMap<(usize, usize), T> {
    let mut next = BTreeMap::new();
    for ((i, j), c) in cur {
        push(&mut next, *i, *j, c);
    }
    next.retain(|_, v: &mut T| !v.is_zero());
    next
}

fn bump(m: &mut BTreeMap<(usize, usize), Poly>, key: (usize, usize), v: Poly) {
    let e = m.entry(key).or_insert_with(Poly::zero);
    *e += &v;
}

/// `gamma_{n,i,j}(k)` from `gamma_{1,1,0} = 1` and
/// `gamma_{n+1,i,j} = gamma_{n,i-1,j} + (k+k^2)(i+1) gamma_{n,i+1,j-1} + kj gamma_{n,i,j} + 2k(n-i-2j+2) gamma_{n,i,j-1}`.
pub fn gamma_table(n: usize, k: &KParam) -> BTreeMap<(usize, usize), Poly> {
    let kp = k.as_poly();
    let kk = &kp + &(&kp * &kp);
    two_index(n, &kk, &kp, &kp.scale(&Rational::from(2)))
}

/// `zeta_{n,i,j}`: the `gamma` recurrence with `k+k^2 -> 3`, `kj -> 2j`, `2k -> 2`.
pub fn zeta_table(n: usize) -> BTreeMap<(usize, usize), Poly> {
    two_index(n, &Poly::from_i64(3), &Poly::from_i64(2), &Poly::from_i64(2))
}

fn two_index(n: usize, c_up: &Poly, c_diag: &Poly, c_side: &Poly) -> BTreeMap<(usize, usize), Poly> {
    let mut cur = BTreeMap::from([((1usize, 0usize), Poly::one())]);
    for m in 1..n {
        cur = scatter(&cur, |next, i, j, c| {
            bump(next, (i + 1, j), c.clone());
            if i >= 1 {
                bump(next, (i - 1, j + 1), (c_up * c).scale(&Rational::from(i as i64)));
            }
            bump(next, (i, j), (c_diag * c).scale(&Rational::from(j as i64)));
            // coefficient of gamma_{m,i,j} feeding (i, j+1): m - i - 2(j+1) + 2
            let w = m as i64 - i as i64 - 2 * j as i64;
            bump(next, (i, j + 1), (c_side * c).scale(&Rational::from(w)));
        });
    }
    cur
}

/// How the cross term of the `xi` line is indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossTerm {
    /// `xi_{n+1,i}` receives `eta_{n,i-1}`.
    Shifted,
    /// `xi_{n+1,i}` receives `eta_{n,i}`.
    Aligned,
}

/// `(xi_n, eta_n)` as coefficient vectors, from `xi_0 = 1`, `eta_0 = 0`
/// (equivalently `xi_{1,0} = eta_{1,0} = 1`).
pub fn xi_eta(n: usize, cross: CrossTerm) -> (Vec<Rational>, Vec<Rational>) {
    let at = |v: &[Rational], i: i64| if i < 0 { Rational::zero() } else { v.get(i as usize).cloned().unwrap_or_default() };
    let mut xi = vec![Rational::one()];
    let mut eta: Vec<Rational> = Vec::new();
    for m in 0..n as i64 {
        let len = (m as usize + 1) / 2 + 2;
        let nxi: Vec<Rational> = (0..len as i64)
            .map(|i| {
                let cross_idx = match cross {
                    CrossTerm::Shifted => i - 1,
                    CrossTerm::Aligned => i,
                };
                Rational::from(1 + 2 * i) * at(&xi, i)
                    + Rational::from(4 * (m - 2 * i + 2)) * at(&xi, i - 1)
                    + at(&eta, cross_idx)
            })
            .collect();
        let neta: Vec<Rational> = (0..len as i64)
            .map(|j| {
                Rational::from(2 + 2 * j) * at(&eta, j) + Rational::from(4 * (m - 2 * j + 1)) * at(&eta, j - 1) + at(&xi, j)
            })
            .collect();
        xi = trim(nxi);
        eta = trim(neta);
    }
    (xi, eta)
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn dense(v: &[Rational], var: &str) -> Poly {
    let var = Var::new(var);
    Poly::from_terms(v.iter().enumerate().map(|(i, c)| (Monomial::var(var.clone(), i as u32), c.clone())))
}

/// `xi_n(x)` and `eta_n(x)` as polynomials.
pub fn xi_eta_polys(n: usize) -> (Poly, Poly) {
    let (xi, eta) = xi_eta(n, CrossTerm::Shifted);
    (dense(&xi, "x"), dense(&eta, "x"))
}

/// `P_n(x,y)` reassembled from `(xi_{n-1}, eta_{n-1})`.
pub fn pxy_from_xi_eta(n: usize, cross: CrossTerm) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let m = n - 1;
    let (xi, eta) = xi_eta(m, cross);
    let u = poly("x*y");
    let v = poly("1 + x*y");
    let mut out = Poly::zero();
    for (i, c) in xi.iter().enumerate() {
        if m >= 2 * i {
            out += &(&u.pow(i as u32) * &v.pow((m - 2 * i) as u32)).scale(c);
        }
    }
    out = &x() * &out;
    let mut rest = Poly::zero();
    for (j, c) in eta.iter().enumerate() {
        if m >= 2 * j + 1 {
            rest += &(&u.pow(j as u32) * &v.pow((m - 1 - 2 * j) as u32)).scale(c);
        }
    }
    &out + &(&poly("x*y") * &rest)
}

/// `f_{n,i}(q)`, `g_{n,i}(q)` from `f_0 = 1`, `g_0 = 0`, i.e. `f_{1,0} = q`, `g_{1,0} = 2 - q`.
pub fn fg_table(n: usize) -> (BTreeMap<usize, Poly>, BTreeMap<usize, Poly>) {
    let q = Poly::var("q");
    let two_minus_q = &Poly::from_i64(2) - &q;
    let mut f = BTreeMap::from([(0usize, Poly::one())]);
    let mut g: BTreeMap<usize, Poly> = BTreeMap::new();
    let get = |m: &BTreeMap<usize, Poly>, i: i64| if i < 0 { Poly::zero() } else { m.get(&(i as usize)).cloned().unwrap_or_default() };
    for m in 0..n as i64 {
        let len = m / 2 + 2;
        let mut nf = BTreeMap::new();
        let mut ng = BTreeMap::new();
        for i in 0..len {
            let fi = &(&(&q + &Poly::from_i64(2 * i)) * &get(&f, i))
                + &(&get(&f, i - 1).scale(&Rational::from(4 * (m - 2 * i + 2))) + &(&q * &get(&g, i - 1)));
            let gi = &(&get(&g, i).scale(&Rational::from(2 + 2 * i))
                + &get(&g, i - 1).scale(&Rational::from(4 * (m - 2 * i + 1))))
                + &(&two_minus_q * &get(&f, i));
            if !fi.is_zero() {
                nf.insert(i as usize, fi);
            }
            if !gi.is_zero() {
                ng.insert(i as usize, gi);
            }
        }
        f = nf;
        g = ng;
    }
    (f, g)
}

/// `M_n(x,q) = sum_i q f_{n-1,i} x^i (1+x)^{n-1-2i} + x sum_j q g_{n-1,j} x^j (1+x)^{n-2-2j}`.
pub fn mq_from_fg(n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let m = n - 1;
    let (f, g) = fg_table(m);
    let q = Poly::var("q");
    let x = x();
    let opx = &Poly::one() + &x;
    let mut out = Poly::zero();
    for (i, c) in &f {
        if m >= 2 * i {
            out += &(&(&q * c) * &(&x.pow(*i as u32) * &opx.pow((m - 2 * i) as u32)));
        }
    }
    for (j, c) in &g {
        if m >= 2 * j + 1 {
            out += &(&(&q * c) * &(&x.pow(*j as u32 + 1) * &opx.pow((m - 1 - 2 * j) as u32)));
        }
    }
    out
}

/// `a(n,k)` for `k = 0..`, with `a(n,k) = k a(n-1,k) + (2n-4k+4) a(n-1,k-1)`, `a(1,1) = 1`.
pub fn ank_numbers(n: usize) -> Vec<Rational> {
    let mut cur = vec![Rational::zero(), Rational::one()];
    for m in 2..=n as i64 {
        let mut next = vec![Rational::zero(); cur.len() + 1];
        for (k, c) in cur.iter().enumerate() {
            let k = k as i64;
            next[k as usize] += &(&Rational::from(k) * c);
            next[k as usize + 1] += &(&Rational::from(2 * m - 4 * k) * c);
        }
        cur = trim(next);
    }
    cur
}

/// `(a_n, b_n)` from `a_1 = 1`, `b_1 = 0` and
/// `a_{n+1} = (1 + x + 2(n-1)x) a_n + 2x(1-x) a_n' + x b_n`,
/// `b_{n+1} = 2(1 + (n-1)x) b_n + 2x(1-x) b_n' + a_n`.
pub fn ab_decomp(n: usize) -> (Poly, Poly) {
    assert!(n >= 1, "ab_decomp starts at n = 1");
    let x = x();
    let one = Poly::one();
    let d = (&x * &(&one - &x)).scale(&Rational::from(2));
    let (mut a, mut b) = (Poly::one(), Poly::zero());
    for m in 1..n as i64 {
        let ca = &(&one + &x) + &x.scale(&Rational::from(2 * (m - 1)));
        let cb = (&one + &x.scale(&Rational::from(m - 1))).scale(&Rational::from(2));
        let na = &lin_step(&a, &ca, &d) + &(&x * &b);
        let nb = &lin_step(&b, &cb, &d) + &a;
        a = na;
        b = nb;
    }
    (a, b)
}

/// `F_{n+1} = (1 + x + 4n x^2) F_n + x (1 - 4x^2) F_n'`, `F_0 = 1`.
pub fn fn_poly(n: usize) -> Poly {
    let x = x();
    let b = &x * &poly("1 - 4*x^2");
    (0..n).fold(Poly::one(), |f, m| {
        let a = &(&Poly::one() + &x) + &x.pow(2).scale(&Rational::from(4 * m as i64));
        lin_step(&f, &a, &b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SYM: Option<KParam> = Some(KParam::Symbolic);

    #[test]
    fn enumeration_examples() {
        assert_eq!(build_by_enumeration(FamilyId::M, 3, None).unwrap(), poly("1 + 10*x + 4*x^2"));
        let pq = build_by_enumeration(FamilyId::PQ, 3, None).unwrap();
        let at_y1 = pq.substitute(&bindings([("y", Poly::one())]));
        assert_eq!(at_y1, poly("p^3*q^3 + (q + 3*p*q^2)*x + q*x^2"));
        assert_eq!(build_by_enumeration(FamilyId::Pxy, 2, None).unwrap(), poly("x + x*y + x^2*y"));
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(build_by_recurrence(FamilyId::Ak, 3, SYM).unwrap(), poly("(1 + k*x)^2 + (k + k^2)*x"));
        assert_eq!(build_by_recurrence(FamilyId::B, 2, None).unwrap(), poly("1 + 6*x + x^2"));
        assert_eq!(build_by_recurrence(FamilyId::N, 3, None).unwrap(), poly("4*x + 10*x^2 + x^3"));
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(
            build_by_grammar(FamilyId::AlphaBeta, 2, None).unwrap(),
            poly("(alpha*x + beta*y)^2 + (alpha + beta)*x*y")
        );
        assert_eq!(build_by_grammar(FamilyId::Mq, 3, None).unwrap(), poly("q^3 + 4*q*x + 6*q^2*x + 4*q*x^2"));
        assert_eq!(build_by_grammar(FamilyId::A, 3, None).unwrap(), poly("x + 4*x^2 + x^3"));
        assert!(matches!(build_by_grammar(FamilyId::B, 3, None), Err(FamilyError::NoRoute { .. })));
        assert!(matches!(build_by_grammar(FamilyId::Ak, 3, None), Err(FamilyError::NeedsK(_))));
    }

    #[test]
    fn b_oracle_by_hand() {
        // the 8 signed permutations of size 2 with des_B 0,1,1,1,1,1,1,2
        let mut counts = [0u32; 3];
        for s in gen_signed_perms(2, &Limits::default()).unwrap() {
            counts[crate::stats::signed_stats(s.as_slice()).des_b as usize] += 1;
        }
        assert_eq!(counts, [1, 6, 1]);
    }

    #[test]
    fn routes_agree_small() {
        for &f in &[FamilyId::A, FamilyId::B, FamilyId::M, FamilyId::N, FamilyId::PQ, FamilyId::AlphaBeta, FamilyId::Pxy, FamilyId::Mq] {
            for n in 0..=5 {
                let e = build_by_enumeration(f, n, None).unwrap();
                for &r in f.routes() {
                    assert_eq!(build(r, f, n, None).unwrap(), e, "{f} n={n} route {r}");
                }
            }
        }
        for k in [KParam::Int(1), KParam::Int(2), KParam::Int(3), KParam::Symbolic] {
            for n in 0..=5 {
                let e = build_by_enumeration(FamilyId::Ak, n, Some(k)).unwrap();
                for r in [Route::Recurrence, Route::Grammar] {
                    assert_eq!(build(r, FamilyId::Ak, n, Some(k)).unwrap(), e, "Ak k={k} n={n} route {r}");
                }
            }
        }
    }

    #[test]
    fn table_examples() {
        let g = coeff_table(FamilyId::GammaK, 2, None).unwrap();
        assert_eq!(g.get("gamma", 2, 0), Poly::one());
        assert_eq!(g.get("gamma", 0, 1), poly("k + k^2"));
        assert_eq!(g.len(), 2);
        assert!(g.get("gamma", 7, 7).is_zero());

        let (xi2, eta2) = xi_eta_polys(2);
        let (xi3, eta3) = xi_eta_polys(3);
        assert_eq!((xi2, eta2), (poly("1 + 5*x"), poly("3")));
        assert_eq!((xi3, eta3), (poly("1 + 26*x"), poly("7 + 17*x")));

        let fg = coeff_table(FamilyId::FG, 2, None).unwrap();
        assert_eq!(fg.get("f", 0, 0), poly("q^2"));
        assert_eq!(fg.get("f", 1, 0), poly("6*q - q^2"));
        assert_eq!(fg.get("g", 0, 0), poly("(2 - q)*(2 + q)"));

        assert_eq!(ank_numbers(3), vec![Rational::zero(), Rational::one(), Rational::from(2)]);
    }

    #[test]
    fn aligned_cross_term_breaks_expansion() {
        let e = build_by_enumeration(FamilyId::Pxy, 4, None).unwrap();
        assert_eq!(pxy_from_xi_eta(4, CrossTerm::Shifted), e);
        assert_ne!(pxy_from_xi_eta(4, CrossTerm::Aligned), e);
    }

    #[test]
    fn ak_at_one_and_reversal() {
        for n in 1..=8 {
            let a = build_by_recurrence(FamilyId::A, n, None).unwrap();
            assert_eq!(&x() * &ak_recurrence(n, &KParam::Int(1)), a);
        }
        for n in 0..=7 {
            let m = build_by_recurrence(FamilyId::M, n, None).unwrap();
            let nn = build_by_recurrence(FamilyId::N, n, None).unwrap();
            assert_eq!(m.reverse_in(&Var::new("x"), n as u32).unwrap(), nn);
        }
    }

    #[test]
    fn ab_and_f_relations() {
        for n in 1..=7 {
            let (a, b) = ab_decomp(n);
            assert_eq!(&a + &(&x() * &b), build_by_recurrence(FamilyId::M, n, None).unwrap());
        }
        assert_eq!(fn_poly(1), poly("1 + x"));
        for n in 0..=8 {
            let (xi, eta) = xi_eta_polys(n);
            let sq = bindings([("x", poly("x^2"))]);
            assert_eq!(fn_poly(n), &xi.substitute(&sq) + &(&x() * &eta.substitute(&sq)), "n={n}");
        }
    }
}
