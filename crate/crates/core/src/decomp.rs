//! Symmetric decompositions, gamma expansions, positivity predicates and the
//! partial gamma expansion of the 1/k-Eulerian polynomials.
//!
//! Polynomials are univariate in `x`; coefficients may carry other letters
//! (`q`, `k`) except where a predicate needs actual numbers.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exactpoly::Var;
use crate::families::{fg_table, gamma_table, KParam};
use crate::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompError {
    #[error("degree {degree} in x exceeds the reference degree {n}")]
    DegreeTooHigh { degree: u32, n: u32 },
    #[error("division of the {part} part by (1 - x) is not exact")]
    Inexact { part: &'static str },
    #[error("polynomial is not symmetric about degree {n}/2: {detail}")]
    NotSymmetric { n: u32, detail: String },
    #[error("coefficient of x^{power} is not a number: {coeff}")]
    Symbolic { power: usize, coeff: Poly },
}

fn xv() -> Var {
    Var::new("x")
}

fn x() -> Poly {
    Poly::var("x")
}

/// `(a, b)` with `f = a + x b`, `a` symmetric about `n/2` and `b` about `(n-1)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricDecomposition {
    pub a: Poly,
    pub b: Poly,
    pub n: u32,
}

/// Coefficients of `x^0..=x^n` as polynomials in the remaining letters.
fn coeffs_to(f: &Poly, n: u32) -> Result<Vec<Poly>, DecompError> {
    let mut c = f.coeffs_in(&xv());
    if c.len() > n as usize + 1 {
        return Err(DecompError::DegreeTooHigh { degree: c.len() as u32 - 1, n });
    }
    c.resize(n as usize + 1, Poly::zero());
    Ok(c)
}

/// Exact quotient by `1 - x`, or `None` when it leaves a remainder.
fn div_one_minus_x(g: &Poly) -> Option<Poly> {
    let c = g.coeffs_in(&xv());
    if c.is_empty() {
        return Some(Poly::zero());
    }
    // g = (1 - x) h  gives  h_i = g_i + h_{i-1}, and the top partial sum must vanish
    let mut h = Vec::with_capacity(c.len());
    let mut acc = Poly::zero();
    for ci in &c {
        acc += ci;
        h.push(acc.clone());
    }
    let last = h.pop().expect("nonempty");
    last.is_zero().then(|| Poly::from_coeffs_in(&xv(), &h))
}

pub fn symmetric_decompose(f: &Poly, n: u32) -> Result<SymmetricDecomposition, DecompError> {
    coeffs_to(f, n)?;
    let v = xv();
    let rev_n1 = f.reverse_in(&v, n + 1).expect("degree checked");
    let rev_n = f.reverse_in(&v, n).expect("degree checked");
    let a = div_one_minus_x(&(f - &rev_n1)).ok_or(DecompError::Inexact { part: "a" })?;
    let b = div_one_minus_x(&(&rev_n - f)).ok_or(DecompError::Inexact { part: "b" })?;
    Ok(SymmetricDecomposition { a, b, n })
}

/// `f_i = f_{n-i}` for all `i`, with `deg f <= n`.
pub fn is_symmetric(f: &Poly, n: u32) -> bool {
    match coeffs_to(f, n) {
        Ok(c) => (0..c.len()).all(|i| c[i] == c[c.len() - 1 - i]),
        Err(_) => false,
    }
}

/// `gammas[k]` multiplies `x^k (1+x)^{n-2k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaVector {
    pub gammas: Vec<Poly>,
    pub n: u32,
}

impl GammaVector {
    pub fn reconstruct(&self) -> Poly {
        let opx = &Poly::one() + &x();
        let mut out = Poly::zero();
        for (k, g) in self.gammas.iter().enumerate() {
            let basis = &x().pow(k as u32) * &opx.pow(self.n - 2 * k as u32);
            out += &(g * &basis);
        }
        out
    }
}

impl fmt::Display for GammaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gammas.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn gamma_expand(f: &Poly, n: u32) -> Result<GammaVector, DecompError> {
    let mut c = coeffs_to(f, n)?;
    if !is_symmetric(f, n) {
        let i = (0..c.len()).find(|&i| c[i] != c[c.len() - 1 - i]).unwrap_or(0);
        return Err(DecompError::NotSymmetric {
            n,
            detail: format!("x^{i} has {} but x^{} has {}", c[i], n as usize - i, c[n as usize - i]),
        });
    }
    let mut gammas = Vec::new();
    for k in 0..=(n / 2) as usize {
        let g = c[k].clone();
        // subtract g x^k (1+x)^{n-2k} from the working coefficients
        let m = n as usize - 2 * k;
        let mut binom = Rational::one();
        for t in 0..=m {
            c[k + t] -= &g.scale(&binom);
            binom = &(&binom * &Rational::from((m - t) as i64)) / &Rational::from(t as i64 + 1);
        }
        gammas.push(g);
    }
    debug_assert!(c.iter().all(Zero::is_zero));
    Ok(GammaVector { gammas, n })
}

/// Numeric coefficients `f_0..f_n`, refusing anything symbolic.
pub fn numeric_coeffs(f: &Poly, n: u32) -> Result<Vec<Rational>, DecompError> {
    coeffs_to(f, n)?
        .into_iter()
        .enumerate()
        .map(|(power, c)| c.as_constant().ok_or(DecompError::Symbolic { power, coeff: c }))
        .collect()
}

/// Weakly increasing then weakly decreasing.
pub fn is_unimodal(c: &[Rational]) -> bool {
    let mut falling = false;
    for w in c.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if falling && w[1] > w[0] {
            return false;
        }
    }
    true
}

/// `f_0 <= f_n <= f_1 <= f_{n-1} <= ...`.
pub fn is_alternatingly_increasing(c: &[Rational]) -> bool {
    let n = c.len();
    let mut order = Vec::with_capacity(n);
    let (mut lo, mut hi) = (0usize, n);
    while order.len() < n {
        order.push(lo);
        lo += 1;
        if order.len() < n {
            hi -= 1;
            order.push(hi);
        }
    }
    order.windows(2).all(|w| c[w[0]] <= c[w[1]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PositivityReport {
    pub symmetric: bool,
    pub unimodal: bool,
    pub gamma_positive: bool,
    pub alternatingly_increasing: bool,
    pub bi_gamma_positive: bool,
}

fn gamma_nonnegative(f: &Poly, n: u32) -> bool {
    match gamma_expand(f, n) {
        Ok(g) => g.gammas.iter().all(|c| c.as_constant().is_some_and(|v| !v.is_negative())),
        Err(_) => false,
    }
}

pub fn positivity_report(f: &Poly, n: u32) -> Result<PositivityReport, DecompError> {
    let c = numeric_coeffs(f, n)?;
    let symmetric = is_symmetric(f, n);
    let bi_gamma_positive = match symmetric_decompose(f, n) {
        Ok(d) => gamma_nonnegative(&d.a, n) && (n == 0 && d.b.is_zero() || n > 0 && gamma_nonnegative(&d.b, n - 1)),
        Err(_) => false,
    };
    Ok(PositivityReport {
        symmetric,
        unimodal: is_unimodal(&c),
        gamma_positive: symmetric && gamma_nonnegative(f, n),
        alternatingly_increasing: is_alternatingly_increasing(&c),
        bi_gamma_positive,
    })
}

/// `gamma_{n,i,j}(k)` keyed by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialGammaTable {
    pub n: usize,
    pub k: KParam,
    pub entries: BTreeMap<(usize, usize), Poly>,
}

impl PartialGammaTable {
    /// `sum_i (1+kx)^i sum_j gamma_{n,i,j} x^j (1+x)^{n-i-2j}`, which should be `A_{n+1}^{(k)}`.
    pub fn reconstruct(&self) -> Poly {
        let onekx = &Poly::one() + &(&self.k.as_poly() * &x());
        let opx = &Poly::one() + &x();
        let mut out = Poly::zero();
        for ((i, j), g) in &self.entries {
            let e = self.n - i - 2 * j;
            let basis = &(&onekx.pow(*i as u32) * &x().pow(*j as u32)) * &opx.pow(e as u32);
            out += &(g * &basis);
        }
        out
    }

    /// Every entry has nonnegative integer coefficients as a polynomial in `k`.
    pub fn nonnegative_integer(&self) -> bool {
        self.entries.values().all(|g| g.terms().all(|(_, c)| c.is_integer() && !c.is_negative()))
    }
}

pub fn partial_gamma(n: usize, k: KParam) -> PartialGammaTable {
    assert!(n >= 1, "partial gamma tables start at n = 1");
    PartialGammaTable { n, k, entries: gamma_table(n, &k) }
}

/// `q f_{n-1,i}(q)` and `q g_{n-1,j}(q)` evaluated at a number `q`.
pub fn mq_expansion_coeffs_at(n: usize, q: &Rational) -> (Vec<Rational>, Vec<Rational>) {
    assert!(n >= 1);
    let (f, g) = fg_table(n - 1);
    let at = |p: &Poly| {
        let qp = &Poly::var("q") * p;
        qp.eval(&BTreeMap::from([(Var::new("q"), q.clone())])).expect("only q occurs")
    };
    let dense = |m: &BTreeMap<usize, Poly>| {
        let len = m.keys().next_back().map_or(0, |k| k + 1);
        (0..len).map(|i| m.get(&i).map_or_else(Rational::zero, at)).collect()
    };
    (dense(&f), dense(&g))
}
