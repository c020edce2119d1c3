//! Truncated power series in one distinguished variable with polynomial
//! coefficients.
//!
//! EGF identities with fractional or symbolic exponents are never expanded
//! directly. Each one is cross-multiplied into a form whose exponents are
//! small nonnegative integers and checked coefficient by coefficient.

use std::fmt;

use num_traits::{One, Zero};

use crate::exactpoly::{Polynomial, Var};
use crate::rational::Rational;
use crate::scalar::FieldScalar;
use crate::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("{0}")]
    Precondition(String),
}

/// `coeffs[i]` is the coefficient of `z^i`; always `order + 1` entries.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<C> {
    var: Var,
    coeffs: Vec<Polynomial<C>>,
}

impl<C: FieldScalar> TruncSeries<C> {
    /// Series in the default variable `z`.
    pub fn new(coeffs: Vec<Polynomial<C>>) -> Self {
        Self::in_var(Var::new("z"), coeffs)
    }

    pub fn in_var(var: Var, coeffs: Vec<Polynomial<C>>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        TruncSeries { var, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Polynomial::zero(); order + 1])
    }

    pub fn constant(c: Polynomial<C>, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Polynomial::one(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn var(&self) -> &Var {
        &self.var
    }

    pub fn coeffs(&self) -> &[Polynomial<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Polynomial<C> {
        self.coeffs.get(i).cloned().unwrap_or_else(Polynomial::zero)
    }

    fn same_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncSeries { var: self.var.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncSeries { var: self.var.clone(), coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_order(other)?;
        let n = self.order();
        let mut coeffs = vec![Polynomial::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Ok(TruncSeries { var: self.var.clone(), coeffs })
    }

    pub fn scale(&self, c: &Polynomial<C>) -> Self {
        TruncSeries { var: self.var.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self).expect("orders agree");
        }
        acc
    }

    /// `exp(c z)` truncated at `z^order`.
    pub fn exp_poly(c: &Polynomial<C>, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Polynomial::<C>::one();
        coeffs.push(term.clone());
        for i in 1..=order {
            term = (&term * c).scale(&(C::one() / C::from_i64(i as i64)));
            coeffs.push(term.clone());
        }
        Self::new(coeffs)
    }

    /// `sum polys[n] z^n / n!`, truncated at the last supplied index.
    pub fn egf_of(polys: &[Polynomial<C>]) -> Self {
        let mut fact = C::one();
        let coeffs = polys
            .iter()
            .enumerate()
            .map(|(n, p)| {
                if n > 0 {
                    fact = fact.clone() * C::from_i64(n as i64);
                }
                p.scale(&(C::one() / fact.clone()))
            })
            .collect();
        Self::new(coeffs)
    }

    /// Index and both coefficients at the first place two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, Polynomial<C>, Polynomial<C>)> {
        (0..=self.order().max(other.order())).find_map(|i| {
            let (a, b) = (self.coeff(i), other.coeff(i));
            (a != b).then_some((i, a, b))
        })
    }
}

impl<C: FieldScalar> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let text = if c.num_terms() > 1 { format!("({c})") } else { c.to_string() };
            match i {
                0 => write!(f, "{text}")?,
                1 => write!(f, "{text}*{}", self.var)?,
                _ => write!(f, "{text}*{}^{i}", self.var)?,
            }
        }
        Ok(())
    }
}

impl<C: FieldScalar> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type Series = TruncSeries<Rational>;

fn v(name: &str) -> Poly {
    Poly::var(name)
}

fn exp_of(c: &Poly, order: usize) -> Series {
    Series::exp_poly(c, order)
}

/// Both sides of `egf(A^{(k)})^k * (exp(k(x-1)z) - x) = 1 - x`.
///
/// `a[n]` must hold `A_n^{(k)}(x)` for `n = 0..=order`.
pub fn savage_sides(a: &[Poly], k: u32) -> (Series, Series) {
    let order = a.len() - 1;
    let x = v("x");
    let kx1 = (&x - &Poly::one()).scale(&Rational::from(k as i64));
    let denom = exp_of(&kx1, order).sub(&Series::constant(x.clone(), order)).unwrap();
    let lhs = Series::egf_of(a).pow(k).mul(&denom).unwrap();
    (lhs, Series::constant(&Poly::one() - &x, order))
}

/// Both sides of `egf(A_n(x,1,p,q0)) * (e^{xz} - x e^{z})^{q0} = (1-x)^{q0} e^{q0 p z}`.
pub fn ksavrelof_zeng_sides(a: &[Poly], q0: u32) -> (Series, Series) {
    let order = a.len() - 1;
    let (x, p) = (v("x"), v("p"));
    let denom = exp_of(&x, order).sub(&exp_of(&Poly::one(), order).scale(&x)).unwrap();
    let lhs = Series::egf_of(a).mul(&denom.pow(q0)).unwrap();
    let rhs = exp_of(&p.scale(&Rational::from(q0 as i64)), order).scale(&(&Poly::one() - &x).pow(q0));
    (lhs, rhs)
}

/// Both sides of `egf(A_n(x,y,p,q0)) * (y e^{xz} - x e^{yz})^{q0} = (y-x)^{q0} e^{q0 p z}`.
pub fn four_variable_sides(a: &[Poly], q0: u32) -> (Series, Series) {
    let order = a.len() - 1;
    let (x, y, p) = (v("x"), v("y"), v("p"));
    let denom = exp_of(&x, order).scale(&y).sub(&exp_of(&y, order).scale(&x)).unwrap();
    let lhs = Series::egf_of(a).mul(&denom.pow(q0)).unwrap();
    let rhs = exp_of(&p.scale(&Rational::from(q0 as i64)), order).scale(&(&y - &x).pow(q0));
    (lhs, rhs)
}

/// Both sides of
/// `egf(A_n(x,y|a,b)) * (x e^{yz} - y e^{xz})^{a+b} = (x-y)^{a+b} e^{(a x + b y) z}`
/// at integer `a`, `b`.
pub fn carlitz_sides(a: &[Poly], alpha: u32, beta: u32) -> (Series, Series) {
    let order = a.len() - 1;
    let (x, y) = (v("x"), v("y"));
    let e = alpha + beta;
    let denom = exp_of(&y, order).scale(&x).sub(&exp_of(&x, order).scale(&y)).unwrap();
    let lhs = Series::egf_of(a).mul(&denom.pow(e)).unwrap();
    let rate = &x.scale(&Rational::from(alpha as i64)) + &y.scale(&Rational::from(beta as i64));
    let rhs = exp_of(&rate, order).scale(&(&x - &y).pow(e));
    (lhs, rhs)
}

/// Drops every term whose degree in `v` exceeds `order`.
pub fn truncate_in(p: &Poly, v: &Var, order: u32) -> Poly {
    Poly::from_terms(p.terms().filter(|(m, _)| m.exponent(v) <= order).map(|(m, c)| (m.clone(), c.clone())))
}

/// `sum_{t <= order} C(t - 1 + 1/k, t) x^t`, the expansion of `(1-x)^{-1/k}`.
pub fn binomial_series(k: u32, order: u32) -> Poly {
    assert!(k >= 1);
    let x = Var::new("x");
    let inv_k = Rational::new(1, k as i64);
    let mut b = Rational::one();
    let mut out = Poly::one();
    for t in 1..=order {
        let s = Rational::from((t - 1) as i64);
        b = &(&b * &(&s + &inv_k)) / &Rational::from(t as i64);
        out.add_term(crate::Monomial::var(x.clone(), t), b.clone());
    }
    out
}

/// `(1-x)^{-n}` truncated at `x^order`.
pub fn inverse_power_series(n: u32, order: u32) -> Poly {
    let x = Var::new("x");
    let mut out = Poly::zero();
    // C(t + n - 1, n - 1), built incrementally in t
    let mut c = Rational::one();
    for t in 0..=order {
        if t > 0 {
            c = &(&c * &Rational::from((t + n - 1) as i64)) / &Rational::from(t as i64);
        }
        if n == 0 {
            if t == 0 {
                out.add_term(crate::Monomial::one(), Rational::one());
            }
            continue;
        }
        out.add_term(crate::Monomial::var(x.clone(), t), c.clone());
    }
    out
}

/// Outcome of the operator identities for one `(n, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorCheck {
    pub shifted: bool,
    pub plain: bool,
}

impl OperatorCheck {
    pub fn holds(&self) -> bool {
        self.shifted && self.plain
    }
}

/// Applies `(kx d/dx + shift)` to `p` `n` times.
fn apply_euler_operator(p: &Poly, k: u32, shift: i64, n: u32) -> Poly {
    let x = Var::new("x");
    let kx = Poly::var(x.clone()).scale(&Rational::from(k as i64));
    let mut cur = p.clone();
    for _ in 0..n {
        cur = &(&kx * &cur.partial_derive(&x)) + &cur.scale(&Rational::from(shift));
    }
    cur
}

/// Checks, to order `x^order_x`, that
/// `(kx d/dx + 1)^n (1-x)^{-1/k} = A(x) (1-x)^{-n-1/k}` and
/// `(kx d/dx)^n (1-x)^{-1/k} = x^n A(1/x) (1-x)^{-n-1/k}`, with `A` supplied.
pub fn ogf_operator_check_with(a: &Poly, n: u32, k: u32, order_x: u32) -> Result<OperatorCheck, SeriesError> {
    if n < 1 || k < 1 || order_x < n + 2 {
        return Err(SeriesError::Precondition(format!(
            "operator check needs n >= 1, k >= 1 and order >= n + 2 (got n={n}, k={k}, order={order_x})"
        )));
    }
    let x = Var::new("x");
    let base = binomial_series(k, order_x);
    let tail = &inverse_power_series(n, order_x) * &base;
    let lhs1 = apply_euler_operator(&base, k, 1, n);
    let lhs2 = apply_euler_operator(&base, k, 0, n);
    let rhs1 = truncate_in(&(a * &tail), &x, order_x);
    let rev = a.reverse_in(&x, n).map_err(|e| SeriesError::Precondition(e.to_string()))?;
    let rhs2 = truncate_in(&(&rev * &tail), &x, order_x);
    Ok(OperatorCheck { shifted: lhs1 == rhs1, plain: lhs2 == rhs2 })
}

/// [`ogf_operator_check_with`] using `A_n^{(k)}` from its recurrence.
pub fn ogf_operator_check(n: u32, k: u32, order_x: u32) -> Result<bool, SeriesError> {
    let a = crate::families::ak_recurrence(n as usize, &crate::families::KParam::Int(k as i64));
    ogf_operator_check_with(&a, n, k, order_x).map(|c| c.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly;

    #[test]
    fn arith_examples() {
        let x = poly("x");
        let s = Series::exp_poly(&x, 3).mul(&Series::exp_poly(&-&x, 3)).unwrap();
        assert_eq!(s, Series::one(3));
        assert_eq!(s.to_string(), "1 + 0*z + 0*z^2 + 0*z^3");
        let a = Series::new(vec![poly("1"), poly("1")]);
        let b = Series::new(vec![poly("1"), poly("-1")]);
        assert_eq!(a.mul(&b).unwrap(), Series::one(1));
        assert_eq!(a.mul(&Series::one(2)), Err(SeriesError::OrderMismatch(1, 2)));
        // k = 1 instance of the Savage product form, by hand to z^2
        let (l, r) = savage_sides(&[poly("1"), poly("1"), poly("1 + x")], 1);
        assert_eq!(l, r);
    }

    #[test]
    fn exp_examples() {
        assert_eq!(Series::exp_poly(&Poly::zero(), 5), Series::one(5));
        assert_eq!(Series::exp_poly(&poly("x"), 2).coeffs(), &[poly("1"), poly("x"), poly("1/2*x^2")]);
        let c = poly("k*(x - 1)");
        assert_eq!(Series::exp_poly(&c, 1).coeffs(), &[poly("1"), c]);
    }

    #[test]
    fn egf_examples() {
        assert_eq!(Series::egf_of(&[poly("1")]), Series::one(0));
        let s = Series::egf_of(&[poly("1"), poly("1"), poly("1 + x")]);
        assert_eq!(s.coeff(2), poly("1/2 + 1/2*x"));
        let s = Series::egf_of(&[poly("1"), poly("p*q"), poly("p^2*q^2 + q*x")]);
        assert_eq!(s.coeff(1), poly("p*q"));
        assert_eq!(s.coeff(2), poly("(p^2*q^2 + q*x)/2"));
    }

    #[test]
    fn binomial_coefficients_match_power_product() {
        // (1-x)^{-1/2} squared is (1-x)^{-1}
        let b = binomial_series(2, 6);
        let sq = truncate_in(&(&b * &b), &Var::new("x"), 6);
        assert_eq!(sq, inverse_power_series(1, 6));
        assert_eq!(inverse_power_series(2, 3), poly("1 + 2*x + 3*x^2 + 4*x^3"));
    }

    #[test]
    fn operator_examples() {
        assert_eq!(ogf_operator_check(1, 1, 4), Ok(true));
        assert_eq!(ogf_operator_check(2, 2, 6), Ok(true));
        let bad = ogf_operator_check_with(&poly("1 + x"), 1, 1, 4).unwrap();
        assert!(!bad.shifted);
        assert!(ogf_operator_check(3, 1, 4).is_err());
    }
}
