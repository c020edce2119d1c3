use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::monomial::{Monomial, Var};
use super::PolyError;
use crate::scalar::Scalar;

/// Simultaneous substitution map.
pub type Bindings<C> = BTreeMap<Var, Polynomial<C>>;

/// Sparse multivariate polynomial with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Polynomial<C> {
    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }

    pub fn var(name: impl Into<Var>) -> Self {
        Self::term(C::one(), Monomial::var(name.into(), 1))
    }

    pub fn var_pow(name: impl Into<Var>, e: u32) -> Self {
        Self::term(C::one(), Monomial::var(name.into(), e))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Terms in canonical (graded lexicographic, ascending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars().cloned()).collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: &Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant term, or `None` when the polynomial is not constant.
    pub fn as_constant(&self) -> Option<C> {
        self.is_constant().then(|| self.coefficient(&Monomial::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d.clone() * c.clone()))
                .filter(|(_, d)| !d.is_zero())
                .collect(),
        }
    }

    pub fn mul_monomial(&self, c: &C, m: &Monomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(n, d)| (n.mul(m), d.clone() * c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derive(&self, v: &Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                let lowered = m.lower(v).expect("exponent is positive");
                out.add_term(lowered, c.clone() * C::from_i64(e as i64));
            }
        }
        out
    }

    /// Simultaneous substitution; variables without a binding are kept.
    pub fn substitute(&self, bindings: &Bindings<C>) -> Self {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(Var, u32), Polynomial<C>> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Self::one();
            for (v, e) in m.factors() {
                match bindings.get(v) {
                    Some(b) => {
                        let pw = powers.entry((v.clone(), *e)).or_insert_with(|| b.pow(*e));
                        factor = &factor * &*pw;
                    }
                    None => kept.push((v.clone(), *e)),
                }
                if factor.is_zero() {
                    break;
                }
            }
            if factor.is_zero() {
                continue;
            }
            let rest = Monomial::from_pairs(kept);
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&rest), fc * c.clone());
            }
        }
        out
    }

    /// `v^n * p(1/v)`.
    pub fn reverse_in(&self, v: &Var, n: u32) -> Result<Self, PolyError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            if e > n {
                return Err(PolyError::DegreeOverflow { var: v.to_string(), degree: e, bound: n });
            }
            out.add_term(rest.mul(&Monomial::var(v.clone(), n - e)), c.clone());
        }
        Ok(out)
    }

    /// Coefficient of `v^e`, a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: &Var, e: u32) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (rest, ex) = m.without(v);
            (ex == e).then(|| (rest, c.clone()))
        }))
    }

    /// Dense coefficient list in `v`, index `i` holding the coefficient of `v^i`.
    pub fn coeffs_in(&self, v: &Var) -> Vec<Self> {
        let deg = match self.degree_in(v) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![Self::zero(); deg + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(v: &Var, coeffs: &[Self]) -> Self {
        let mut out = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let vm = Monomial::var(v.clone(), i as u32);
            for (m, d) in &c.terms {
                out.add_term(m.mul(&vm), d.clone());
            }
        }
        out
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Converts through exact rationals; fails if a coefficient does not fit `D`.
    pub fn convert<D: Scalar>(&self) -> Option<Polynomial<D>> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), D::from_rational(&c.to_rational()?)?);
        }
        Some(out)
    }

    /// Evaluates at a full assignment of scalars; `None` if a variable is unbound.
    pub fn eval(&self, point: &BTreeMap<Var, C>) -> Option<C> {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = point.get(v)?;
                for _ in 0..*e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Some(acc)
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// First monomial (in canonical order) where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Monomial, C, C)> {
        let keys: BTreeSet<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|m| {
            let (a, b) = (self.coefficient(m), other.coefficient(m));
            (a != b).then(|| (m.clone(), a, b))
        })
    }
}

impl<C: Scalar> Zero for Polynomial<C> {
    fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar> One for Polynomial<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Scalar> AddAssign<&Polynomial<C>> for Polynomial<C> {
    fn add_assign(&mut self, rhs: &Polynomial<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<C: Scalar> SubAssign<&Polynomial<C>> for Polynomial<C> {
    fn sub_assign(&mut self, rhs: &Polynomial<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a, C: Scalar> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a, C: Scalar> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a, C: Scalar> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl<C: Scalar> $trait<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, C: Scalar> $trait<&'a Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &'a Polynomial<C>) -> Polynomial<C> {
                (&self).$method(rhs)
            }
        }
        impl<'a, C: Scalar> $trait<Polynomial<C>> for &'a Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                self.$method(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);
