//! Formal derivatives driven by context-free grammars.
//!
//! A grammar maps letters to polynomials. Its derivative `D` acts on a
//! polynomial by `D(p) = sum_v dp/dv * rule(v)`, so it is linear and obeys
//! the Leibniz rule. Letters without a rule are constants.

mod library;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactpoly::{Bindings, Var};
use crate::Poly;

pub use library::{builtin, builtin_names, builtin_source, BUILTIN};
pub use parse::{parse_grammar, GrammarError};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Grammar {
    rules: BTreeMap<Var, Poly>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("alias `{letter}`: deriving its definition gives {derived}, the alias rule expands to {expected}")]
pub struct AliasMismatch {
    pub letter: Var,
    pub derived: Poly,
    pub expected: Poly,
}

impl Grammar {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from `(letter, rule)` text pairs.
    ///
    /// # Panics
    /// On a malformed rule; intended for literals in code.
    pub fn from_rules(rules: &[(&str, &str)]) -> Self {
        let mut g = Grammar::new();
        for (v, r) in rules {
            g.insert(Var::new(v), crate::poly(r));
        }
        g
    }

    /// Adds or replaces a rule.
    pub fn insert(&mut self, v: Var, rule: Poly) {
        self.rules.insert(v, rule);
    }

    pub fn rule(&self, v: &Var) -> Option<&Poly> {
        self.rules.get(v)
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Var, &Poly)> {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// One application of `D`.
    pub fn derive(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for v in p.vars() {
            if let Some(rule) = self.rules.get(&v) {
                let d = p.partial_derive(&v);
                if !d.is_zero() {
                    out += &(&d * rule);
                }
            }
        }
        out
    }

    /// `D^n(p)` by iterated single steps.
    pub fn derive_n(&self, p: &Poly, n: usize) -> Poly {
        let mut cur = p.clone();
        for _ in 0..n {
            cur = self.derive(&cur);
        }
        cur
    }

    /// Every iterate `p, D(p), ..., D^n(p)`.
    pub fn derive_seq(&self, p: &Poly, n: usize) -> Vec<Poly> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(p.clone());
        for i in 0..n {
            let next = self.derive(&out[i]);
            out.push(next);
        }
        out
    }

    pub fn derive_then_substitute(&self, p: &Poly, n: usize, bindings: &Bindings<crate::Rational>) -> Poly {
        self.derive_n(p, n).substitute(bindings)
    }

    /// Verifies a change of grammar.
    ///
    /// `defs` expresses each alias letter as a polynomial in this grammar's
    /// letters; `aliased` gives the claimed rules over alias (and remaining
    /// base) letters. For every alias with a claimed rule, deriving its
    /// definition here must equal the claimed rule with the definitions
    /// substituted back in.
    pub fn check_aliases(&self, defs: &Bindings<crate::Rational>, aliased: &Grammar) -> Result<(), AliasMismatch> {
        for (letter, def) in defs {
            let Some(rule) = aliased.rule(letter) else { continue };
            let derived = self.derive(def);
            let expected = rule.substitute(defs);
            if derived != expected {
                return Err(AliasMismatch { letter: letter.clone(), derived, expected });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, r) in &self.rules {
            writeln!(f, "{v} -> {r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rules.iter().map(|(v, r)| format!("{v} -> {r}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `{a -> a b^k, b -> a^k b}` for a concrete `k`.
pub fn ank(k: u32) -> Grammar {
    let mut g = Grammar::new();
    g.insert(Var::new("a"), &Poly::var("a") * &Poly::var_pow("b", k));
    g.insert(Var::new("b"), &Poly::var_pow("a", k) * &Poly::var("b"));
    g
}

/// `{I -> Iy, y -> kxz, x -> kxz, z -> kxz}`, with `k` a number or the letter `k`.
pub fn lemmaapp(k: &Poly) -> Grammar {
    let kxz = k * &crate::poly("x*z");
    let mut g = Grammar::new();
    g.insert(Var::new("I"), crate::poly("I*y"));
    for v in ["x", "y", "z"] {
        g.insert(Var::new(v), kxz.clone());
    }
    g
}

/// `{I -> q I y^k, x -> 2 x y^k, y -> x y^{k-1}}`.
pub fn lemma1(k: u32) -> Grammar {
    assert!(k >= 1);
    let mut g = Grammar::new();
    g.insert(Var::new("I"), &crate::poly("q*I") * &Poly::var_pow("y", k));
    g.insert(Var::new("x"), &crate::poly("2*x") * &Poly::var_pow("y", k));
    g.insert(Var::new("y"), &Poly::var("x") * &Poly::var_pow("y", k - 1));
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::bindings;
    use crate::poly;
    use proptest::prelude::*;

    fn dumont() -> Grammar {
        Grammar::from_rules(&[("a", "a*b"), ("b", "a*b")])
    }

    #[test]
    fn derive_examples() {
        let g = dumont();
        assert_eq!(g.derive(&poly("a")), poly("a*b"));
        assert_eq!(g.derive(&poly("a*b")), poly("a*b^2 + a^2*b"));
        assert!(g.derive(&poly("v")).is_zero());
    }

    #[test]
    fn derive_n_examples() {
        assert_eq!(ank(2).derive_n(&poly("a"), 2), poly("a*b^4 + 2*a^3*b^2"));
        let g1 = builtin("lemmacycle").unwrap();
        let d = g1.derive_then_substitute(&poly("I"), 2, &bindings([("y", poly("1"))]));
        assert_eq!(d, poly("I*(p^2*q^2 + q*x)"));
        assert_eq!(dumont().derive_n(&poly("a + b"), 0), poly("a + b"));
    }

    #[test]
    fn derive_then_substitute_examples() {
        let h = builtin("lemmaJi").unwrap();
        let one = bindings([("a", poly("1")), ("b", poly("1"))]);
        assert_eq!(h.derive_then_substitute(&poly("a*b"), 1, &one), poly("alpha*x + beta*y"));
        let g = builtin("lapap").unwrap();
        let s = bindings([("I", poly("1")), ("J", poly("x")), ("x", poly("x*y")), ("z", poly("1"))]);
        assert_eq!(g.derive_then_substitute(&poly("I"), 2, &s), poly("x + x*y + x^2*y"));
        let g = builtin("lemma1").unwrap();
        let s = bindings([("I", poly("1")), ("y", poly("1"))]);
        assert_eq!(g.derive_then_substitute(&poly("I"), 2, &s), poly("q^2 + 2*q*x"));
    }

    #[test]
    fn dumont_sides_agree() {
        let g = dumont();
        for n in 1..=8 {
            assert_eq!(g.derive_n(&poly("a"), n), g.derive_n(&poly("b"), n));
        }
    }

    #[test]
    fn changes_of_grammar() {
        let h = builtin("thm1").unwrap();
        let defs = bindings([
            ("I", poly("a*beta")),
            ("w", poly("beta + k*alpha")),
            ("u", poly("alpha*beta")),
            ("v", poly("alpha + beta")),
        ]);
        h.check_aliases(&defs, &builtin("thm1-alias").unwrap()).unwrap();

        let g = builtin("lapap").unwrap();
        let defs = bindings([("u", poly("x*z^2")), ("v", poly("x + z^2"))]);
        g.check_aliases(&defs, &builtin("lapap-alias").unwrap()).unwrap();

        let g = lemma1(2);
        let defs = bindings([("A", poly("I*y^2")), ("u", poly("x*y^2")), ("v", poly("x + y^2"))]);
        g.check_aliases(&defs, &builtin("thm2-alias").unwrap()).unwrap();

        let ji = builtin("lemmaJi").unwrap();
        let defs = bindings([("I", poly("a*b")), ("J", poly("alpha*x + beta*y"))]);
        ji.check_aliases(&defs, &builtin("thmab").unwrap()).unwrap();

        let bad = Grammar::from_rules(&[("u", "u*v")]);
        let err = g.check_aliases(&bindings([("u", poly("x*y^2")), ("v", poly("x + y^2"))]), &bad);
        assert!(err.is_err());
    }

    #[test]
    fn thm2_alias_second_step() {
        // D^2(A) = A(q^2 v^2 + (6q - q^2) u) + A x (2 - q)(2 + q) v, once x^2 = x v - u
        let h = builtin("thm2-alias").unwrap();
        let defs = bindings([("A", poly("I*y^2")), ("u", poly("x*y^2")), ("v", poly("x + y^2"))]);
        let lhs = h.derive_n(&poly("A"), 2).substitute(&defs);
        let want = poly("A*(q^2*v^2 + (6*q - q^2)*u) + A*x*(2 - q)*(2 + q)*v").substitute(&defs);
        assert_eq!(lhs, want);
        assert_eq!(lemma1(2).derive_n(&poly("I*y^2"), 2), want);
    }

    fn letters() -> impl Strategy<Value = Poly> {
        let term = (-3i64..4, 0u32..3, 0u32..2, 0u32..2);
        prop::collection::vec(term, 1..4).prop_map(|ts| {
            let mut out = Poly::zero();
            for (c, ea, eb, ec) in ts {
                let m = crate::Monomial::from_pairs([(Var::new("a"), ea), (Var::new("b"), eb), (Var::new("c"), ec)]);
                out.add_term(m, crate::Rational::from(c));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn leibniz(p in letters(), q in letters(), ra in letters(), rb in letters()) {
            let mut g = Grammar::new();
            g.insert(Var::new("a"), ra);
            g.insert(Var::new("b"), rb);
            let lhs = g.derive(&(&p * &q));
            let rhs = &(&g.derive(&p) * &q) + &(&p * &g.derive(&q));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
