//! JSON form: `{"vars":[...],"terms":[{"coeff":"4","exps":{"x":2}}]}`.
//!
//! Coefficients are strings so consumers never round them.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::monomial::{Monomial, Var};
use super::polynomial::Polynomial;
use crate::rational::Rational;
use crate::scalar::Scalar;

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<Var>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: BTreeMap<Var, u32>,
}

impl<C: Scalar> Serialize for Polynomial<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars().into_iter().collect(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    exps: m.factors().iter().cloned().collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Scalar> Deserialize<'de> for Polynomial<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut out = Polynomial::zero();
        for t in raw.terms {
            let r: Rational = t.coeff.parse().map_err(D::Error::custom)?;
            let c = C::from_rational(&r)
                .ok_or_else(|| D::Error::custom(format!("coefficient {r} not representable")))?;
            out.add_term(Monomial::from_pairs(t.exps), c);
        }
        Ok(out)
    }
}

use num_traits::Zero as _;
