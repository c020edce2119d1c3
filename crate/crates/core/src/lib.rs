//! Exact-arithmetic workbench for Euler-Stirling statistics on permutations
//! and Stirling permutations.
//!
//! Everything is computed in [`Poly`], an exact multivariate polynomial with
//! rational coefficients. Enumerators over permutations, signed permutations
//! and k-Stirling permutations are built by exhaustive generation, by
//! recurrences and by context-free grammar calculus, and the [`identities`]
//! registry checks them against each other.

pub mod combgen;
pub mod decomp;
pub mod exactpoly;
pub mod families;
pub mod grammar;
pub mod identities;
pub mod rational;
pub mod scalar;
pub mod series;
pub mod stats;

#[doc(hidden)]
pub mod cli;

pub use exactpoly::{Monomial, PolyError, Polynomial, Var};
pub use rational::Rational;
pub use scalar::{FieldScalar, Scalar};

/// Exact rational-coefficient polynomial; the type every module computes in.
pub type Poly = Polynomial<Rational>;
/// Integer-coefficient polynomial.
pub type IntPoly = Polynomial<num_bigint::BigInt>;
/// Floating-point polynomial, for quick numeric evaluation only.
pub type FloatPoly = Polynomial<f64>;
pub type F32Poly = Polynomial<f32>;

/// Shorthand for `s.parse::<Poly>().unwrap()` in tests and examples.
///
/// # Panics
/// On malformed input.
pub fn poly(s: &str) -> Poly {
    s.parse().unwrap_or_else(|e| panic!("bad polynomial `{s}`: {e}"))
}
