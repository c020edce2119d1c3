//! Exact multivariate polynomials over a generic coefficient ring.

mod json;
mod monomial;
mod polynomial;
mod text;

pub use monomial::{Monomial, Var};
pub use polynomial::{Bindings, Polynomial};
pub use text::{parse_poly, ParseError};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("degree {degree} in `{var}` exceeds the reversal bound {bound}")]
    DegreeOverflow { var: String, degree: u32, bound: u32 },
}

/// Builds a [`Bindings`] map from `(name, value)` pairs.
pub fn bindings<C: Scalar, I, S>(pairs: I) -> Bindings<C>
where
    I: IntoIterator<Item = (S, Polynomial<C>)>,
    S: AsRef<str>,
{
    pairs.into_iter().map(|(n, p)| (Var::new(n.as_ref()), p)).collect()
}

/// The polynomial `(x + c)(x + c + step)...` with `n` factors, in variable `v`.
pub fn rising_product<C: Scalar>(v: &Var, start: i64, step: i64, n: usize) -> Polynomial<C> {
    let x = Polynomial::<C>::var(v);
    (0..n).fold(Polynomial::from_i64(1), |acc, i| {
        &acc * &(&x + &Polynomial::from_i64(start + step * i as i64))
    })
}
