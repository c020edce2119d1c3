//! Coefficient rings for [`Polynomial`](crate::exactpoly::Polynomial).

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

use crate::rational::Rational;

/// A commutative ring usable as polynomial coefficients.
pub trait Scalar:
    Clone + PartialEq + PartialOrd + Debug + Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    /// `None` when the value is not representable (a fraction in an integer ring).
    fn from_rational(r: &Rational) -> Option<Self>;

    /// `None` for inexact scalars that have no faithful rational value.
    fn to_rational(&self) -> Option<Rational>;

    /// Exact scalars support the equality-based identity checks.
    const EXACT: bool;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

/// Scalars with (exact or approximate) division by nonzero elements.
pub trait FieldScalar: Scalar {}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}
impl FieldScalar for Rational {}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.to_big())
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(Rational::from_big(self.clone()))
    }
}
impl FieldScalar for BigRational {}

impl Scalar for BigInt {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        r.is_integer().then(|| r.numer())
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(Rational::from_integer(self.clone()))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.to_f64())
    }
    fn to_rational(&self) -> Option<Rational> {
        BigRational::from_f64(*self).map(Rational::from_big)
    }
}
impl FieldScalar for f64 {}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f32
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        r.to_f64().to_f32()
    }
    fn to_rational(&self) -> Option<Rational> {
        BigRational::from_f32(*self).map(Rational::from_big)
    }
}
impl FieldScalar for f32 {}
