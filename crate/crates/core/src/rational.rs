//! Exact rational numbers with a machine-integer fast path.
//!
//! Almost every coefficient that shows up in the enumerators is a small
//! integer, so values are kept as `i64` until an operation overflows or
//! produces a proper fraction. Equal values always share one representation,
//! which keeps derived `Hash`/`Eq` consistent.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Rational {
    Small(i64),
    /// Never an integer that fits in `i64`.
    Big(BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_big(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Rational::Small(s),
            None => Rational::Big(BigRational::from_integer(v)),
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        if r.is_integer() {
            if let Some(s) = r.numer().to_i64() {
                return Rational::Small(s);
            }
        }
        Rational::Big(r)
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(s) => BigRational::from_integer(BigInt::from(*s)),
            Rational::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(s) => BigInt::from(*s),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_) => BigInt::one(),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_) => true,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(s) => *s < 0,
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rational::Small(s) => *s as f64,
            Rational::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(s) => Some(*s),
            Rational::Big(_) => None,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::Small(v)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational::Small(v as i64)
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Rational::Small(s),
            Err(_) => Rational::from_integer(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => a == b,
            (Rational::Big(a), Rational::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(s) => {
                0u8.hash(state);
                s.hash(state);
            }
            Rational::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(s) => write!(f, "{s}"),
            Rational::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseRationalError(s.to_string());
        match t.split_once('/') {
            None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| err()),
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(Rational::from_big(BigRational::new(n, d)))
            }
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $big:expr) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                if let (Rational::Small(a), Rational::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Rational::Small(v);
                    }
                }
                let f: fn(BigRational, BigRational) -> BigRational = $big;
                Rational::from_big(f(self.to_big(), rhs.to_big()))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, |a, b| a + b);
binop!(Sub, sub, checked_sub, |a, b| a - b);
binop!(Mul, mul, checked_mul, |a, b| a * b);

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Rational::Small(a), Rational::Small(b)) = (self, rhs) {
            if let (Some(0), Some(q)) = (a.checked_rem(*b), a.checked_div(*b)) {
                return Rational::Small(q);
            }
        }
        Rational::from_big(self.to_big() / rhs.to_big())
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl<'a> Rem<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn rem(self, rhs: &'a Rational) -> Rational {
        if let (Rational::Small(a), Rational::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_rem(*b) {
                return Rational::Small(v);
            }
        }
        Rational::from_big(self.to_big() % rhs.to_big())
    }
}

impl Rem for Rational {
    type Output = Rational;
    fn rem(self, rhs: Rational) -> Rational {
        (&self).rem(&rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(s) => match s.checked_neg() {
                Some(v) => Rational::Small(v),
                None => Rational::from_big(-BigRational::from_integer(BigInt::from(s))),
            },
            Rational::Big(b) => Rational::from_big(-b),
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -self.clone()
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::Small(0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::Small(0)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::Small(1)
    }
}

impl Num for Rational {
    type FromStrRadixErr = ParseRationalError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix == 10 {
            return s.parse();
        }
        BigRational::from_str_radix(s, radix)
            .map(Rational::from_big)
            .map_err(|_| ParseRationalError(s.to_string()))
    }
}
