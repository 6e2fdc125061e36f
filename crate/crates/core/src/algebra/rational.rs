use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse, Field, Sqrt};
use crate::error::Error;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    /// Largest `h` such that the numerator and denominator are bounded by `h` in absolute value.
    pub fn height(&self) -> BigInt {
        let n = self.numer().abs();
        let d = self.denom().clone();
        n.max(d)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Rational::integer(n)
    }

    fn characteristic() -> u64 {
        0
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    fn coeff_text(&self) -> (bool, String) {
        (self.signum() < 0, self.abs().to_string())
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Sqrt for Rational {
    /// The non-negative square root, when one exists in ℚ.
    fn sqrt(&self) -> Option<Self> {
        let n = exact_sqrt(self.numer())?;
        let d = exact_sqrt(self.denom())?;
        Some(Rational::from_bigints(n, d))
    }
}

/// Square-free part of a nonzero integer, sign included.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let mut m = n.abs();
    let mut part = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            part *= &p;
        }
        p += 1;
    }
    part *= m;
    if n.is_negative() {
        -part
    } else {
        part
    }
}

/// Exponent of the prime `p` in the nonzero integer `n`.
pub fn int_valuation(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse::parse_element(s)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        super::as_string::serialize(self, s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        super::as_string::deserialize(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = Rational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(Rational::new(9, 4).sqrt(), Some(Rational::new(3, 2)));
        assert_eq!(Rational::new(193, 49).sqrt(), None);
        assert_eq!(Rational::integer(-4).sqrt(), None);
        assert_eq!(Rational::zero().sqrt(), Some(Rational::zero()));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&BigInt::from(72)), BigInt::from(2));
        assert_eq!(squarefree_part(&BigInt::from(-45)), BigInt::from(-5));
        assert_eq!(squarefree_part(&BigInt::from(1)), BigInt::from(1));
    }

    #[test]
    fn parse_and_print() {
        let r: Rational = "-36/49".parse().unwrap();
        assert_eq!(r, Rational::new(-36, 49));
        assert_eq!(r.to_string(), "-36/49");
        assert_eq!("7".parse::<Rational>().unwrap().to_string(), "7");
    }
}
