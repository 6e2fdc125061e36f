use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse, Field, Sqrt};
use crate::error::Error;

/// Element of the prime field 𝔽_P. `P` must be prime; arithmetic assumes it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fp<const P: u64>(u64);

pub type F2 = Fp<2>;

impl<const P: u64> Fp<P> {
    pub const ZERO: Self = Fp(0);
    pub const ONE: Self = Fp(1 % P);

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Self::ZERO
    }

    fn one() -> Self {
        Self::ONE
    }

    fn from_i64(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }

    fn characteristic() -> u64 {
        P
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }

    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            // Fermat: a^(p-2) = a^-1
            Some(self.pow(P - 2))
        }
    }

    fn coeff_text(&self) -> (bool, String) {
        (false, self.0.to_string())
    }
}

impl<const P: u64> Sqrt for Fp<P> {
    fn sqrt(&self) -> Option<Self> {
        (0..P).map(Fp).find(|r| r.square() == *self)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> FromStr for Fp<P> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse::parse_element(s)
    }
}

impl<const P: u64> Serialize for Fp<P> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(self.0)
    }
}

impl<'de, const P: u64> Deserialize<'de> for Fp<P> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        u64::deserialize(d).map(Fp::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_seven() {
        type F7 = Fp<7>;
        let a = F7::new(3);
        let b = F7::new(5);
        assert_eq!(a.add(&b), F7::new(1));
        assert_eq!(a.mul(&b), F7::new(1));
        assert_eq!(a.inv(), Some(b));
        assert_eq!(F7::from_i64(-1), F7::new(6));
        assert_eq!(F7::new(2).sqrt().map(|r| r.square()), Some(F7::new(2)));
        assert_eq!(F7::new(3).sqrt(), None);
    }

    #[test]
    fn char_two() {
        let one = F2::one();
        assert!(one.add(&one).is_zero());
        assert_eq!(one.neg(), one);
    }
}
