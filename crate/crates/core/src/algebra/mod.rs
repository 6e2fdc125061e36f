//! Exact arithmetic foundation: rationals, prime fields, dense univariate
//! polynomials, rational functions and the text syntax used by the CLI.

use std::cmp::Ordering;
use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub mod f2u;
pub mod fp;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod sqrt;

/// A commutative field with exact arithmetic.
///
/// Methods take `&self` so that big coefficients are never moved by
/// accident; `std::ops` is intentionally not implemented on the generic
/// types to keep call sites unambiguous.
pub trait Field:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// 0 for characteristic zero.
    fn characteristic() -> u64;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        rhs.inv().map(|r| self.mul(&r)).ok_or(Error::DivisionByZero)
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Named constants recognised by the expression parser (`u` in 𝔽₂(u)).
    fn atom(_name: &str) -> Option<Self> {
        None
    }

    /// Sign and an operand-safe rendering, used when printing polynomial terms.
    fn coeff_text(&self) -> (bool, String);
}

/// Fields where square roots can be decided and extracted.
pub trait Sqrt: Field {
    fn sqrt(&self) -> Option<Self>;

    fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }
}

/// Discrete valuation value; `Infinite` is the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn is_at_least(self, bound: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Valuation;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or \"+inf\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Valuation, E> {
                Ok(Valuation::Finite(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Valuation, E> {
                i64::try_from(v)
                    .map(Valuation::Finite)
                    .map_err(|_| E::custom("valuation out of range"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Valuation, E> {
                if v == "+inf" {
                    Ok(Valuation::Infinite)
                } else {
                    Err(E::custom(format!("bad valuation {v:?}")))
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Serde helpers for field elements, which travel as canonical strings.
pub(crate) mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}
