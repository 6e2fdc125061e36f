//! Rational functions `num/den` over a [`Field`], kept with a monic
//! denominator coprime to the numerator.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{
    poly::{poly_gcd, Poly},
    Field, Valuation,
};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        if !den.is_monic() {
            let inv = den.leading_coeff().and_then(Field::inv).expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn numer(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn into_poly(self) -> Option<Poly<F>> {
        self.is_poly().then_some(self.num)
    }

    /// Normalize an already-built value; normalization is idempotent.
    pub fn renormalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn display_in(&self, var: &str) -> String {
        let n = self.num.display_in(var);
        if self.is_poly() {
            return n;
        }
        let wrap = |s: String, p: &Poly<F>| {
            let single = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
                && p.leading_coeff().is_some_and(|c| !c.coeff_text().0);
            if single {
                s
            } else {
                format!("({s})")
            }
        };
        format!(
            "{}/{}",
            wrap(n, &self.num),
            wrap(self.den.display_in(var), &self.den)
        )
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }

    fn characteristic() -> u64 {
        F::characteristic()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }

    fn atom(name: &str) -> Option<Self> {
        F::atom(name).map(Self::constant)
    }

    fn coeff_text(&self) -> (bool, String) {
        if let Some(c) = self.clone().into_poly() {
            if c.degree() == Some(0) {
                return c.coeff(0).coeff_text();
            }
        }
        (false, format!("({self})"))
    }
}

/// Valuation of `r` at the place of `F(Y)` given by the irreducible
/// polynomial `p`: multiplicity in the numerator minus multiplicity in the
/// denominator. Irreducibility of `p` is the caller's responsibility; see
/// [`crate::algebra::sqrt::ratfunc_valuation`] for the checked entry point.
pub fn multiplicity_valuation<F: Field>(r: &RatFunc<F>, p: &Poly<F>) -> Valuation {
    match r.num.multiplicity(p) {
        None => Valuation::Infinite,
        Some(n) => {
            let d = r.den.multiplicity(p).unwrap_or(0);
            Valuation::Finite(n as i64 - d as i64)
        }
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("Y"))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound(
    serialize = "F: Field + Serialize",
    deserialize = "F: Field + Deserialize<'de>"
))]
struct RatFuncRepr<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field + Serialize> Serialize for RatFunc<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de, F: Field + Deserialize<'de>> Deserialize<'de> for RatFunc<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = RatFuncRepr::<F>::deserialize(d)?;
        RatFunc::new(repr.num, repr.den).map_err(serde::de::Error::custom)
    }
}
