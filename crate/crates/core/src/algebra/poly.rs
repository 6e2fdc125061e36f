//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse, ratfunc::RatFunc, Field};
use crate::error::{Error, Result};

/// Coefficients are stored in ascending order: `coeffs[i]` multiplies `X^i`.
/// The zero polynomial is the empty vector and has degree `None`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Field::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = c;
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(Field::is_one)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(Field::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Multiply by `X^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].inv().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if n < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = r[k + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(dc));
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        self.div_rem(d).map(|(_, r)| r)
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        match self.div_rem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff().and_then(Field::inv) {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    /// Formal derivative; integer multiples are taken in the field's characteristic.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&F::from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Evaluate at a rational function, producing a rational function.
    pub fn eval_ratfunc(&self, x: &RatFunc<F>) -> RatFunc<F> {
        self.coeffs.iter().rev().fold(RatFunc::zero(), |acc, c| {
            acc.mul(x).add(&RatFunc::constant(c.clone()))
        })
    }

    /// Evaluate at a polynomial (composition `self ∘ x`).
    pub fn compose(&self, x: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(x).add(&Self::constant(c.clone()))
        })
    }

    /// Apply `f` to each coefficient.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// `gcd(self, self') == 1`.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && poly_gcd(self, &self.derivative()).degree() == Some(0)
    }

    /// Multiplicity of `p` as a factor of `self`; `None` for the zero polynomial.
    pub fn multiplicity(&self, p: &Self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut m = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(p) {
            cur = q;
            m += 1;
        }
        Some(m)
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, text) = c.coeff_text();
            if negative {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let unit = text == "1";
            match (i, unit) {
                (0, _) => out.push_str(&text),
                (_, true) => {}
                (_, false) => {
                    out.push_str(&text);
                    out.push('*');
                }
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    out.push_str(var);
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
        out
    }

    /// Parse a polynomial in the variable `var`, e.g. `"X^2+X-36/49"`.
    pub fn parse_in(src: &str, var: &str) -> Result<Self> {
        let r: RatFunc<F> = parse::parse_expr(src, &|name: &str| {
            if name == var {
                Some(RatFunc::from_poly(Poly::x()))
            } else {
                F::atom(name).map(RatFunc::constant)
            }
        })?;
        r.into_poly()
            .ok_or_else(|| Error::Parse(format!("{src:?} is not a polynomial in {var}")))
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    a.monic()
}

/// Extended Euclid: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub fn poly_ext_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
        r0 = std::mem::replace(&mut r1, r);
        let s = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.leading_coeff().and_then(Field::inv) {
        Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
        None => (r0, s0, t0),
    }
}

pub fn poly_derivative<F: Field>(a: &Poly<F>) -> Poly<F> {
    a.derivative()
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("X"))
    }
}

impl<F: Field + Serialize> Serialize for Poly<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de, F: Field + Deserialize<'de>> Deserialize<'de> for Poly<F> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<F>::deserialize(d).map(Poly::new)
    }
}
