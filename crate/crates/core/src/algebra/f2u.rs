//! The rational function field 𝔽₂(u).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{fp::F2, parse, poly::Poly, ratfunc::RatFunc, Field, Sqrt};
use crate::error::{Error, Result};

/// Element of 𝔽₂(u), printed in the variable `u` (e.g. `u/(u+1)`).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct F2u(RatFunc<F2>);

impl F2u {
    pub fn u() -> Self {
        F2u(RatFunc::from_poly(Poly::x()))
    }

    pub fn from_poly(p: Poly<F2>) -> Self {
        F2u(RatFunc::from_poly(p))
    }

    pub fn new(num: Poly<F2>, den: Poly<F2>) -> Result<Self> {
        RatFunc::new(num, den).map(F2u)
    }

    pub fn as_ratfunc(&self) -> &RatFunc<F2> {
        &self.0
    }

    pub fn numer(&self) -> &Poly<F2> {
        self.0.numer()
    }

    pub fn denom(&self) -> &Poly<F2> {
        self.0.denom()
    }

    /// `max(deg num, deg den)`; 0 for zero.
    pub fn height(&self) -> usize {
        self.numer()
            .degree()
            .unwrap_or(0)
            .max(self.denom().degree().unwrap_or(0))
    }
}

/// Polynomial over 𝔽₂ from a bitmask, bit `i` giving the coefficient of `u^i`.
pub fn f2_poly_from_bits(bits: u64) -> Poly<F2> {
    Poly::new((0..64).map(|i| F2::new((bits >> i) & 1)).collect())
}

pub fn f2_poly_bits(p: &Poly<F2>) -> u64 {
    assert!(p.coeffs().len() <= 64, "polynomial too large for a bitmask");
    p.coeffs()
        .iter()
        .enumerate()
        .fold(0, |acc, (i, c)| acc | (c.value() << i))
}

/// Square root in 𝔽₂[u]: only even exponents may occur, and Frobenius is the
/// identity on 𝔽₂, so the root halves every exponent.
pub fn f2_poly_sqrt(p: &Poly<F2>) -> Option<Poly<F2>> {
    let cs = p.coeffs();
    if cs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return None;
    }
    Some(Poly::new(cs.iter().step_by(2).copied().collect()))
}

/// Outcome of solving the Artin–Schreier equation `b² + b = c` in 𝔽₂(u).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ArtinSchreier {
    Root {
        root: F2u,
    },
    /// A solution `e/s` would need `s² = den(c)`.
    DenominatorNotSquare {
        denominator: F2u,
    },
    /// The 𝔽₂-linear system `e² + s·e = num(c)` with `deg e ≤ degree_bound` has no solution.
    NoPolynomialSolution {
        degree_bound: usize,
    },
}

impl ArtinSchreier {
    pub fn has_root(&self) -> bool {
        matches!(self, ArtinSchreier::Root { .. })
    }
}

/// Decide whether `X² + X + c` has a root in 𝔽₂(u).
///
/// Writing a root as `b = e/s` in lowest terms gives `c = (e² + e·s)/s²`
/// in lowest terms, so `den(c)` must be the square `s²` and `e` solves
/// `e² + s·e = num(c)`. That map is 𝔽₂-linear in `e`, and
/// `deg e ≤ max(⌈deg num(c) / 2⌉, deg s)`, so Gaussian elimination over 𝔽₂
/// settles the question.
pub fn artin_schreier_root(c: &F2u) -> ArtinSchreier {
    let Some(s) = f2_poly_sqrt(c.denom()) else {
        return ArtinSchreier::DenominatorNotSquare {
            denominator: F2u::from_poly(c.denom().clone()),
        };
    };
    let n = c.numer();
    let bound = n
        .degree()
        .map_or(0, |d| d.div_ceil(2))
        .max(s.degree().unwrap_or(0));
    let width = 2 * bound + s.degree().unwrap_or(0) + 2;
    // column j = image of u^j under e -> e^2 + s*e
    let columns: Vec<Poly<F2>> = (0..=bound)
        .map(|j| {
            let m = Poly::monomial(F2::one(), j);
            m.square().add(&s.mul(&m))
        })
        .collect();
    let rhs: Vec<bool> = (0..width).map(|i| !n.coeff(i).is_zero()).collect();
    if n.degree().is_some_and(|d| d >= width) {
        return ArtinSchreier::NoPolynomialSolution {
            degree_bound: bound,
        };
    }
    // rows: width equations, bound+1 unknowns plus augmented column
    let mut rows: Vec<Vec<bool>> = (0..width)
        .map(|i| {
            let mut row: Vec<bool> = columns.iter().map(|col| !col.coeff(i).is_zero()).collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    let unknowns = bound + 1;
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(pivot_row, r);
        for r2 in 0..rows.len() {
            if r2 != pivot_row && rows[r2][col] {
                let pr = rows[pivot_row].clone();
                for (a, b) in rows[r2].iter_mut().zip(pr) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|row| row[unknowns]) {
        return ArtinSchreier::NoPolynomialSolution {
            degree_bound: bound,
        };
    }
    let mut e = vec![F2::zero(); unknowns];
    for (r, &col) in pivots.iter().enumerate() {
        e[col] = F2::new(rows[r][unknowns] as u64);
    }
    let e = Poly::new(e);
    let root = F2u::new(e, s).expect("monic denominator");
    debug_assert_eq!(root.square().add(&root), *c);
    ArtinSchreier::Root { root }
}

impl Field for F2u {
    fn zero() -> Self {
        F2u(RatFunc::zero())
    }

    fn one() -> Self {
        F2u(RatFunc::one())
    }

    fn from_i64(n: i64) -> Self {
        F2u(RatFunc::from_i64(n))
    }

    fn characteristic() -> u64 {
        2
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        F2u(self.0.add(&rhs.0))
    }

    fn mul(&self, rhs: &Self) -> Self {
        F2u(self.0.mul(&rhs.0))
    }

    fn neg(&self) -> Self {
        self.clone()
    }

    fn inv(&self) -> Option<Self> {
        self.0.inv().map(F2u)
    }

    fn atom(name: &str) -> Option<Self> {
        (name == "u").then(F2u::u)
    }

    fn coeff_text(&self) -> (bool, String) {
        let s = self.to_string();
        let simple = self.0.is_poly()
            && self
                .numer()
                .coeffs()
                .iter()
                .filter(|c| !c.is_zero())
                .count()
                == 1;
        if simple {
            (false, s)
        } else {
            (false, format!("({s})"))
        }
    }
}

impl Sqrt for F2u {
    fn sqrt(&self) -> Option<Self> {
        let n = f2_poly_sqrt(self.numer())?;
        let d = f2_poly_sqrt(self.denom())?;
        Some(F2u::new(n, d).expect("nonzero denominator"))
    }
}

impl fmt::Display for F2u {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display_in("u"))
    }
}

impl FromStr for F2u {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse::parse_element(s)
    }
}

impl Serialize for F2u {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        super::as_string::serialize(self, s)
    }
}

impl<'de> Deserialize<'de> for F2u {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        super::as_string::deserialize(d)
    }
}
