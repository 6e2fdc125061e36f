//! Finite-precision completions at ultrametric places: embeddings, Newton
//! lifting of simple roots, square detection in ℚ_p, and a brute-force root
//! counter used as an independent oracle.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{poly::Poly, rational::Rational, Field, Valuation};
use crate::error::{Error, Result};
use crate::places::{GlobalField, Place, MAX_ENUMERATED_RESIDUE_FIELD};

pub const DEFAULT_PRECISION: usize = 64;
const MAX_NEWTON_STEPS: usize = 64;

/// `uniformizer^valuation · Σ digits[i]·uniformizer^i`, with `precision`
/// unit digits known. Exact zero has infinite valuation and no digits; a
/// value only known to vanish modulo `π^k` has valuation `k` and precision 0.
///
/// Digits are little-endian: base-`p` digits at `p`, and at a place `P(u)`
/// of 𝔽₂(u) the residues of degree `< deg P` encoded as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalApprox {
    pub place: Place,
    pub valuation: Valuation,
    pub precision: usize,
    pub digits: Vec<u64>,
}

impl LocalApprox {
    pub fn zero(place: &Place) -> Self {
        LocalApprox {
            place: place.clone(),
            valuation: Valuation::Infinite,
            precision: 0,
            digits: Vec::new(),
        }
    }

    fn vanishing_to(place: &Place, k: i64) -> Self {
        LocalApprox {
            place: place.clone(),
            valuation: Valuation::Finite(k),
            precision: 0,
            digits: Vec::new(),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.valuation.is_infinite()
    }

    /// Exponent `k` such that the value is known modulo `π^k`.
    pub fn absolute_precision(&self) -> Valuation {
        match self.valuation {
            Valuation::Finite(v) => Valuation::Finite(v + self.precision as i64),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    /// The base-field element represented by the known digits.
    pub fn to_element<F: GlobalField>(&self) -> Result<F> {
        let Valuation::Finite(v) = self.valuation else {
            return Ok(F::zero());
        };
        let unit = F::from_digits(&self.digits, &self.place)?;
        let pi = F::uniformizer(&self.place)?;
        let scale = if v >= 0 {
            pi.pow(v as u64)
        } else {
            pi.inv()
                .expect("uniformizer is nonzero")
                .pow(v.unsigned_abs())
        };
        Ok(unit.mul(&scale))
    }

    /// Sum to the common absolute precision.
    pub fn add<F: GlobalField>(&self, other: &Self) -> Result<Self> {
        if self.place != other.place {
            return Err(Error::InvalidInput(
                "adding values at different places".into(),
            ));
        }
        let sum: F = self.to_element::<F>()?.add(&other.to_element::<F>()?);
        let abs = self.absolute_precision().min(other.absolute_precision());
        let Valuation::Finite(abs) = abs else {
            return embed_exact(&sum, &self.place);
        };
        match sum.val_at_place(&self.place)? {
            Valuation::Finite(v) if v < abs => embed(&sum, &self.place, (abs - v) as usize),
            _ => Ok(Self::vanishing_to(&self.place, abs)),
        }
    }

    /// Do the two values agree modulo `π^k`?
    pub fn agrees_with<F: GlobalField>(&self, other: &Self, k: i64) -> Result<bool> {
        let diff = self.to_element::<F>()?.sub(&other.to_element::<F>()?);
        Ok(diff.val_at_place(&self.place)?.is_at_least(k))
    }
}

fn embed_exact<F: GlobalField>(x: &F, place: &Place) -> Result<LocalApprox> {
    embed(x, place, DEFAULT_PRECISION)
}

/// Canonical embedding of a base-field element into the completion at
/// `place`, with `n` unit digits.
pub fn embed<F: GlobalField>(x: &F, place: &Place, n: usize) -> Result<LocalApprox> {
    if n == 0 {
        return Err(Error::InvalidInput("precision must be at least 1".into()));
    }
    let Valuation::Finite(v) = x.val_at_place(place)? else {
        return Ok(LocalApprox::zero(place));
    };
    let pi = F::uniformizer(place)?;
    let scale = if v >= 0 {
        pi.pow(v as u64)
    } else {
        pi.inv()
            .expect("uniformizer is nonzero")
            .pow(v.unsigned_abs())
    };
    let unit = x.div(&scale)?;
    Ok(LocalApprox {
        place: place.clone(),
        valuation: Valuation::Finite(v),
        precision: n,
        digits: unit.unit_digits(place, n)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub struct LiftResult<F> {
    pub root: LocalApprox,
    /// The last Newton iterate, exact in the base field.
    pub approximant: F,
    /// `v(f(approximant))`.
    pub residual_valuation: Valuation,
    pub iterations: usize,
    /// Residual valuation before each step and after the last one.
    pub residuals: Vec<Valuation>,
}

/// Newton–Hensel lifting of a simple residue root.
///
/// Runs `x ← x − f(x)/f'(x)` in exact base-field arithmetic until
/// `v(f(x)) ≥ n`, checking at every step that the residual valuation at
/// least doubles.
pub fn hensel_lift_simple_root<F: GlobalField>(
    f: &Poly<F>,
    start: &F,
    place: &Place,
    n: usize,
) -> Result<LiftResult<F>> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "target precision must be at least 1".into(),
        ));
    }
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidInput(
            "cannot lift roots of a constant".into(),
        ));
    }
    for c in f.coeffs() {
        if !c.val_at_place(place)?.is_at_least(0) {
            return Err(Error::Precondition(format!(
                "coefficient {c} is not integral at {place}"
            )));
        }
    }
    if !start.val_at_place(place)?.is_at_least(0) {
        return Err(Error::Precondition(format!(
            "start {start} is not integral at {place}"
        )));
    }
    let df = f.derivative();
    let mut x = start.clone();
    let mut residual = f.eval(&x).val_at_place(place)?;
    if !residual.is_at_least(1) {
        return Err(Error::Precondition(format!(
            "{start} is not a root of the reduction at {place}"
        )));
    }
    if df.eval(&x).val_at_place(place)? != Valuation::Finite(0) {
        return Err(Error::Precondition(format!(
            "{start} is not a simple root of the reduction at {place}"
        )));
    }
    let target = n as i64;
    let mut residuals = vec![residual];
    let mut iterations = 0;
    while !residual.is_at_least(target) {
        if iterations == MAX_NEWTON_STEPS {
            return Err(Error::Certificate(
                "Newton iteration did not converge".into(),
            ));
        }
        let step = f.eval(&x).div(&df.eval(&x))?;
        x = x.sub(&step);
        let next = f.eval(&x).val_at_place(place)?;
        if let (Valuation::Finite(r), false) = (
            residual,
            next.is_at_least(2 * residual.finite().unwrap_or(0)),
        ) {
            return Err(Error::Certificate(format!(
                "residual valuation went from {r} to {next}, expected doubling"
            )));
        }
        residual = next;
        residuals.push(residual);
        iterations += 1;
    }
    let root = match (residual, x.val_at_place(place)?) {
        (Valuation::Infinite, _) => embed(&x, place, n)?,
        (Valuation::Finite(r), Valuation::Finite(v)) if v < r => {
            embed(&x, place, ((r - v) as usize).min(n))?
        }
        (Valuation::Finite(r), _) => LocalApprox::vanishing_to(place, r),
    };
    Ok(LiftResult {
        root,
        approximant: x,
        residual_valuation: residual,
        iterations,
        residuals,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SquareWitness {
    /// A square root to the stated precision.
    Root {
        root: LocalApprox,
    },
    OddValuation {
        valuation: i64,
    },
    /// The unit part is not a square modulo `modulus` (p for odd p, 8 for p = 2).
    NonResidue {
        residue: u64,
        modulus: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareTest {
    pub is_square: bool,
    pub witness: SquareWitness,
}

fn mod_pow_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let m128 = m as u128;
    let mut base = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    b = acc as u64;
    b
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli–Shanks).
fn sqrt_mod_prime(a: u64, p: u64) -> u64 {
    if a == 0 {
        return 0;
    }
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let (mut q, mut s) = (p - 1, 0);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| mod_pow_u64(z, (p - 1) / 2, p) == p - 1)
        .expect("a non-residue exists");
    let mut m = s;
    let mut c = mod_pow_u64(z, q, p);
    let mut t = mod_pow_u64(a, q, p);
    let mut r = mod_pow_u64(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul(tt, tt);
            i += 1;
        }
        let b = mod_pow_u64(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    r
}

fn unit_mod(x: &Rational, modulus: &BigInt) -> Result<BigInt> {
    let inv = x.denom().extended_gcd(modulus);
    if !inv.gcd.is_one() {
        return Err(Error::Precondition("denominator is not a unit".into()));
    }
    Ok((x.numer() * inv.x).mod_floor(modulus))
}

fn digits_of(mut r: BigInt, p: u64, n: usize) -> Vec<u64> {
    let pb = BigInt::from(p);
    (0..n)
        .map(|_| {
            let (q, d) = r.div_rem(&pb);
            r = q;
            d.to_u64().expect("digit below p")
        })
        .collect()
}

/// Is the nonzero rational `x` a square in ℚ_p? A square root to
/// `precision` digits is attached when it is.
pub fn is_square_local(x: &Rational, p: u64, precision: usize) -> Result<SquareTest> {
    if x.is_zero() {
        return Err(Error::Precondition(
            "square test needs a nonzero element".into(),
        ));
    }
    if precision == 0 {
        return Err(Error::InvalidInput("precision must be at least 1".into()));
    }
    let place = Place::padic(p)?;
    let Valuation::Finite(v) = x.val_at_place(&place)? else {
        unreachable!("x is nonzero")
    };
    if v.rem_euclid(2) == 1 {
        return Ok(SquareTest {
            is_square: false,
            witness: SquareWitness::OddValuation { valuation: v },
        });
    }
    let pi = Rational::integer(p as i64);
    let scale = if v >= 0 {
        pi.pow(v as u64)
    } else {
        pi.inv().expect("p is nonzero").pow(v.unsigned_abs())
    };
    let unit = x.div(&scale)?;
    let pb = BigInt::from(p);
    let root = if p == 2 {
        let modulus = num_traits::pow(pb.clone(), precision + 1);
        let u = unit_mod(&unit, &modulus)?;
        let residue = (&u % 8u32).to_u64().expect("small");
        if residue != 1 {
            return Ok(SquareTest {
                is_square: false,
                witness: SquareWitness::NonResidue {
                    residue,
                    modulus: 8,
                },
            });
        }
        // invariant: r^2 = u mod 2^k
        let mut r = BigInt::one();
        for k in 3..=precision {
            let m = BigInt::one() << (k + 1);
            if !((&r * &r - &u).mod_floor(&m)).is_zero() {
                r += BigInt::one() << (k - 1);
            }
        }
        r.mod_floor(&(BigInt::one() << precision))
    } else {
        let modulus = num_traits::pow(pb.clone(), precision);
        let u = unit_mod(&unit, &modulus)?;
        let residue = (&u % p).to_u64().expect("below p");
        if mod_pow_u64(residue, (p - 1) / 2, p) != 1 {
            return Ok(SquareTest {
                is_square: false,
                witness: SquareWitness::NonResidue {
                    residue,
                    modulus: p,
                },
            });
        }
        let mut r = BigInt::from(sqrt_mod_prime(residue, p));
        while !((&r * &r - &u).mod_floor(&modulus)).is_zero() {
            let two_r_inv = (BigInt::from(2) * &r).extended_gcd(&modulus).x;
            r = (&r - (&r * &r - &u) * two_r_inv).mod_floor(&modulus);
        }
        r
    };
    Ok(SquareTest {
        is_square: true,
        witness: SquareWitness::Root {
            root: LocalApprox {
                place,
                valuation: Valuation::Finite(v / 2),
                precision,
                digits: digits_of(root, p, precision),
            },
        },
    })
}

/// Re-check a square-root witness: `root² ≡ x` to the root's precision.
pub fn verify_square_witness(x: &Rational, test: &SquareTest) -> Result<bool> {
    match (&test.witness, test.is_square) {
        (SquareWitness::Root { root }, true) => {
            let r: Rational = root.to_element()?;
            let Valuation::Finite(v) = root.valuation else {
                return Ok(false);
            };
            // (r + ε)^2 - x has valuation >= v + abs precision of r
            let bound = v + root.absolute_precision().finite().unwrap_or(0);
            let p = match root.place {
                Place::Padic(p) => p,
                _ => return Ok(false),
            };
            let slack = if p == 2 { 1 } else { 0 };
            Ok(r.square()
                .sub(x)
                .val_at_place(&root.place)?
                .is_at_least(bound + slack))
        }
        (SquareWitness::OddValuation { valuation }, false) => Ok(valuation.rem_euclid(2) == 1),
        (SquareWitness::NonResidue { residue, modulus }, false) => {
            let is_sq = (0..*modulus).any(|a| (a * a) % modulus == *residue);
            Ok(!is_sq)
        }
        _ => Ok(false),
    }
}

fn int_val(n: &BigInt, p: &BigInt) -> u64 {
    let mut m = n.clone();
    let mut e = 0;
    while !m.is_zero() {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            break;
        }
        m = q;
        e += 1;
    }
    e
}

/// Count roots of a squarefree `f ∈ ℚ[X]` in ℚ_p by exhaustive residue
/// search modulo `p^n`.
///
/// This is a brute-force oracle, independent of Newton lifting: after the
/// substitution `X = Y/p^k` that makes the monic polynomial integral, every
/// residue class modulo `p^n` is refined digit by digit. A solution `r`
/// with `e = v(G'(r))` and `2e < n` determines exactly one root, namely the
/// one congruent to `r` modulo `p^(n−e)`; classes with larger `e` are
/// ignored, so `n` must be large relative to root separation.
pub fn count_roots_local_oracle(f: &Poly<Rational>, p: u64, n: usize) -> Result<usize> {
    if n == 0 || n > 12 {
        return Err(Error::Guard(format!("oracle precision {n} outside 1..=12")));
    }
    if p > MAX_ENUMERATED_RESIDUE_FIELD {
        return Err(Error::Guard(format!("prime {p} too large for enumeration")));
    }
    let place = Place::padic(p)?;
    let d = f
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if d == 0 {
        return Ok(0);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(f.to_string()));
    }
    let m = f.monic();
    // smallest k with v(c_i) + k(d - i) >= 0 for all i
    let mut k = 0i64;
    for (i, c) in m.coeffs().iter().enumerate().take(d) {
        if let Valuation::Finite(v) = c.val_at_place(&place)? {
            if v < 0 {
                let span = (d - i) as i64;
                k = k.max((-v + span - 1) / span);
            }
        }
    }
    let pk = Rational::integer(p as i64).pow(k as u64);
    let scaled: Vec<Rational> = m
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c.mul(&pk.pow((d - i) as u64)))
        .collect();
    let lcm = scaled
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let g: Vec<BigInt> = scaled
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let dg: Vec<BigInt> = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let eval = |cs: &[BigInt], x: &BigInt, m: &BigInt| {
        cs.iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
    };

    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut level: Vec<BigInt> = (0..p)
        .map(BigInt::from)
        .filter(|r| eval(&g, r, &modulus).is_zero())
        .collect();
    for _ in 1..n {
        let next_modulus = &modulus * &pb;
        let mut next = Vec::new();
        for r in &level {
            for j in 0..p {
                let cand = r + &modulus * BigInt::from(j);
                if eval(&g, &cand, &next_modulus).is_zero() {
                    next.push(cand);
                }
            }
        }
        level = next;
        modulus = next_modulus;
    }
    let mut roots = BTreeSet::new();
    for r in &level {
        let dv = eval(&dg, r, &modulus);
        if dv.is_zero() {
            continue;
        }
        let e = int_val(&dv, &pb) as usize;
        if 2 * e >= n {
            continue;
        }
        let class_mod = num_traits::pow(pb.clone(), n - e);
        roots.insert((e, r.mod_floor(&class_mod)));
    }
    Ok(roots.len())
}
