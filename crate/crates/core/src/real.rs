//! Exact real root counting over ℚ with Sturm sequences.

use serde::{Deserialize, Serialize};

use crate::algebra::{poly::Poly, rational::Rational, Field};
use crate::error::{Error, Result};

/// `f, f', −rem(f, f'), …` down to the last nonzero remainder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SturmChain {
    pub polynomials: Vec<Poly<Rational>>,
}

fn sign(x: &Rational) -> i32 {
    x.signum()
}

fn count_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

impl SturmChain {
    pub fn len(&self) -> usize {
        self.polynomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polynomials.is_empty()
    }

    /// The last entry, a scalar multiple of `gcd(f, f')`.
    pub fn last(&self) -> &Poly<Rational> {
        self.polynomials.last().expect("chain is nonempty")
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        count_variations(self.polynomials.iter().map(|p| sign(&p.eval(x))))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        count_variations(
            self.polynomials
                .iter()
                .map(|p| sign(&p.leading_coeff().cloned().unwrap_or_else(Rational::zero))),
        )
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        count_variations(self.polynomials.iter().map(|p| {
            let s = sign(&p.leading_coeff().cloned().unwrap_or_else(Rational::zero));
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }
}

pub fn sturm_chain(f: &Poly<Rational>) -> Result<SturmChain> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "Sturm chain of the zero polynomial".into(),
        ));
    }
    let mut chain = vec![f.clone()];
    let df = f.derivative();
    if !df.is_zero() {
        chain.push(df);
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1])?;
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
    }
    Ok(SturmChain { polynomials: chain })
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn count_real_roots(f: &Poly<Rational>) -> Result<usize> {
    let chain = sturm_chain(f)?;
    if chain.last().degree() != Some(0) {
        return Err(Error::NotSquarefree(f.to_string()));
    }
    Ok(chain.variations_at_neg_inf() - chain.variations_at_pos_inf())
}

/// Splitting of `X² + X − c²` over the real closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealSplitting {
    pub c: Rational,
    pub discriminant: Rational,
    pub real_root_count: usize,
    pub splits: bool,
}

pub fn quadratic_splits_real(c: &Rational) -> RealSplitting {
    let disc = Rational::one().add(&Rational::from_i64(4).mul(&c.square()));
    let f = Poly::new(vec![c.square().neg(), Rational::one(), Rational::one()]);
    let count = count_real_roots(&f).expect("discriminant is at least 1");
    RealSplitting {
        c: c.clone(),
        discriminant: disc,
        real_root_count: count,
        splits: count == 2,
    }
}
