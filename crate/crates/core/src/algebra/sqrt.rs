//! Exact polynomial square roots, irreducibility checks for small degree and
//! valuations of rational functions at irreducible polynomials.

use serde::{Deserialize, Serialize};

use super::{
    f2u::{artin_schreier_root, F2u},
    fp::Fp,
    poly::Poly,
    ratfunc::{multiplicity_valuation, RatFunc},
    rational::Rational,
    Field, Sqrt, Valuation,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(
    serialize = "F: Serialize",
    deserialize = "F: Field + Deserialize<'de>"
))]
pub enum SquareRootOutcome<F: Field> {
    Square { root: Poly<F> },
    NotSquare { transcript: NonSquareTranscript<F> },
}

impl<F: Field> SquareRootOutcome<F> {
    pub fn root(&self) -> Option<&Poly<F>> {
        match self {
            SquareRootOutcome::Square { root } => Some(root),
            SquareRootOutcome::NotSquare { .. } => None,
        }
    }
}

/// Why a polynomial is not a square; each variant can be re-checked with
/// ring operations alone via [`NonSquareTranscript::verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
#[serde(bound(
    serialize = "F: Serialize",
    deserialize = "F: Field + Deserialize<'de>"
))]
pub enum NonSquareTranscript<F: Field> {
    OddDegree {
        degree: usize,
    },
    LeadingNotSquare {
        leading: F,
    },
    /// `candidate` is the only possible root (up to sign) given the top half
    /// of the coefficients, and `candidate² − h = difference ≠ 0`.
    Mismatch {
        candidate: Poly<F>,
        difference: Poly<F>,
    },
}

impl<F: Sqrt> NonSquareTranscript<F> {
    pub fn verify(&self, h: &Poly<F>) -> bool {
        match self {
            NonSquareTranscript::OddDegree { degree } => {
                h.degree() == Some(*degree) && degree % 2 == 1
            }
            NonSquareTranscript::LeadingNotSquare { leading } => {
                h.degree().is_some_and(|d| d % 2 == 0)
                    && h.leading_coeff() == Some(leading)
                    && leading.sqrt().is_none()
            }
            NonSquareTranscript::Mismatch {
                candidate,
                difference,
            } => {
                let (Some(d), Some(m)) = (h.degree(), candidate.degree()) else {
                    return false;
                };
                let sq = candidate.square();
                d == 2 * m
                    && (m..=d).all(|i| sq.coeff(i) == h.coeff(i))
                    && !difference.is_zero()
                    && sq.sub(h) == *difference
            }
        }
    }
}

/// Decide whether `h` is a square in `F[X]` and return the root when it is.
///
/// The root is built from the leading coefficient downwards by matching
/// coefficients of `s²` against `h`, and a "square" verdict is only returned
/// after checking `s² = h` exactly. Over ℚ the root has positive leading
/// coefficient.
pub fn poly_square_root<F: Sqrt>(h: &Poly<F>) -> Result<SquareRootOutcome<F>> {
    if F::characteristic() == 2 {
        return Err(Error::Unsupported(
            "square roots of polynomials in characteristic 2".into(),
        ));
    }
    let Some(deg) = h.degree() else {
        return Ok(SquareRootOutcome::Square { root: Poly::zero() });
    };
    if deg % 2 == 1 {
        return Ok(SquareRootOutcome::NotSquare {
            transcript: NonSquareTranscript::OddDegree { degree: deg },
        });
    }
    let m = deg / 2;
    let lead = h.coeff(deg);
    let Some(top) = lead.sqrt() else {
        return Ok(SquareRootOutcome::NotSquare {
            transcript: NonSquareTranscript::LeadingNotSquare { leading: lead },
        });
    };
    let two_top_inv = top.add(&top).inv().expect("characteristic is not 2");
    // s[m - k] from the coefficient of X^(2m - k)
    let mut s = vec![F::zero(); m + 1];
    s[m] = top;
    for k in 1..=m {
        let mut acc = h.coeff(2 * m - k);
        for i in 1..k {
            acc = acc.sub(&s[m - i].mul(&s[m - k + i]));
        }
        s[m - k] = acc.mul(&two_top_inv);
    }
    let candidate = Poly::new(s);
    let difference = candidate.square().sub(h);
    if difference.is_zero() {
        Ok(SquareRootOutcome::Square { root: candidate })
    } else {
        Ok(SquareRootOutcome::NotSquare {
            transcript: NonSquareTranscript::Mismatch {
                candidate,
                difference,
            },
        })
    }
}

/// Irreducibility over the coefficient field, for the degrees this crate needs.
pub trait IrreducibilityCheck: Field {
    /// `Ok(true)` when `p` is irreducible, `Err(Unsupported)` when the degree
    /// is outside what can be decided here.
    fn check_irreducible(p: &Poly<Self>) -> Result<bool>;
}

impl IrreducibilityCheck for Rational {
    fn check_irreducible(p: &Poly<Self>) -> Result<bool> {
        match p.degree() {
            None | Some(0) => Ok(false),
            Some(1) => Ok(true),
            Some(2) => {
                let disc = p
                    .coeff(1)
                    .square()
                    .sub(&Rational::from_i64(4).mul(&p.coeff(2)).mul(&p.coeff(0)));
                Ok(disc.sqrt().is_none())
            }
            Some(d) => Err(Error::Unsupported(format!(
                "irreducibility over Q in degree {d}"
            ))),
        }
    }
}

impl<const P: u64> IrreducibilityCheck for Fp<P> {
    fn check_irreducible(p: &Poly<Self>) -> Result<bool> {
        let Some(d) = p.degree() else {
            return Ok(false);
        };
        if d == 0 {
            return Ok(false);
        }
        let half = d / 2;
        if (P as f64).powi(half as i32) > (1u64 << 20) as f64 {
            return Err(Error::Guard(format!(
                "trial division over F_{P} in degree {d}"
            )));
        }
        for k in 1..=half {
            let count = P.pow(k as u32);
            for idx in 0..count {
                let mut coeffs: Vec<Fp<P>> = (0..k)
                    .scan(idx, |rest, _| {
                        let c = Fp::new(*rest % P);
                        *rest /= P;
                        Some(c)
                    })
                    .collect();
                coeffs.push(Fp::one());
                if p.rem(&Poly::new(coeffs))?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl IrreducibilityCheck for F2u {
    fn check_irreducible(p: &Poly<Self>) -> Result<bool> {
        match p.degree() {
            None | Some(0) => Ok(false),
            Some(1) => Ok(true),
            Some(2) => {
                let m = p.monic();
                let (b, c) = (m.coeff(1), m.coeff(0));
                if b.is_zero() {
                    Ok(c.sqrt().is_none())
                } else {
                    let a = c.div(&b.square())?;
                    Ok(!artin_schreier_root(&a).has_root())
                }
            }
            Some(d) => Err(Error::Unsupported(format!(
                "irreducibility over F2(u) in degree {d}"
            ))),
        }
    }
}

/// Normalized valuation of `r` at the place of `F(Y)` attached to the
/// irreducible polynomial `p`.
pub fn ratfunc_valuation<F: IrreducibilityCheck>(r: &RatFunc<F>, p: &Poly<F>) -> Result<Valuation> {
    if !F::check_irreducible(p)? {
        return Err(Error::InvalidInput(format!(
            "{} is not irreducible",
            p.display_in("Y")
        )));
    }
    Ok(multiplicity_valuation(r, &p.monic()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{fp::F2, parse::parse_expr};

    fn qy(s: &str) -> Poly<Rational> {
        Poly::parse_in(s, "Y").unwrap()
    }

    #[test]
    fn square_root_examples() {
        let r = poly_square_root(&qy("Y^4+2*Y^2+1")).unwrap();
        assert_eq!(r.root(), Some(&qy("Y^2+1")));
        let boundary = qy("(Y^2-1)^2+4*Y^2");
        assert_eq!(
            poly_square_root(&boundary).unwrap().root(),
            Some(&qy("Y^2+1"))
        );
    }

    #[test]
    fn non_square_transcript_verifies() {
        let h = qy("(Y^2+3)^2+36*Y^2");
        let out = poly_square_root(&h).unwrap();
        let SquareRootOutcome::NotSquare { transcript } = out else {
            panic!("expected not a square");
        };
        // coefficient matching: a = 0, 2b = 42, then b^2 = 441 != 9
        assert_eq!(
            transcript,
            NonSquareTranscript::Mismatch {
                candidate: qy("Y^2+21"),
                difference: qy("432"),
            }
        );
        assert!(transcript.verify(&h));
        assert!(!transcript.verify(&qy("Y^4+2*Y^2+1")));
    }

    #[test]
    fn odd_degree_and_bad_leading() {
        let out = poly_square_root(&qy("Y^3+1")).unwrap();
        assert!(matches!(
            out,
            SquareRootOutcome::NotSquare {
                transcript: NonSquareTranscript::OddDegree { degree: 3 }
            }
        ));
        let h = qy("2*Y^2+1");
        let SquareRootOutcome::NotSquare { transcript } = poly_square_root(&h).unwrap() else {
            panic!()
        };
        assert!(transcript.verify(&h));
    }

    #[test]
    fn char_two_is_unsupported() {
        let h = Poly::<F2>::parse_in("X^2+1", "X").unwrap();
        assert!(matches!(poly_square_root(&h), Err(Error::Unsupported(_))));
    }

    #[test]
    fn valuation_examples() {
        let y2u = Poly::<F2u>::parse_in("Y^2+u", "Y").unwrap();
        let gamma: RatFunc<F2u> = parse_expr("u*Y/(Y^2+u)", &|n: &str| match n {
            "Y" => Some(RatFunc::from_poly(Poly::x())),
            _ => F2u::atom(n).map(RatFunc::constant),
        })
        .unwrap();
        assert_eq!(
            ratfunc_valuation(&gamma, &y2u).unwrap(),
            Valuation::Finite(-1)
        );

        let r = RatFunc::new(qy("Y^3"), qy("Y+1")).unwrap();
        assert_eq!(
            ratfunc_valuation(&r, &qy("Y")).unwrap(),
            Valuation::Finite(3)
        );
        assert_eq!(
            ratfunc_valuation(&RatFunc::zero(), &qy("Y")).unwrap(),
            Valuation::Infinite
        );
        assert!(matches!(
            ratfunc_valuation(&r, &qy("Y^2-1")),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn irreducibility_over_f2() {
        let p = |s: &str| Poly::<F2>::parse_in(s, "u").unwrap();
        assert!(F2::check_irreducible(&p("u^2+u+1")).unwrap());
        assert!(!F2::check_irreducible(&p("u^2+1")).unwrap());
        assert!(F2::check_irreducible(&p("u^3+u+1")).unwrap());
        assert!(!F2::check_irreducible(&p("u^4+u^2+1")).unwrap());
    }
}
