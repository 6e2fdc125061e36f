//! Irreducibility of `f(X, γ(Y, t))` over `K(Y)`.
//!
//! Outside characteristic 2 the polynomial is reducible exactly when its
//! discriminant `1 + 4γ²` is a square in `K(Y)`, i.e. when
//! `(Y² + t)² + 4(tY)²` is a square in `K[Y]`. In characteristic 2 it is
//! equivalent to `X² + X + γ`, which has no root because `γ` has valuation
//! `−1` at the place `Y² + t` while `v(x² + x)` is even whenever negative.

use serde::{Deserialize, Serialize};

use super::gamma::{gamma_ratfunc, is_boundary};
use crate::algebra::{
    poly::Poly,
    ratfunc::{multiplicity_valuation, RatFunc},
    sqrt::{poly_square_root, ratfunc_valuation, NonSquareTranscript, SquareRootOutcome},
    Field, Valuation,
};
use crate::error::{Error, Result};
use crate::places::{
    nonsquare_certificate, verify_nonsquare_certificate, GlobalField, NonSquareCertificate,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Characteristic {
    NotTwo,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma2Verdict {
    Irreducible,
    ReducibleBoundary,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub enum Lemma2Evidence<F: GlobalField> {
    /// `(Y² + t)² + 4(tY)²` is not a square in `K[Y]`.
    NotASquare {
        discriminant_numerator: Poly<F>,
        transcript: NonSquareTranscript<F>,
    },
    /// The discriminant numerator is `root²`; `roots` are the two roots of
    /// `f(X, γ(Y, t))` in `K(Y)`.
    BoundarySquare {
        discriminant_numerator: Poly<F>,
        root: Poly<F>,
        roots: Vec<RatFunc<F>>,
    },
    /// `t` is not a square, so `Y² + t` is irreducible, and `γ` has odd
    /// valuation at it.
    OddValuation {
        t_nonsquare: NonSquareCertificate,
        place_polynomial: Poly<F>,
        valuation: Valuation,
    },
    /// `t = 0` in characteristic 2: `f = X(X + 1)`.
    Degenerate { roots: Vec<F> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub struct Lemma2Certificate<F: GlobalField> {
    pub t: F,
    pub characteristic: Characteristic,
    pub verdict: Lemma2Verdict,
    pub evidence: Lemma2Evidence<F>,
}

fn y_squared_plus<F: Field>(t: &F) -> Poly<F> {
    Poly::new(vec![t.clone(), F::zero(), F::one()])
}

/// `(Y² + t)² + 4(tY)²`, the numerator of `1 + 4γ(Y, t)²`.
pub fn discriminant_numerator<F: Field>(t: &F) -> Poly<F> {
    let ty = Poly::new(vec![F::zero(), t.clone()]);
    y_squared_plus(t)
        .square()
        .add(&ty.square().scale(&F::from_i64(4)))
}

/// Certify irreducibility of `f(X, γ(Y, t))` over `K(Y)`. The boundary
/// values `t ∈ {0, −1}` are rejected unless `allow_boundary` is set.
pub fn lemma2_certify<F: GlobalField>(t: &F, allow_boundary: bool) -> Result<Lemma2Certificate<F>> {
    if is_boundary(t) && !allow_boundary {
        return Err(Error::InvalidInput(format!(
            "t = {t} is excluded (t must avoid 0 and -1)"
        )));
    }
    if F::characteristic() == 2 {
        certify_char_two(t)
    } else {
        certify_odd_char(t)
    }
}

fn certify_odd_char<F: GlobalField>(t: &F) -> Result<Lemma2Certificate<F>> {
    let h = discriminant_numerator(t);
    let (verdict, evidence) = match poly_square_root(&h)? {
        SquareRootOutcome::NotSquare { transcript } => {
            if is_boundary(t) {
                return Err(Error::Certificate(format!(
                    "boundary value t = {t} produced a non-square discriminant"
                )));
            }
            (
                Lemma2Verdict::Irreducible,
                Lemma2Evidence::NotASquare {
                    discriminant_numerator: h,
                    transcript,
                },
            )
        }
        SquareRootOutcome::Square { root } => {
            if !is_boundary(t) {
                return Err(Error::Certificate(format!(
                    "discriminant is a square for t = {t} outside the boundary"
                )));
            }
            // X = (−1 ± root/(Y² + t)) / 2
            let den = RatFunc::from_poly(y_squared_plus(t));
            let s = RatFunc::from_poly(root.clone()).div(&den)?;
            let half = RatFunc::constant(F::from_i64(2).inv().expect("odd characteristic"));
            let minus_one = RatFunc::<F>::one().neg();
            let roots = vec![minus_one.add(&s).mul(&half), minus_one.sub(&s).mul(&half)];
            (
                Lemma2Verdict::ReducibleBoundary,
                Lemma2Evidence::BoundarySquare {
                    discriminant_numerator: h,
                    root,
                    roots,
                },
            )
        }
    };
    Ok(Lemma2Certificate {
        t: t.clone(),
        characteristic: Characteristic::NotTwo,
        verdict,
        evidence,
    })
}

fn certify_char_two<F: GlobalField>(t: &F) -> Result<Lemma2Certificate<F>> {
    if t.is_zero() {
        return Ok(Lemma2Certificate {
            t: t.clone(),
            characteristic: Characteristic::Two,
            verdict: Lemma2Verdict::Degenerate,
            evidence: Lemma2Evidence::Degenerate {
                roots: vec![F::zero(), F::one()],
            },
        });
    }
    let Some(t_nonsquare) = nonsquare_certificate(t) else {
        return Err(Error::Precondition(format!("t = {t} is a square")));
    };
    let m = y_squared_plus(t);
    let valuation = ratfunc_valuation(&gamma_ratfunc(t), &m)?;
    if valuation != Valuation::Finite(-1) {
        return Err(Error::Certificate(format!(
            "valuation of gamma at Y^2 + t is {valuation}, expected -1"
        )));
    }
    Ok(Lemma2Certificate {
        t: t.clone(),
        characteristic: Characteristic::Two,
        verdict: Lemma2Verdict::Irreducible,
        evidence: Lemma2Evidence::OddValuation {
            t_nonsquare,
            place_polynomial: m,
            valuation,
        },
    })
}

impl<F: GlobalField> Lemma2Certificate<F> {
    /// Re-check the evidence with ring operations only.
    pub fn verify(&self) -> bool {
        let t = &self.t;
        match (&self.evidence, self.verdict) {
            (
                Lemma2Evidence::NotASquare {
                    discriminant_numerator: h,
                    transcript,
                },
                Lemma2Verdict::Irreducible,
            ) => *h == discriminant_numerator(t) && transcript.verify(h),
            (
                Lemma2Evidence::BoundarySquare {
                    discriminant_numerator: h,
                    root,
                    roots,
                },
                Lemma2Verdict::ReducibleBoundary,
            ) => {
                let gamma = gamma_ratfunc(t);
                let c2 = gamma.square();
                *h == discriminant_numerator(t)
                    && root.square() == *h
                    && roots.len() == 2
                    && roots[0] != roots[1]
                    && roots.iter().all(|x| x.square().add(x).sub(&c2).is_zero())
            }
            (
                Lemma2Evidence::OddValuation {
                    t_nonsquare,
                    place_polynomial,
                    valuation,
                },
                Lemma2Verdict::Irreducible,
            ) => {
                *place_polynomial == y_squared_plus(t)
                    && verify_nonsquare_certificate(t, t_nonsquare)
                    && t.sqrt().is_none()
                    && multiplicity_valuation(&gamma_ratfunc(t), place_polynomial) == *valuation
                    && valuation
                        .finite()
                        .is_some_and(|v| v < 0 && v.rem_euclid(2) == 1)
            }
            (Lemma2Evidence::Degenerate { roots }, Lemma2Verdict::Degenerate) => {
                t.is_zero() && roots.iter().all(|x| x.square().add(x).is_zero())
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{f2u::F2u, rational::Rational};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn rational_examples() {
        let c = lemma2_certify(&q("3"), false).unwrap();
        assert_eq!(c.verdict, Lemma2Verdict::Irreducible);
        assert!(c.verify());
        assert!(lemma2_certify(&q("-1"), false).is_err());
        let b = lemma2_certify(&q("-1"), true).unwrap();
        assert_eq!(b.verdict, Lemma2Verdict::ReducibleBoundary);
        let Lemma2Evidence::BoundarySquare { root, .. } = &b.evidence else {
            panic!()
        };
        assert_eq!(root, &Poly::parse_in("Y^2+1", "Y").unwrap());
        assert!(b.verify());
        let z = lemma2_certify(&q("0"), true).unwrap();
        assert_eq!(z.verdict, Lemma2Verdict::ReducibleBoundary);
        assert!(z.verify());
    }

    #[test]
    fn function_field_examples() {
        for s in ["u", "u^2+u", "u+1", "u^2+u+1"] {
            let t: F2u = s.parse().unwrap();
            let c = lemma2_certify(&t, false).unwrap();
            assert_eq!(c.verdict, Lemma2Verdict::Irreducible);
            assert!(c.verify(), "{s}");
            let Lemma2Evidence::OddValuation { valuation, .. } = c.evidence else {
                panic!()
            };
            assert_eq!(valuation, Valuation::Finite(-1));
        }
        assert!(matches!(
            lemma2_certify(&"u^2".parse::<F2u>().unwrap(), false),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            lemma2_certify(&F2u::zero(), true).unwrap().verdict,
            Lemma2Verdict::Degenerate
        );
    }

    #[test]
    fn tampered_evidence_fails() {
        let mut c = lemma2_certify(&q("3"), false).unwrap();
        c.t = q("5");
        assert!(!c.verify());
    }
}
