//! Does a polynomial split into linear factors over the completion or real
//! closure at a place?

use serde::{Deserialize, Serialize};

use crate::algebra::{poly::Poly, Field, Valuation};
use crate::error::{Error, Result};
use crate::padic::{
    hensel_lift_simple_root, is_square_local, verify_square_witness, LiftResult, SquareTest,
};
use crate::places::{as_rational_poly, GlobalField, Place};
use crate::real::count_real_roots;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitMethod {
    Linear,
    RealSturm,
    LocalSquare,
    ArtinSchreierLift,
    SimpleRootLift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalVerdict {
    Splits,
    DoesNotSplit,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub enum SplitEvidence<F: GlobalField> {
    Linear {
        root: F,
    },
    RealRoots {
        real_root_count: usize,
        degree: usize,
    },
    DoubleRoot {
        root: F,
    },
    LocalSquare {
        discriminant: F,
        test: SquareTest,
        /// Lifts of both residue roots, when the reduction has two simple roots.
        lifts: Vec<LiftResult<F>>,
    },
    /// `X = scale·(Z + shift)` turns the quadratic into `Z² + Z + reduced`
    /// with `reduced` integral; `lifts` are roots of that polynomial.
    ArtinSchreier {
        scale: F,
        shift: F,
        reduced: F,
        residue_roots: Vec<F>,
        lifts: Vec<LiftResult<F>>,
        obstruction: Option<String>,
    },
    /// `Y = π^k·X` makes the polynomial monic and integral.
    SimpleRoots {
        substitution_exponent: u64,
        integral_polynomial: Poly<F>,
        residue_roots: Vec<F>,
        multiple_residue_roots: Vec<F>,
        lifts: Vec<LiftResult<F>>,
    },
    Unsupported {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub struct PlaceSplitting<F: GlobalField> {
    pub place: Place,
    pub method: SplitMethod,
    pub verdict: LocalVerdict,
    pub evidence: SplitEvidence<F>,
}

impl<F: GlobalField> PlaceSplitting<F> {
    pub fn splits(&self) -> bool {
        self.verdict == LocalVerdict::Splits
    }
}

fn check_place<F: GlobalField>(place: &Place) -> Result<()> {
    if place.field() != F::TAG {
        return Err(Error::InvalidInput(format!(
            "place {place} is not a place of {}",
            F::TAG
        )));
    }
    Ok(())
}

fn verdict_of(splits: bool) -> LocalVerdict {
    if splits {
        LocalVerdict::Splits
    } else {
        LocalVerdict::DoesNotSplit
    }
}

fn pow_signed<F: Field>(x: &F, e: i64) -> F {
    if e >= 0 {
        x.pow(e as u64)
    } else {
        x.inv().expect("nonzero").pow(e.unsigned_abs())
    }
}

/// Splitting of a monic quadratic `q` at `place`.
pub fn splits_at_place<F: GlobalField>(
    q: &Poly<F>,
    place: &Place,
    precision: usize,
) -> Result<PlaceSplitting<F>> {
    if q.degree() != Some(2) || !q.is_monic() {
        return Err(Error::InvalidInput(format!("{q} is not a monic quadratic")));
    }
    check_place::<F>(place)?;
    if *place == Place::Real {
        return real_split(q);
    }
    if F::characteristic() == 2 {
        artin_schreier_split(q, place, precision)
    } else {
        local_square_split(q, place, precision)
    }
}

pub(crate) fn real_split<F: GlobalField>(q: &Poly<F>) -> Result<PlaceSplitting<F>> {
    let qr = as_rational_poly(q)
        .ok_or_else(|| Error::InvalidInput("the real place needs a polynomial over Q".into()))?;
    let degree = q.degree().unwrap_or(0);
    if degree == 2 {
        let (b, c) = (q.coeff(1), q.coeff(0));
        if b.square().sub(&F::from_i64(4).mul(&c)).is_zero() {
            let root = b.neg().div(&F::from_i64(2))?;
            return Ok(PlaceSplitting {
                place: Place::Real,
                method: SplitMethod::RealSturm,
                verdict: LocalVerdict::Splits,
                evidence: SplitEvidence::DoubleRoot { root },
            });
        }
    }
    let count = count_real_roots(&qr)?;
    Ok(PlaceSplitting {
        place: Place::Real,
        method: SplitMethod::RealSturm,
        verdict: verdict_of(count == degree),
        evidence: SplitEvidence::RealRoots {
            real_root_count: count,
            degree,
        },
    })
}

fn is_integral<F: GlobalField>(p: &Poly<F>, place: &Place) -> Result<bool> {
    for c in p.coeffs() {
        if !c.val_at_place(place)?.is_at_least(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Residue roots of an integral polynomial, split into simple and multiple.
fn residue_roots<F: GlobalField>(p: &Poly<F>, place: &Place) -> Result<(Vec<F>, Vec<F>)> {
    let dp = p.derivative();
    let mut simple = Vec::new();
    let mut multiple = Vec::new();
    for r in F::residue_representatives(place)? {
        if p.eval(&r).val_at_place(place)?.is_at_least(1) {
            if dp.eval(&r).val_at_place(place)? == Valuation::Finite(0) {
                simple.push(r);
            } else {
                multiple.push(r);
            }
        }
    }
    Ok((simple, multiple))
}

fn local_square_split<F: GlobalField>(
    q: &Poly<F>,
    place: &Place,
    precision: usize,
) -> Result<PlaceSplitting<F>> {
    let (b, c) = (q.coeff(1), q.coeff(0));
    let disc = b.square().sub(&F::from_i64(4).mul(&c));
    if disc.is_zero() {
        return Ok(PlaceSplitting {
            place: place.clone(),
            method: SplitMethod::LocalSquare,
            verdict: LocalVerdict::Splits,
            evidence: SplitEvidence::DoubleRoot {
                root: b.neg().div(&F::from_i64(2))?,
            },
        });
    }
    let (Some(d), Place::Padic(p)) = (disc.as_rational(), place) else {
        return Err(Error::Unsupported(format!("square test at {place}")));
    };
    let test = is_square_local(d, *p, precision)?;
    let mut lifts = Vec::new();
    if is_integral(q, place)? {
        if let Ok((simple, _)) = residue_roots(q, place) {
            if simple.len() == 2 {
                for r in &simple {
                    lifts.push(hensel_lift_simple_root(q, r, place, precision)?);
                }
            }
        }
    }
    if !lifts.is_empty() && !test.is_square {
        return Err(Error::Certificate(format!(
            "roots lifted at {place} although the discriminant {disc} is not a local square"
        )));
    }
    Ok(PlaceSplitting {
        place: place.clone(),
        method: SplitMethod::LocalSquare,
        verdict: verdict_of(test.is_square),
        evidence: SplitEvidence::LocalSquare {
            discriminant: disc,
            test,
            lifts,
        },
    })
}

const MAX_REDUCTION_STEPS: usize = 256;

fn artin_schreier_split<F: GlobalField>(
    q: &Poly<F>,
    place: &Place,
    precision: usize,
) -> Result<PlaceSplitting<F>> {
    let (b, c) = (q.coeff(1), q.coeff(0));
    if b.is_zero() {
        return Ok(PlaceSplitting {
            place: place.clone(),
            method: SplitMethod::ArtinSchreierLift,
            verdict: LocalVerdict::Undecided,
            evidence: SplitEvidence::Unsupported {
                reason: "inseparable quadratic X^2 + c".into(),
            },
        });
    }
    let mut a = c.div(&b.square())?;
    let mut shift = F::zero();
    // a = s² gives the same splitting field as a = s
    for _ in 0..MAX_REDUCTION_STEPS {
        match a.sqrt() {
            Some(s) if s != a && !a.is_zero() => {
                shift = shift.add(&s);
                a = s;
            }
            _ => break,
        }
    }
    let pi = F::uniformizer(place)?;
    let reps = F::residue_representatives(place)?;
    let mut obstruction = None;
    for _ in 0..MAX_REDUCTION_STEPS {
        let Valuation::Finite(v) = a.val_at_place(place)? else {
            break;
        };
        if v >= 0 {
            break;
        }
        if v.rem_euclid(2) == 1 {
            obstruction = Some(format!("reduced constant has odd negative valuation {v}"));
            break;
        }
        // cancel the leading term with w² where w = s·π^(v/2)
        let lead = F::from_digits(&a.mul(&pow_signed(&pi, -v)).unit_digits(place, 1)?, place)?;
        let s = reps
            .iter()
            .find(|s| {
                s.square()
                    .sub(&lead)
                    .val_at_place(place)
                    .is_ok_and(|x| x.is_at_least(1))
            })
            .cloned()
            .ok_or_else(|| {
                Error::Certificate("residue field element without square root".into())
            })?;
        let w = s.mul(&pow_signed(&pi, v / 2));
        a = a.add(&w.square()).add(&w);
        shift = shift.add(&w);
    }
    let mut roots = Vec::new();
    let mut lifts = Vec::new();
    if obstruction.is_none() && a.val_at_place(place)?.is_at_least(0) {
        let g = Poly::new(vec![a.clone(), F::one(), F::one()]);
        let (simple, _) = residue_roots(&g, place)?;
        for r in &simple {
            lifts.push(hensel_lift_simple_root(&g, r, place, precision)?);
        }
        roots = simple;
        if roots.is_empty() {
            obstruction = Some("Z^2 + Z + a has no root in the residue field".into());
        }
    } else if obstruction.is_none() {
        obstruction = Some("reduction did not reach an integral constant".into());
    }
    let splits = roots.len() == 2;
    Ok(PlaceSplitting {
        place: place.clone(),
        method: SplitMethod::ArtinSchreierLift,
        verdict: verdict_of(splits),
        evidence: SplitEvidence::ArtinSchreier {
            scale: b,
            shift,
            reduced: a,
            residue_roots: roots,
            lifts,
            obstruction,
        },
    })
}

/// Splitting of a squarefree polynomial of any degree by lifting simple
/// residue roots. The answer is exact unless some residue root is multiple,
/// in which case the verdict is undecided.
pub fn simple_root_split<F: GlobalField>(
    m: &Poly<F>,
    place: &Place,
    precision: usize,
) -> Result<PlaceSplitting<F>> {
    check_place::<F>(place)?;
    if !place.is_ultrametric() {
        return Err(Error::InvalidInput(
            "simple-root lifting needs an ultrametric place".into(),
        ));
    }
    let d = m
        .degree()
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::InvalidInput("constant polynomial".into()))?;
    let m = m.monic();
    let mut k = 0i64;
    for (i, c) in m.coeffs().iter().enumerate().take(d) {
        if let Valuation::Finite(v) = c.val_at_place(place)? {
            let span = (d - i) as i64;
            if v < 0 {
                k = k.max((-v + span - 1) / span);
            }
        }
    }
    let pik = F::uniformizer(place)?.pow(k as u64);
    let g = Poly::new(
        m.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c.mul(&pik.pow((d - i) as u64)))
            .collect(),
    );
    let (simple, multiple) = match residue_roots(&g, place) {
        Ok(r) => r,
        Err(Error::Guard(reason)) => {
            return Ok(PlaceSplitting {
                place: place.clone(),
                method: SplitMethod::SimpleRootLift,
                verdict: LocalVerdict::Undecided,
                evidence: SplitEvidence::Unsupported { reason },
            })
        }
        Err(e) => return Err(e),
    };
    let mut lifts = Vec::new();
    for r in &simple {
        lifts.push(hensel_lift_simple_root(&g, r, place, precision)?);
    }
    let verdict = if lifts.len() == d {
        LocalVerdict::Splits
    } else if multiple.is_empty() {
        LocalVerdict::DoesNotSplit
    } else {
        LocalVerdict::Undecided
    };
    Ok(PlaceSplitting {
        place: place.clone(),
        method: SplitMethod::SimpleRootLift,
        verdict,
        evidence: SplitEvidence::SimpleRoots {
            substitution_exponent: k as u64,
            integral_polynomial: g,
            residue_roots: simple,
            multiple_residue_roots: multiple,
            lifts,
        },
    })
}

fn lift_checks<F: GlobalField>(p: &Poly<F>, lift: &LiftResult<F>, place: &Place) -> bool {
    p.eval(&lift.approximant)
        .val_at_place(place)
        .is_ok_and(|v| v >= lift.residual_valuation)
        && lift.residuals.last() == Some(&lift.residual_valuation)
}

fn distinct_mod_place<F: GlobalField>(xs: &[F], place: &Place) -> bool {
    xs.iter().enumerate().all(|(i, a)| {
        xs[..i]
            .iter()
            .all(|b| a.sub(b).val_at_place(place) == Ok(Valuation::Finite(0)))
    })
}

/// Re-check splitting evidence against `q` without trusting its producer.
pub fn verify_splitting<F: GlobalField>(q: &Poly<F>, s: &PlaceSplitting<F>) -> bool {
    let place = &s.place;
    match &s.evidence {
        SplitEvidence::Linear { root } => q.eval(root).is_zero() && s.splits(),
        SplitEvidence::RealRoots {
            real_root_count,
            degree,
        } => {
            let Some(qr) = as_rational_poly(q) else {
                return false;
            };
            count_real_roots(&qr).ok() == Some(*real_root_count)
                && q.degree() == Some(*degree)
                && s.splits() == (real_root_count == degree)
        }
        SplitEvidence::DoubleRoot { root } => {
            q.eval(root).is_zero() && q.derivative().eval(root).is_zero() && s.splits()
        }
        SplitEvidence::LocalSquare {
            discriminant,
            test,
            lifts,
        } => {
            let (b, c) = (q.coeff(1), q.coeff(0));
            let Some(d) = discriminant.as_rational() else {
                return false;
            };
            let approximants: Vec<F> = lifts.iter().map(|l| l.approximant.clone()).collect();
            *discriminant == b.square().sub(&F::from_i64(4).mul(&c))
                && verify_square_witness(d, test).unwrap_or(false)
                && s.splits() == test.is_square
                && lifts.iter().all(|l| lift_checks(q, l, place))
                && distinct_mod_place(&approximants, place)
        }
        SplitEvidence::ArtinSchreier {
            scale,
            shift,
            reduced,
            residue_roots,
            lifts,
            ..
        } => {
            let (b, c) = (q.coeff(1), q.coeff(0));
            let Ok(a) = c.div(&b.square()) else {
                return false;
            };
            let g = Poly::new(vec![reduced.clone(), F::one(), F::one()]);
            *scale == b
                && a.add(&shift.square()).add(shift) == *reduced
                && residue_roots.iter().all(|r| {
                    g.eval(r)
                        .val_at_place(place)
                        .is_ok_and(|v| v.is_at_least(1))
                })
                && distinct_mod_place(residue_roots, place)
                && lifts.len() == residue_roots.len()
                && lifts.iter().all(|l| lift_checks(&g, l, place))
                && s.splits() == (lifts.len() == 2)
        }
        SplitEvidence::SimpleRoots {
            integral_polynomial,
            residue_roots,
            lifts,
            ..
        } => {
            lifts.len() == residue_roots.len()
                && lifts
                    .iter()
                    .all(|l| lift_checks(integral_polynomial, l, place))
                && distinct_mod_place(residue_roots, place)
                && (s.verdict != LocalVerdict::Splits
                    || Some(lifts.len()) == integral_polynomial.degree())
        }
        SplitEvidence::Unsupported { .. } => s.verdict == LocalVerdict::Undecided,
    }
}

/// `1 + 4c²`, the discriminant of `X² + X − c²`.
pub fn family_discriminant<F: Field>(c: &F) -> F {
    F::one().add(&F::from_i64(4).mul(&c.square()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{f2u::F2u, rational::Rational};
    use std::collections::BTreeSet;

    fn qx(s: &str) -> Poly<Rational> {
        Poly::parse_in(s, "X").unwrap()
    }

    fn squares_mod_64() -> BTreeSet<u64> {
        (0..64u64).map(|a| a * a % 64).collect()
    }

    #[test]
    fn rational_places() {
        let q = qx("X^2+X-36/49");
        let s2 = splits_at_place(&q, &Place::Padic(2), 64).unwrap();
        assert!(s2.splits());
        assert!(verify_splitting(&q, &s2));
        // 193/49 mod 64: 49^-1 = 17 mod 64, 193*17 = 3281 = 17 mod 64
        assert!(squares_mod_64().contains(&(193 * 17 % 64)));
        let sr = splits_at_place(&q, &Place::Real, 64).unwrap();
        assert!(sr.splits());
        assert!(verify_splitting(&q, &sr));
        let s3 = splits_at_place(&q, &Place::Padic(3), 64).unwrap();
        assert!(s3.splits());
        let SplitEvidence::LocalSquare { lifts, .. } = &s3.evidence else {
            panic!()
        };
        assert_eq!(lifts.len(), 2);
        assert!(verify_splitting(&q, &s3));

        let q = qx("X^2+X-1");
        assert!(!squares_mod_64().contains(&5));
        let s = splits_at_place(&q, &Place::Padic(2), 64).unwrap();
        assert_eq!(s.verdict, LocalVerdict::DoesNotSplit);
        assert!(verify_splitting(&q, &s));
    }

    #[test]
    fn artin_schreier_place() {
        let pu: Place = "(u)".parse().unwrap();
        let q = Poly::<F2u>::parse_in("X^2+X+u/(1+u)", "X").unwrap();
        let s = splits_at_place(&q, &pu, 16).unwrap();
        assert!(s.splits());
        assert!(verify_splitting(&q, &s));
        let SplitEvidence::ArtinSchreier { lifts, .. } = &s.evidence else {
            panic!()
        };
        assert_eq!(&lifts[0].root.digits[..6], &[1, 0, 1, 1, 1, 0]);
        // 1/u has odd negative valuation at (u)
        let q = Poly::<F2u>::parse_in("X^2+X+1/u", "X").unwrap();
        let s = splits_at_place(&q, &pu, 16).unwrap();
        assert_eq!(s.verdict, LocalVerdict::DoesNotSplit);
        // 1 + u: residue polynomial Z^2 + Z + 1 has no root in F_2
        let q = Poly::<F2u>::parse_in("X^2+X+1+u", "X").unwrap();
        assert_eq!(
            splits_at_place(&q, &pu, 16).unwrap().verdict,
            LocalVerdict::DoesNotSplit
        );
        // 1/u^2 + 1/u: reduces to 0 after one step
        let q = Poly::<F2u>::parse_in("X^2+X+1/u^2+1/u", "X").unwrap();
        let s = splits_at_place(&q, &pu, 16).unwrap();
        assert!(s.splits());
        assert!(verify_splitting(&q, &s));
    }

    #[test]
    fn higher_degree() {
        // (X-1)(X-2)(X-3) at p = 5: three simple residue roots
        let m = qx("(X-1)*(X-2)*(X-3)");
        let s = simple_root_split(&m, &Place::Padic(5), 20).unwrap();
        assert!(s.splits());
        assert!(verify_splitting(&m, &s));
        // X^3 - 2 at p = 7: 2 is not a cube mod 7
        let s = simple_root_split(&qx("X^3-2"), &Place::Padic(7), 20).unwrap();
        assert_eq!(s.verdict, LocalVerdict::DoesNotSplit);
        // (X-1)(X-4) at p = 3: double residue root
        let s = simple_root_split(&qx("(X-1)*(X-4)"), &Place::Padic(3), 20).unwrap();
        assert_eq!(s.verdict, LocalVerdict::Undecided);
        // non-integral roots: (X - 1/5)(X - 2/5)(X - 3/5) at p = 5
        let s = simple_root_split(&qx("(X-1/5)*(X-2/5)*(X-3/5)"), &Place::Padic(5), 20).unwrap();
        assert!(s.splits());
    }
}
