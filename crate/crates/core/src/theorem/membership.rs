//! Membership of an algebraic element in the maximal extension of `K` in
//! which every place of `S` splits totally, decided through its minimal
//! polynomial.

use serde::{Deserialize, Serialize};

use super::splitting::{
    real_split, simple_root_split, splits_at_place, LocalVerdict, PlaceSplitting, SplitEvidence,
    SplitMethod,
};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};
use crate::places::{GlobalField, Place, PlaceSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    True,
    False,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub struct MembershipReport<F: GlobalField> {
    pub minimal_polynomial: Poly<F>,
    pub places: PlaceSet,
    pub verdict: Membership,
    pub checks: Vec<PlaceSplitting<F>>,
}

/// Does `m` split into linear factors at every place of `s`?
pub fn is_totally_s_adic<F: GlobalField>(
    m: &Poly<F>,
    s: &PlaceSet,
    precision: usize,
) -> Result<MembershipReport<F>> {
    if s.base() != F::TAG {
        return Err(Error::InvalidInput(format!(
            "place set over {} used with {}",
            s.base(),
            F::TAG
        )));
    }
    let d = match m.degree() {
        None | Some(0) => {
            return Err(Error::InvalidInput(
                "minimal polynomial must have positive degree".into(),
            ))
        }
        Some(d) => d,
    };
    if !m.is_squarefree() {
        return Err(Error::NotSquarefree(m.to_string()));
    }
    let m = m.monic();
    let mut checks = Vec::new();
    for place in s.places() {
        let check = if d == 1 {
            PlaceSplitting {
                place: place.clone(),
                method: SplitMethod::Linear,
                verdict: LocalVerdict::Splits,
                evidence: SplitEvidence::Linear {
                    root: m.coeff(0).neg(),
                },
            }
        } else if *place == Place::Real {
            real_split(&m)?
        } else if d == 2 {
            match splits_at_place(&m, place, precision) {
                Err(Error::Unsupported(reason)) => PlaceSplitting {
                    place: place.clone(),
                    method: SplitMethod::LocalSquare,
                    verdict: LocalVerdict::Undecided,
                    evidence: SplitEvidence::Unsupported { reason },
                },
                other => other?,
            }
        } else {
            simple_root_split(&m, place, precision)?
        };
        checks.push(check);
    }
    let verdict = if checks
        .iter()
        .any(|c| c.verdict == LocalVerdict::DoesNotSplit)
    {
        Membership::False
    } else if checks.iter().any(|c| c.verdict == LocalVerdict::Undecided) {
        Membership::Undecided
    } else {
        Membership::True
    };
    Ok(MembershipReport {
        minimal_polynomial: m,
        places: s.clone(),
        verdict,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::Rational;
    use crate::places::FieldTag;

    fn qx(s: &str) -> Poly<Rational> {
        Poly::parse_in(s, "X").unwrap()
    }

    fn places(s: &str) -> PlaceSet {
        PlaceSet::parse(FieldTag::Q, s).unwrap()
    }

    #[test]
    fn examples() {
        let r = is_totally_s_adic(&qx("X^2+X-36/49"), &places("2,3,R"), 64).unwrap();
        assert_eq!(r.verdict, Membership::True);
        assert_eq!(r.checks.len(), 3);
        let r = is_totally_s_adic(&qx("X^2+1"), &places("R"), 64).unwrap();
        assert_eq!(r.verdict, Membership::False);
        let r = is_totally_s_adic(&qx("X-5"), &places("2,3,R"), 64).unwrap();
        assert_eq!(r.verdict, Membership::True);
        let r = is_totally_s_adic(&qx("X^2-2"), &places("R"), 64).unwrap();
        assert_eq!(r.verdict, Membership::True);
        let r = is_totally_s_adic(&qx("X^2+X-1"), &places("2"), 64).unwrap();
        assert_eq!(r.verdict, Membership::False);
        assert!(matches!(
            is_totally_s_adic(&qx("(X-1)^2"), &places("R"), 64),
            Err(Error::NotSquarefree(_))
        ));
    }

    #[test]
    fn cubic() {
        let r = is_totally_s_adic(&qx("(X-1)*(X-2)*(X-3)"), &places("5,7,R"), 32).unwrap();
        assert_eq!(r.verdict, Membership::True);
        let r = is_totally_s_adic(&qx("(X-1)*(X-4)*(X-7)"), &places("3"), 32).unwrap();
        assert_eq!(r.verdict, Membership::Undecided);
    }
}
