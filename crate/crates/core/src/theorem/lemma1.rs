//! Positivity of `v(γ(y, t))` when `t` is a uniformizer at `v`.

use serde::{Deserialize, Serialize};

use super::gamma::{gamma_eval, DegenerateFlag};
use crate::algebra::Valuation;
use crate::error::{Error, Result};
use crate::places::{GlobalField, Place};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Lemma1Case {
    #[serde(rename = "v(y)=0")]
    Unit,
    #[serde(rename = "v(y)<0")]
    Negative,
    #[serde(rename = "v(y)>0")]
    Positive,
    #[serde(rename = "y_zero")]
    YZero,
}

impl Lemma1Case {
    pub fn of(v: Valuation) -> Self {
        match v {
            Valuation::Infinite => Lemma1Case::YZero,
            Valuation::Finite(0) => Lemma1Case::Unit,
            Valuation::Finite(k) if k < 0 => Lemma1Case::Negative,
            Valuation::Finite(_) => Lemma1Case::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub struct Lemma1Certificate<F> {
    pub place: Place,
    pub y: F,
    pub case: Lemma1Case,
    pub v_of_gamma: Valuation,
    pub holds: bool,
}

impl<F: GlobalField> Lemma1Certificate<F> {
    /// Recompute the valuations from `y` and `t`.
    pub fn verify(&self, t: &F) -> bool {
        let Ok(fresh) = lemma1_certify(&self.y, t, &self.place) else {
            return false;
        };
        fresh == *self && self.holds == self.v_of_gamma.is_at_least(1)
    }
}

/// Compute `v(γ(y, t))` and the case split on `v(y)`.
pub fn lemma1_certify<F: GlobalField>(y: &F, t: &F, place: &Place) -> Result<Lemma1Certificate<F>> {
    if !place.is_ultrametric() {
        return Err(Error::InvalidInput(
            "Lemma 1 needs an ultrametric place".into(),
        ));
    }
    let vt = t.val_at_place(place)?;
    if vt != Valuation::Finite(1) {
        return Err(Error::Precondition(format!(
            "t = {t} is not a uniformizer at {place} (valuation {vt})"
        )));
    }
    let g = gamma_eval(y, t)?;
    let Some(value) = g.value else {
        // v(y^2) is even and v(t) = 1, so y^2 + t never vanishes
        return Err(Error::Certificate(format!("y^2 + t vanished for y = {y}")));
    };
    let case = Lemma1Case::of(y.val_at_place(place)?);
    debug_assert_eq!(
        case == Lemma1Case::YZero,
        g.degenerate_flag == DegenerateFlag::YZero
    );
    let v_of_gamma = value.val_at_place(place)?;
    Ok(Lemma1Certificate {
        place: place.clone(),
        y: y.clone(),
        case,
        v_of_gamma,
        holds: v_of_gamma.is_at_least(1),
    })
}

/// Certificates for several `y` at several places, with a shared `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub struct Lemma1Batch<F> {
    pub t: F,
    pub certificates: Vec<Lemma1Certificate<F>>,
    pub all_hold: bool,
}

pub fn lemma1_batch<F: GlobalField>(ys: &[F], t: &F, places: &[Place]) -> Result<Lemma1Batch<F>> {
    let mut certificates = Vec::with_capacity(ys.len() * places.len());
    for y in ys {
        for place in places {
            certificates.push(lemma1_certify(y, t, place)?);
        }
    }
    Ok(Lemma1Batch {
        t: t.clone(),
        all_hold: certificates.iter().all(|c| c.holds),
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{f2u::F2u, rational::Rational, Field};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn worked_cases() {
        let p3 = Place::Padic(3);
        let c = lemma1_certify(&q("1"), &q("3"), &p3).unwrap();
        assert_eq!(
            (c.case, c.v_of_gamma, c.holds),
            (Lemma1Case::Unit, Valuation::Finite(1), true)
        );
        let c = lemma1_certify(&q("1/3"), &q("3"), &p3).unwrap();
        assert_eq!(
            (c.case, c.v_of_gamma),
            (Lemma1Case::Negative, Valuation::Finite(2))
        );
        let c = lemma1_certify(&q("9"), &q("3"), &p3).unwrap();
        assert_eq!(
            (c.case, c.v_of_gamma),
            (Lemma1Case::Positive, Valuation::Finite(2))
        );
        let c = lemma1_certify(&q("0"), &q("3"), &p3).unwrap();
        assert_eq!(
            (c.case, c.v_of_gamma, c.holds),
            (Lemma1Case::YZero, Valuation::Infinite, true)
        );
        assert!(c.verify(&q("3")));
        assert!(matches!(
            lemma1_certify(&q("1"), &q("4"), &p3),
            Err(Error::Precondition(_))
        ));
        assert!(lemma1_certify(&q("1"), &q("3"), &Place::Real).is_err());
    }

    #[test]
    fn function_field_case() {
        let pu: Place = "(u)".parse().unwrap();
        let c = lemma1_certify(&F2u::one(), &F2u::u(), &pu).unwrap();
        assert_eq!(c.v_of_gamma, Valuation::Finite(1));
        assert!(c.holds);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"place":"(u)","y":"1","case":"v(y)=0","v_of_gamma":1,"holds":true}"#
        );
    }
}
