//! The rational function `γ(Y, T) = YT/(Y² + T)` and its specializations.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{poly::Poly, ratfunc::RatFunc, Field};
use crate::error::{Error, Result};
use crate::places::GlobalField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegenerateFlag {
    None,
    YZero,
    DenominatorZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub struct GammaValue<F> {
    pub y: F,
    pub t: F,
    #[serde(with = "defined_or_undefined")]
    pub value: Option<F>,
    pub degenerate_flag: DegenerateFlag,
}

mod defined_or_undefined {
    use super::*;

    pub fn serialize<F: GlobalField, S: Serializer>(
        v: &Option<F>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(x) => x.serialize(s),
            None => s.serialize_str("undefined"),
        }
    }

    pub fn deserialize<'de, F: GlobalField, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<F>, D::Error> {
        let s = String::deserialize(d)?;
        if s == "undefined" {
            return Ok(None);
        }
        s.parse().map(Some).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn is_boundary<F: Field>(t: &F) -> bool {
    t.is_zero() || *t == F::one().neg()
}

/// `γ(y, t)`, or "undefined" when `y² + t = 0`.
pub fn gamma_eval<F: GlobalField>(y: &F, t: &F) -> Result<GammaValue<F>> {
    if is_boundary(t) {
        return Err(Error::InvalidInput(format!("t = {t} must avoid 0 and -1")));
    }
    Ok(gamma_eval_any(y, t))
}

pub(crate) fn gamma_eval_any<F: GlobalField>(y: &F, t: &F) -> GammaValue<F> {
    let den = y.square().add(t);
    let (value, degenerate_flag) = if den.is_zero() {
        (None, DegenerateFlag::DenominatorZero)
    } else if y.is_zero() {
        (Some(F::zero()), DegenerateFlag::YZero)
    } else {
        (
            Some(y.mul(t).div(&den).expect("nonzero")),
            DegenerateFlag::None,
        )
    };
    GammaValue {
        y: y.clone(),
        t: t.clone(),
        value,
        degenerate_flag,
    }
}

/// Checks `γ(y, t) = γ(t/y, t)`.
pub fn gamma_symmetry_check<F: GlobalField>(y: &F, t: &F) -> Result<bool> {
    if y.is_zero() || y.square().add(t).is_zero() {
        return Err(Error::Precondition("need y != 0 and y^2 + t != 0".into()));
    }
    let a = gamma_eval(y, t)?.value;
    let b = gamma_eval(&t.div(y)?, t)?.value;
    Ok(a.is_some() && a == b)
}

/// `γ(Y, t) ∈ F(Y)`.
pub fn gamma_ratfunc<F: GlobalField>(t: &F) -> RatFunc<F> {
    let num = Poly::new(vec![F::zero(), t.clone()]);
    let den = Poly::new(vec![t.clone(), F::zero(), F::one()]);
    RatFunc::new(num, den).expect("Y^2 + t is nonzero")
}

/// `X² + X − c²`, the specialization of `f(X, T) = X² + X − T²` at `c`.
pub fn specialize_at<F: Field>(c: &F) -> Poly<F> {
    Poly::new(vec![c.square().neg(), F::one(), F::one()])
}

pub fn specialize_f<F: GlobalField>(y: &F, t: &F) -> Result<Poly<F>> {
    match gamma_eval(y, t)?.value {
        Some(c) => Ok(specialize_at(&c)),
        None => Err(Error::InvalidInput(format!(
            "gamma({y}, {t}) is undefined since y^2 + t = 0"
        ))),
    }
}
