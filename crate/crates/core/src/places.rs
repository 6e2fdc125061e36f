//! Places of ℚ and 𝔽₂(u): canonical descriptors, valuations, signs, and the
//! simultaneous-uniformizer search.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de::DeserializeOwned, Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{
    f2u::{artin_schreier_root, f2_poly_bits, f2_poly_from_bits, ArtinSchreier, F2u},
    fp::F2,
    parse,
    poly::{poly_ext_gcd, Poly},
    ratfunc::multiplicity_valuation,
    rational::{int_valuation, squarefree_part, Rational},
    sqrt::IrreducibilityCheck,
    Field, Sqrt, Valuation,
};
use crate::error::{Error, Result};

/// Largest residue field that is enumerated element by element.
pub const MAX_ENUMERATED_RESIDUE_FIELD: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldTag {
    Q,
    F2u,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Q => "Q",
            FieldTag::F2u => "F2u",
        })
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "q" => Ok(FieldTag::Q),
            "F2u" | "f2u" | "F2(u)" => Ok(FieldTag::F2u),
            _ => Err(Error::Parse(format!(
                "unknown field {s:?} (expected Q or F2u)"
            ))),
        }
    }
}

/// A real archimedean or discrete ultrametric place, in canonical form:
/// structurally distinct descriptors are inequivalent absolute values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Real,
    Padic(u64),
    /// `P`-adic place of 𝔽₂(u) for a monic irreducible `P` of degree ≤ 2.
    PolyF2u(Poly<F2>),
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

impl Place {
    pub fn padic(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Place::Padic(p))
        } else {
            Err(Error::InvalidInput(format!("{p} is not prime")))
        }
    }

    pub fn f2u(p: Poly<F2>) -> Result<Self> {
        match p.degree() {
            Some(1 | 2) => {}
            _ => {
                return Err(Error::Unsupported(format!(
                    "places of F2(u) must have degree 1 or 2, got {}",
                    p.display_in("u")
                )))
            }
        }
        if !F2::check_irreducible(&p)? {
            return Err(Error::InvalidInput(format!(
                "{} is not irreducible over F2",
                p.display_in("u")
            )));
        }
        Ok(Place::PolyF2u(p))
    }

    pub fn is_ultrametric(&self) -> bool {
        !matches!(self, Place::Real)
    }

    pub fn field(&self) -> FieldTag {
        match self {
            Place::Real | Place::Padic(_) => FieldTag::Q,
            Place::PolyF2u(_) => FieldTag::F2u,
        }
    }

    /// Size of the residue field; `None` for the real place.
    pub fn residue_field_size(&self) -> Option<u64> {
        match self {
            Place::Real => None,
            Place::Padic(p) => Some(*p),
            Place::PolyF2u(p) => Some(1 << p.degree().unwrap_or(0)),
        }
    }

    fn sort_key(&self) -> (u8, u64) {
        match self {
            Place::Real => (0, 0),
            Place::Padic(p) => (1, *p),
            Place::PolyF2u(p) => (2, f2_poly_bits(p)),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("R"),
            Place::Padic(p) => write!(f, "{p}"),
            Place::PolyF2u(p) => write!(f, "({})", p.display_in("u")),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "R" | "real" => return Ok(Place::Real),
            "C" | "complex" => {
                return Err(Error::Unsupported(
                    "complex archimedean places are not supported".into(),
                ))
            }
            _ => {}
        }
        if s.chars().all(|c| c.is_ascii_digit()) && !s.is_empty() {
            let p: u64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("prime {s:?} out of range")))?;
            return Place::padic(p);
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let p = Poly::<F2>::parse_in(inner, "u")?;
            return Place::f2u(p);
        }
        Err(Error::Parse(format!(
            "unrecognised place {s:?} (expected R, a prime, or (P(u)))"
        )))
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The finite set `S`: nonempty, pairwise distinct, all on one base field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceSet {
    base: FieldTag,
    places: Vec<Place>,
}

impl PlaceSet {
    pub fn new(base: FieldTag, places: Vec<Place>) -> Result<Self> {
        if places.is_empty() {
            return Err(Error::InvalidInput(
                "the place set S must be nonempty".into(),
            ));
        }
        for (i, p) in places.iter().enumerate() {
            if p.field() != base {
                return Err(Error::InvalidInput(format!(
                    "place {p} does not belong to the base field {base}"
                )));
            }
            if places[..i].contains(p) {
                return Err(Error::InvalidInput(format!("place {p} listed twice")));
            }
        }
        Ok(PlaceSet { base, places })
    }

    /// Parse a comma-separated list such as `2,3,R` or `(u),(u+1)`.
    pub fn parse(base: FieldTag, src: &str) -> Result<Self> {
        let places = parse::split_list(src)
            .into_iter()
            .map(str::parse)
            .collect::<Result<Vec<Place>>>()?;
        Self::new(base, places)
    }

    pub fn base(&self) -> FieldTag {
        self.base
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn ultrametric(&self) -> impl Iterator<Item = &Place> {
        self.places.iter().filter(|p| p.is_ultrametric())
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.places.iter().map(Place::to_string).collect();
        f.write_str(&names.join(","))
    }
}

impl<'de> Deserialize<'de> for PlaceSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            base: FieldTag,
            places: Vec<Place>,
        }
        let r = Repr::deserialize(d)?;
        PlaceSet::new(r.base, r.places).map_err(serde::de::Error::custom)
    }
}

/// Why an element is known not to be a square in the base field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonSquareCertificate {
    OddValuation {
        place: Place,
        valuation: i64,
    },
    Negative,
    SquarefreePart {
        part: String,
    },
    /// Exact square-root extraction failed.
    NoSquareRoot,
}

/// A base field of the theorem (ℚ or 𝔽₂(u)) together with its places and
/// the completion plumbing used by the local engines.
pub trait GlobalField:
    Sqrt + IrreducibilityCheck + FromStr<Err = Error> + Serialize + DeserializeOwned
{
    const TAG: FieldTag;

    /// Valuation at an ultrametric place of this field.
    fn val_at_place(&self, place: &Place) -> Result<Valuation>;

    /// The canonical uniformizer `p` or `P(u)`.
    fn uniformizer(place: &Place) -> Result<Self>;

    /// One base-field representative for each residue class.
    fn residue_representatives(place: &Place) -> Result<Vec<Self>>;

    /// Digits (lowest first) of a unit modulo `uniformizer^n`.
    fn unit_digits(&self, place: &Place, n: usize) -> Result<Vec<u64>>;

    /// `Σ digits[i] · uniformizer^i`.
    fn from_digits(digits: &[u64], place: &Place) -> Result<Self>;

    fn as_rational(&self) -> Option<&Rational>;

    /// Reasons beyond odd valuations at `S` that rule out squares.
    fn global_nonsquare_certificate(&self) -> Option<NonSquareCertificate>;

    /// Places used when looking for an odd valuation without a given `S`.
    fn standard_places() -> Vec<Place>;

    /// Elements of height at most `height`, in a fixed enumeration order.
    fn enumerate_by_height(height: u64) -> Result<Vec<Self>>;

    /// Complete decision for `X² + X + self` in characteristic 2.
    fn artin_schreier(&self) -> Option<ArtinSchreier> {
        None
    }
}

fn require_ultrametric(place: &Place, tag: FieldTag) -> Result<()> {
    if !place.is_ultrametric() {
        return Err(Error::InvalidInput(
            "the real place has no valuation; use the sign instead".into(),
        ));
    }
    if place.field() != tag {
        return Err(Error::InvalidInput(format!(
            "place {place} is not a place of {tag}"
        )));
    }
    Ok(())
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::Precondition("element is not a unit".into()));
    }
    Ok(e.x.mod_floor(m))
}

impl GlobalField for Rational {
    const TAG: FieldTag = FieldTag::Q;

    fn val_at_place(&self, place: &Place) -> Result<Valuation> {
        require_ultrametric(place, FieldTag::Q)?;
        let Place::Padic(p) = place else {
            unreachable!()
        };
        if self.is_zero() {
            return Ok(Valuation::Infinite);
        }
        Ok(Valuation::Finite(
            int_valuation(self.numer(), *p) as i64 - int_valuation(self.denom(), *p) as i64,
        ))
    }

    fn uniformizer(place: &Place) -> Result<Self> {
        require_ultrametric(place, FieldTag::Q)?;
        let Place::Padic(p) = place else {
            unreachable!()
        };
        Ok(Rational::integer(*p as i64))
    }

    fn residue_representatives(place: &Place) -> Result<Vec<Self>> {
        require_ultrametric(place, FieldTag::Q)?;
        let Place::Padic(p) = place else {
            unreachable!()
        };
        if *p > MAX_ENUMERATED_RESIDUE_FIELD {
            return Err(Error::Guard(format!(
                "residue field F_{p} too large to enumerate"
            )));
        }
        Ok((0..*p as i64).map(Rational::integer).collect())
    }

    fn unit_digits(&self, place: &Place, n: usize) -> Result<Vec<u64>> {
        require_ultrametric(place, FieldTag::Q)?;
        let Place::Padic(p) = place else {
            unreachable!()
        };
        if self.val_at_place(place)? != Valuation::Finite(0) {
            return Err(Error::Precondition(format!(
                "{self} is not a unit at {place}"
            )));
        }
        let pb = BigInt::from(*p);
        let modulus = num_traits::pow(pb.clone(), n);
        let mut r = (self.numer() * mod_inverse(self.denom(), &modulus)?).mod_floor(&modulus);
        let mut digits = Vec::with_capacity(n);
        for _ in 0..n {
            let (q, d) = r.div_rem(&pb);
            digits.push(u64::try_from(d).expect("digit below p"));
            r = q;
        }
        Ok(digits)
    }

    fn from_digits(digits: &[u64], place: &Place) -> Result<Self> {
        let p = Self::uniformizer(place)?;
        let mut acc = BigInt::zero();
        let pb = p.numer().clone();
        for d in digits.iter().rev() {
            acc = acc * &pb + BigInt::from(*d);
        }
        Ok(Rational::from_bigint(acc))
    }

    fn as_rational(&self) -> Option<&Rational> {
        Some(self)
    }

    fn global_nonsquare_certificate(&self) -> Option<NonSquareCertificate> {
        if self.signum() < 0 {
            return Some(NonSquareCertificate::Negative);
        }
        if self.is_zero() || self.sqrt().is_some() {
            return None;
        }
        let prod = self.numer() * self.denom();
        if prod.abs() < BigInt::from(10u64.pow(14)) {
            let part = squarefree_part(&prod);
            Some(NonSquareCertificate::SquarefreePart {
                part: part.to_string(),
            })
        } else {
            Some(NonSquareCertificate::NoSquareRoot)
        }
    }

    fn standard_places() -> Vec<Place> {
        [2, 3, 5, 7].into_iter().map(Place::Padic).collect()
    }

    fn enumerate_by_height(height: u64) -> Result<Vec<Self>> {
        if height > 2_000 {
            return Err(Error::Guard(format!(
                "height {height} too large to enumerate"
            )));
        }
        let h = height as i64;
        let mut keyed = vec![((0i64, 1i64, 0i64, false), Rational::zero())];
        for b in 1..=h {
            for a_abs in 1..=h {
                if a_abs.gcd(&b) != 1 {
                    continue;
                }
                let ht = a_abs.max(b);
                keyed.push(((ht, b, a_abs, false), Rational::new(a_abs, b)));
                keyed.push(((ht, b, a_abs, true), Rational::new(-a_abs, b)));
            }
        }
        keyed.sort_by_key(|x| x.0);
        Ok(keyed.into_iter().map(|(_, r)| r).collect())
    }
}

fn f2u_place_poly(place: &Place) -> Result<&Poly<F2>> {
    require_ultrametric(place, FieldTag::F2u)?;
    match place {
        Place::PolyF2u(p) => Ok(p),
        _ => unreachable!(),
    }
}

impl GlobalField for F2u {
    const TAG: FieldTag = FieldTag::F2u;

    fn val_at_place(&self, place: &Place) -> Result<Valuation> {
        let p = f2u_place_poly(place)?;
        Ok(multiplicity_valuation(self.as_ratfunc(), p))
    }

    fn uniformizer(place: &Place) -> Result<Self> {
        Ok(F2u::from_poly(f2u_place_poly(place)?.clone()))
    }

    fn residue_representatives(place: &Place) -> Result<Vec<Self>> {
        let p = f2u_place_poly(place)?;
        let size = 1u64 << p.degree().unwrap_or(0);
        Ok((0..size)
            .map(|bits| F2u::from_poly(f2_poly_from_bits(bits)))
            .collect())
    }

    fn unit_digits(&self, place: &Place, n: usize) -> Result<Vec<u64>> {
        let p = f2u_place_poly(place)?;
        if self.val_at_place(place)? != Valuation::Finite(0) {
            return Err(Error::Precondition(format!(
                "{self} is not a unit at {place}"
            )));
        }
        let modulus = p.pow(n as u32);
        let (g, inv, _) = poly_ext_gcd(self.denom(), &modulus);
        if g != Poly::one() {
            return Err(Error::Precondition("denominator is not a unit".into()));
        }
        let mut r = self.numer().mul(&inv).rem(&modulus)?;
        let mut digits = Vec::with_capacity(n);
        for _ in 0..n {
            let (q, d) = r.div_rem(p)?;
            digits.push(f2_poly_bits(&d));
            r = q;
        }
        Ok(digits)
    }

    fn from_digits(digits: &[u64], place: &Place) -> Result<Self> {
        let p = f2u_place_poly(place)?;
        let acc = digits.iter().rev().fold(Poly::zero(), |acc: Poly<F2>, d| {
            acc.mul(p).add(&f2_poly_from_bits(*d))
        });
        Ok(F2u::from_poly(acc))
    }

    fn as_rational(&self) -> Option<&Rational> {
        None
    }

    fn artin_schreier(&self) -> Option<ArtinSchreier> {
        Some(artin_schreier_root(self))
    }

    fn global_nonsquare_certificate(&self) -> Option<NonSquareCertificate> {
        None
    }

    fn standard_places() -> Vec<Place> {
        [0b10, 0b11, 0b111]
            .into_iter()
            .map(|b| Place::PolyF2u(f2_poly_from_bits(b)))
            .collect()
    }

    fn enumerate_by_height(height: u64) -> Result<Vec<Self>> {
        if height > 10 {
            return Err(Error::Guard(format!(
                "height {height} too large to enumerate over F2(u)"
            )));
        }
        let limit = 1u64 << (height + 1);
        let mut keyed = vec![((0usize, 1u64, 0u64), F2u::zero())];
        for den in 1..limit {
            for num in 1..limit {
                let e = F2u::new(f2_poly_from_bits(num), f2_poly_from_bits(den))
                    .expect("nonzero denominator");
                if f2_poly_bits(e.numer()) != num || f2_poly_bits(e.denom()) != den {
                    continue;
                }
                keyed.push(((e.height(), den, num), e));
            }
        }
        keyed.sort_by_key(|x| x.0);
        Ok(keyed.into_iter().map(|(_, e)| e).collect())
    }
}

pub fn val_at_place<F: GlobalField>(x: &F, place: &Place) -> Result<Valuation> {
    x.val_at_place(place)
}

/// Sign of `x` in the unique ordering of ℚ.
pub fn sign_at_real_place(x: &Rational) -> i32 {
    x.signum()
}

/// A `t ∉ {0, −1}` with valuation 1 at every ultrametric place of `S`: the
/// product of the canonical uniformizers. Over ℚ this is the smallest
/// positive integer with that property; with no ultrametric place it is 1.
pub fn find_uniformizer<F: GlobalField>(s: &PlaceSet) -> Result<F> {
    if s.base() != F::TAG {
        return Err(Error::InvalidInput(format!(
            "place set over {} used with {}",
            s.base(),
            F::TAG
        )));
    }
    let mut t = F::one();
    for place in s.ultrametric() {
        t = t.mul(&F::uniformizer(place)?);
    }
    if t.is_zero() || t == F::one().neg() {
        return Err(Error::Certificate(format!(
            "uniformizer {t} lies in {{0, -1}}"
        )));
    }
    for place in s.ultrametric() {
        let v = t.val_at_place(place)?;
        if v != Valuation::Finite(1) {
            return Err(Error::Certificate(format!(
                "uniformizer {t} has valuation {v} at {place}"
            )));
        }
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSquareVerdict {
    pub nonsquare: bool,
    pub certificate: Option<NonSquareCertificate>,
}

/// Certify that `t` is not a square in the base field: an odd valuation at
/// some ultrametric place of `S` (which also rules out squares in every
/// extension where those places split totally), or over ℚ a negative sign or
/// nontrivial square-free part.
pub fn is_nonsquare_in_base<F: GlobalField>(t: &F, s: &PlaceSet) -> Result<NonSquareVerdict> {
    if t.is_zero() {
        return Err(Error::Precondition("t must be nonzero".into()));
    }
    for place in s.ultrametric() {
        if let Valuation::Finite(v) = t.val_at_place(place)? {
            if v.rem_euclid(2) == 1 {
                return Ok(NonSquareVerdict {
                    nonsquare: true,
                    certificate: Some(NonSquareCertificate::OddValuation {
                        place: place.clone(),
                        valuation: v,
                    }),
                });
            }
        }
    }
    let certificate = t.global_nonsquare_certificate();
    Ok(NonSquareVerdict {
        nonsquare: certificate.is_some(),
        certificate,
    })
}

/// Non-square certificate without a given `S`: odd valuation at a standard
/// place, a global reason, or failed square-root extraction.
pub fn nonsquare_certificate<F: GlobalField>(t: &F) -> Option<NonSquareCertificate> {
    if t.is_zero() {
        return None;
    }
    for place in F::standard_places() {
        if let Ok(Valuation::Finite(v)) = t.val_at_place(&place) {
            if v.rem_euclid(2) == 1 {
                return Some(NonSquareCertificate::OddValuation {
                    place,
                    valuation: v,
                });
            }
        }
    }
    t.global_nonsquare_certificate().or_else(|| {
        t.sqrt()
            .is_none()
            .then_some(NonSquareCertificate::NoSquareRoot)
    })
}

/// Check a non-square certificate against `t` without trusting its producer.
pub fn verify_nonsquare_certificate<F: GlobalField>(t: &F, cert: &NonSquareCertificate) -> bool {
    match cert {
        NonSquareCertificate::OddValuation { place, valuation } => {
            t.val_at_place(place).ok() == Some(Valuation::Finite(*valuation))
                && valuation.rem_euclid(2) == 1
        }
        NonSquareCertificate::Negative => t.as_rational().is_some_and(|r| r.signum() < 0),
        NonSquareCertificate::SquarefreePart { part } => t.as_rational().is_some_and(|r| {
            let prod = r.numer() * r.denom();
            part != "1" && squarefree_part(&prod).to_string() == *part
        }),
        NonSquareCertificate::NoSquareRoot => t.sqrt().is_none(),
    }
}

/// Convert a polynomial over a global field to one over ℚ when the field is ℚ.
pub fn as_rational_poly<F: GlobalField>(p: &Poly<F>) -> Option<Poly<Rational>> {
    p.coeffs()
        .iter()
        .map(|c| c.as_rational().cloned())
        .collect::<Option<Vec<_>>>()
        .map(Poly::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn f(s: &str) -> F2u {
        s.parse().unwrap()
    }

    fn place(s: &str) -> Place {
        s.parse().unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(
            q("9/28").val_at_place(&place("3")).unwrap(),
            Valuation::Finite(2)
        );
        assert_eq!(
            q("6/5").val_at_place(&place("5")).unwrap(),
            Valuation::Finite(-1)
        );
        assert_eq!(
            f("u/(u+1)").val_at_place(&place("(u)")).unwrap(),
            Valuation::Finite(1)
        );
        assert_eq!(
            q("0").val_at_place(&place("7")).unwrap(),
            Valuation::Infinite
        );
        assert!(q("2").val_at_place(&Place::Real).is_err());
        assert!(q("2").val_at_place(&place("(u)")).is_err());
    }

    #[test]
    fn real_signs() {
        assert_eq!(sign_at_real_place(&q("193/49")), 1);
        assert_eq!(sign_at_real_place(&q("-1")), -1);
        assert_eq!(sign_at_real_place(&q("0")), 0);
    }

    #[test]
    fn place_parsing() {
        assert_eq!(place("R"), Place::Real);
        assert_eq!(place("(u^2+u+1)").to_string(), "(u^2+u+1)");
        assert!("4".parse::<Place>().is_err());
        assert!("C".parse::<Place>().is_err());
        assert!("(u^2+1)".parse::<Place>().is_err());
        assert!("(u^3+u+1)".parse::<Place>().is_err());
        assert!("(1/u)".parse::<Place>().is_err());
    }

    #[test]
    fn place_set_invariants() {
        assert!(PlaceSet::parse(FieldTag::Q, "").is_err());
        assert!(PlaceSet::parse(FieldTag::Q, "2,2").is_err());
        assert!(PlaceSet::parse(FieldTag::F2u, "R").is_err());
        assert!(PlaceSet::parse(FieldTag::Q, "(u)").is_err());
        let s = PlaceSet::parse(FieldTag::Q, "2,3,R").unwrap();
        assert_eq!(s.to_string(), "2,3,R");
    }

    #[test]
    fn uniformizers() {
        let s = PlaceSet::parse(FieldTag::Q, "2,3").unwrap();
        assert_eq!(find_uniformizer::<Rational>(&s).unwrap(), q("6"));
        let s = PlaceSet::parse(FieldTag::Q, "5").unwrap();
        assert_eq!(find_uniformizer::<Rational>(&s).unwrap(), q("5"));
        let s = PlaceSet::parse(FieldTag::Q, "R").unwrap();
        assert_eq!(find_uniformizer::<Rational>(&s).unwrap(), q("1"));
        let s = PlaceSet::parse(FieldTag::F2u, "(u),(u+1)").unwrap();
        assert_eq!(find_uniformizer::<F2u>(&s).unwrap(), f("u^2+u"));
        assert!(find_uniformizer::<F2u>(&PlaceSet::parse(FieldTag::Q, "2").unwrap()).is_err());
    }

    #[test]
    fn uniformizer_matches_exhaustive_search() {
        let s = PlaceSet::parse(FieldTag::Q, "2,3").unwrap();
        let smallest = (1..)
            .map(Rational::integer)
            .find(|t| {
                s.ultrametric()
                    .all(|p| t.val_at_place(p).unwrap() == Valuation::Finite(1))
            })
            .unwrap();
        assert_eq!(smallest, find_uniformizer::<Rational>(&s).unwrap());
    }

    #[test]
    fn nonsquare_certificates() {
        let s = PlaceSet::parse(FieldTag::Q, "2,3").unwrap();
        let v = is_nonsquare_in_base(&q("6"), &s).unwrap();
        assert!(v.nonsquare);
        assert_eq!(
            v.certificate,
            Some(NonSquareCertificate::OddValuation {
                place: Place::Padic(2),
                valuation: 1
            })
        );
        let s = PlaceSet::parse(FieldTag::F2u, "(u)").unwrap();
        let v = is_nonsquare_in_base(&f("u^2+u"), &s).unwrap();
        assert!(v.nonsquare);
        assert!(verify_nonsquare_certificate(
            &f("u^2+u"),
            v.certificate.as_ref().unwrap()
        ));
        let s = PlaceSet::parse(FieldTag::Q, "R").unwrap();
        assert!(!is_nonsquare_in_base(&q("4"), &s).unwrap().nonsquare);
        let v = is_nonsquare_in_base(&q("12"), &s).unwrap();
        assert_eq!(
            v.certificate,
            Some(NonSquareCertificate::SquarefreePart { part: "3".into() })
        );
        assert_eq!(
            is_nonsquare_in_base(&q("-4"), &s).unwrap().certificate,
            Some(NonSquareCertificate::Negative)
        );
    }

    #[test]
    fn digits_roundtrip() {
        let p3 = place("3");
        // 1/4 mod 3^5: 4 * 61 = 244 = 1 + 3^5
        let d = q("1/4").unit_digits(&p3, 5).unwrap();
        assert_eq!(Rational::from_digits(&d, &p3).unwrap(), q("61"));
        let pu = place("(u)");
        let d = f("1/(u+1)").unit_digits(&pu, 4).unwrap();
        assert_eq!(d, vec![1, 1, 1, 1]);
        let pq = place("(u^2+u+1)");
        let x = f("(u^3+u+1)/(u+1)");
        let d = x.unit_digits(&pq, 3).unwrap();
        assert!(d.iter().all(|&b| b < 4));
    }

    #[test]
    fn height_enumeration() {
        let e = Rational::enumerate_by_height(1).unwrap();
        assert_eq!(e, vec![q("0"), q("1"), q("-1")]);
        let e = Rational::enumerate_by_height(2).unwrap();
        assert_eq!(e.len(), 7);
        let e = F2u::enumerate_by_height(1).unwrap();
        assert_eq!(e.len(), 8);
        assert_eq!(e[..2], [F2u::zero(), F2u::one()]);
    }
}
