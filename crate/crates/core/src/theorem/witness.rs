//! The end-to-end witness: a uniformizer `t`, the irreducibility
//! certificate over `K(Y)`, and per-sample specializations that split at
//! every place of `S`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gamma::{gamma_eval, specialize_at, DegenerateFlag, GammaValue};
use super::lemma1::{lemma1_certify, Lemma1Case, Lemma1Certificate};
use super::lemma2::{lemma2_certify, Lemma2Certificate, Lemma2Verdict};
use super::splitting::{family_discriminant, splits_at_place, verify_splitting, PlaceSplitting};
use crate::algebra::{f2u::ArtinSchreier, poly::Poly, Field};
use crate::error::{Error, Result};
use crate::places::{
    find_uniformizer, nonsquare_certificate, FieldTag, GlobalField, NonSquareCertificate, Place,
    PlaceSet,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SAMPLE_COUNT: usize = 200;
pub const DEFAULT_SEED: u64 = 0;

pub fn default_height(base: FieldTag) -> u64 {
    match base {
        FieldTag::Q => 50,
        FieldTag::F2u => 4,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub enum SampleSpec<F: GlobalField> {
    /// `count` elements of height at most `height`: the anchors `0`, `1`,
    /// `π` and `1/π` for each ultrametric place, at least one `y` per
    /// Lemma 1 case and place, then a seeded pseudo-random fill.
    Enumerated {
        height: u64,
        count: usize,
        seed: u64,
    },
    Explicit {
        values: Vec<F>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub struct WitnessConfig<F: GlobalField> {
    pub base: FieldTag,
    pub places: PlaceSet,
    pub precision: usize,
    pub samples: SampleSpec<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IrreducibilityVerdict {
    Irreducible,
    Reducible,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub enum IrreducibilityEvidence<F: GlobalField> {
    DiscriminantNotSquare {
        discriminant: F,
        certificate: NonSquareCertificate,
    },
    DiscriminantSquare {
        discriminant: F,
        root: F,
    },
    /// Decision for `b² + b = constant`.
    ArtinSchreier {
        constant: F,
        decision: ArtinSchreier,
    },
    Unavailable {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub struct IrreducibilityOverK<F: GlobalField> {
    pub verdict: IrreducibilityVerdict,
    pub evidence: IrreducibilityEvidence<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// Both roots lie in every completion and real closure at `S`.
    RootsInKTotS,
    NotSplit,
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub struct SampleRecord<F: GlobalField> {
    pub index: usize,
    pub y: F,
    pub gamma: GammaValue<F>,
    pub lemma1: Vec<Lemma1Certificate<F>>,
    pub specialization: Option<Poly<F>>,
    pub splitting: Vec<PlaceSplitting<F>>,
    #[serde(rename = "irreducible_over_K")]
    pub irreducible_over_k: Option<IrreducibilityOverK<F>>,
    pub conclusion: Conclusion,
    /// Splits at every place of `S` and is irreducible over `K`.
    pub exhibits_new_element: bool,
}

impl<F: GlobalField> SampleRecord<F> {
    pub fn is_degenerate(&self) -> bool {
        self.gamma.degenerate_flag != DegenerateFlag::None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCoverage {
    pub place: Place,
    pub cases: Vec<Lemma1Case>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessVerdict {
    Established,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "F: GlobalField", deserialize = "F: GlobalField"))]
pub struct WitnessReport<F: GlobalField> {
    pub schema_version: u32,
    pub config: WitnessConfig<F>,
    pub t: F,
    pub lemma2: Lemma2Certificate<F>,
    /// What the Lemma 2 certificate covers.
    pub lemma2_scope: String,
    pub case_coverage: Vec<CaseCoverage>,
    pub samples: Vec<SampleRecord<F>>,
    pub verdict: WitnessVerdict,
    pub failures: Vec<String>,
}

const LEMMA2_SCOPE: &str = "irreducibility of f(X, gamma(Y, t)) is certified over K(Y); \
irreducibility over the totally S-adic field is the stated consequence and is not computed";

fn pow_signed<F: Field>(x: &F, e: i64) -> F {
    if e >= 0 {
        x.pow(e as u64)
    } else {
        x.inv().expect("nonzero").pow(e.unsigned_abs())
    }
}

/// The samples as `(enumeration index, y)`, ordered by index.
pub fn select_samples<F: GlobalField>(
    spec: &SampleSpec<F>,
    places: &PlaceSet,
) -> Result<Vec<(usize, F)>> {
    let (height, count, seed) = match spec {
        SampleSpec::Explicit { values } => {
            return Ok(values.iter().cloned().enumerate().collect());
        }
        SampleSpec::Enumerated {
            height,
            count,
            seed,
        } => (*height, *count, *seed),
    };
    let mut universe = F::enumerate_by_height(height)?;
    let mut chosen = BTreeSet::new();
    let pick = |x: F, universe: &mut Vec<F>, chosen: &mut BTreeSet<usize>| {
        let idx = match universe.iter().position(|u| *u == x) {
            Some(i) => i,
            None => {
                universe.push(x);
                universe.len() - 1
            }
        };
        chosen.insert(idx);
    };
    pick(F::zero(), &mut universe, &mut chosen);
    pick(F::one(), &mut universe, &mut chosen);
    for place in places.ultrametric() {
        let pi = F::uniformizer(place)?;
        pick(pow_signed(&pi, -1), &mut universe, &mut chosen);
        pick(pi, &mut universe, &mut chosen);
    }
    for place in places.ultrametric() {
        for case in [Lemma1Case::Unit, Lemma1Case::Negative, Lemma1Case::Positive] {
            let covered = chosen.iter().any(|&i| {
                universe[i]
                    .val_at_place(place)
                    .is_ok_and(|v| Lemma1Case::of(v) == case)
            });
            if !covered {
                if let Some(i) = universe.iter().position(|u| {
                    u.val_at_place(place)
                        .is_ok_and(|v| Lemma1Case::of(v) == case)
                }) {
                    chosen.insert(i);
                }
            }
        }
    }
    let mut rest: Vec<usize> = (0..universe.len())
        .filter(|i| !chosen.contains(i))
        .collect();
    rest.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let missing = count.saturating_sub(chosen.len());
    chosen.extend(rest.into_iter().take(missing));
    Ok(chosen
        .into_iter()
        .map(|i| (i, universe[i].clone()))
        .collect())
}

/// Irreducibility of `X² + X − c²` over `K`.
pub fn irreducibility_over_k<F: GlobalField>(c: &F) -> IrreducibilityOverK<F> {
    if F::characteristic() == 2 {
        let constant = c.square();
        return match constant.artin_schreier() {
            Some(decision) => IrreducibilityOverK {
                verdict: if decision.has_root() {
                    IrreducibilityVerdict::Reducible
                } else {
                    IrreducibilityVerdict::Irreducible
                },
                evidence: IrreducibilityEvidence::ArtinSchreier { constant, decision },
            },
            None => IrreducibilityOverK {
                verdict: IrreducibilityVerdict::Undecided,
                evidence: IrreducibilityEvidence::Unavailable {
                    reason: "no Artin-Schreier decision for this field".into(),
                },
            },
        };
    }
    let discriminant = family_discriminant(c);
    match discriminant.sqrt() {
        Some(root) => IrreducibilityOverK {
            verdict: IrreducibilityVerdict::Reducible,
            evidence: IrreducibilityEvidence::DiscriminantSquare { discriminant, root },
        },
        None => IrreducibilityOverK {
            verdict: IrreducibilityVerdict::Irreducible,
            evidence: IrreducibilityEvidence::DiscriminantNotSquare {
                certificate: nonsquare_certificate(&discriminant)
                    .unwrap_or(NonSquareCertificate::NoSquareRoot),
                discriminant,
            },
        },
    }
}

fn certify_sample<F: GlobalField>(
    index: usize,
    y: &F,
    t: &F,
    places: &PlaceSet,
    precision: usize,
) -> Result<SampleRecord<F>> {
    let gamma = gamma_eval(y, t)?;
    let Some(c) = gamma.value.clone() else {
        return Ok(SampleRecord {
            index,
            y: y.clone(),
            gamma,
            lemma1: Vec::new(),
            specialization: None,
            splitting: Vec::new(),
            irreducible_over_k: None,
            conclusion: Conclusion::Undefined,
            exhibits_new_element: false,
        });
    };
    let lemma1 = places
        .ultrametric()
        .map(|p| lemma1_certify(y, t, p))
        .collect::<Result<Vec<_>>>()?;
    let f = specialize_at(&c);
    let splitting = places
        .places()
        .iter()
        .map(|p| splits_at_place(&f, p, precision))
        .collect::<Result<Vec<_>>>()?;
    let irreducible = irreducibility_over_k(&c);
    let all_split = splitting.iter().all(PlaceSplitting::splits);
    Ok(SampleRecord {
        index,
        y: y.clone(),
        gamma,
        lemma1,
        specialization: Some(f),
        conclusion: if all_split {
            Conclusion::RootsInKTotS
        } else {
            Conclusion::NotSplit
        },
        exhibits_new_element: all_split
            && irreducible.verdict == IrreducibilityVerdict::Irreducible,
        splitting,
        irreducible_over_k: Some(irreducible),
    })
}

/// Run the whole pipeline for one configuration.
pub fn theorem_witness<F: GlobalField>(config: &WitnessConfig<F>) -> Result<WitnessReport<F>> {
    if config.base != F::TAG || config.places.base() != F::TAG {
        return Err(Error::InvalidInput(format!(
            "configuration mixes {} and {}",
            config.base,
            F::TAG
        )));
    }
    if config.precision == 0 {
        return Err(Error::InvalidInput("precision must be at least 1".into()));
    }
    let places = &config.places;
    let t: F = find_uniformizer(places)?;
    let lemma2 = lemma2_certify(&t, false)?;
    let mut failures = Vec::new();
    if lemma2.verdict != Lemma2Verdict::Irreducible {
        failures.push(format!("lemma2: verdict {:?} for t = {t}", lemma2.verdict));
    }
    if !lemma2.verify() {
        failures.push(format!(
            "lemma2: certificate for t = {t} does not re-verify"
        ));
    }
    let selected = select_samples(&config.samples, places)?;
    let samples = selected
        .par_iter()
        .map(|(i, y)| certify_sample(*i, y, &t, places, config.precision))
        .collect::<Result<Vec<_>>>()?;

    for s in &samples {
        for c in &s.lemma1 {
            if !c.holds {
                failures.push(format!(
                    "lemma1: y = {} at {}: v(gamma) = {}",
                    s.y, c.place, c.v_of_gamma
                ));
            }
        }
        let Some(f) = &s.specialization else {
            continue;
        };
        for sp in &s.splitting {
            if !verify_splitting(f, sp) {
                failures.push(format!(
                    "splitting: y = {} at {}: evidence does not re-verify",
                    s.y, sp.place
                ));
            }
            if !s.is_degenerate() && !sp.splits() {
                failures.push(format!(
                    "splitting: y = {} does not split at {}",
                    s.y, sp.place
                ));
            }
        }
    }
    let case_coverage = places
        .ultrametric()
        .map(|p| CaseCoverage {
            place: p.clone(),
            cases: samples
                .iter()
                .flat_map(|s| s.lemma1.iter())
                .filter(|c| c.place == *p)
                .map(|c| c.case)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        })
        .collect();
    Ok(WitnessReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        t,
        lemma2,
        lemma2_scope: LEMMA2_SCOPE.into(),
        case_coverage,
        samples,
        verdict: if failures.is_empty() {
            WitnessVerdict::Established
        } else {
            WitnessVerdict::Failed
        },
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{f2u::F2u, rational::Rational};
    use crate::theorem::splitting::SplitEvidence;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn rational_explicit_samples() {
        let config = WitnessConfig {
            base: FieldTag::Q,
            places: PlaceSet::parse(FieldTag::Q, "2,3,R").unwrap(),
            precision: 64,
            samples: SampleSpec::Explicit {
                values: ["1", "2", "1/3", "9", "0"].iter().map(|s| q(s)).collect(),
            },
        };
        let r = theorem_witness(&config).unwrap();
        assert_eq!(r.t, q("6"));
        assert_eq!(r.verdict, WitnessVerdict::Established, "{:?}", r.failures);
        let first = &r.samples[0];
        assert_eq!(first.gamma.value, Some(q("6/7")));
        assert!(first.exhibits_new_element);
        let zero = &r.samples[4];
        assert_eq!(zero.gamma.degenerate_flag, DegenerateFlag::YZero);
        assert_eq!(
            zero.irreducible_over_k.as_ref().unwrap().verdict,
            IrreducibilityVerdict::Reducible
        );
    }

    #[test]
    fn function_field_samples() {
        let u = F2u::u();
        let config = WitnessConfig {
            base: FieldTag::F2u,
            places: PlaceSet::parse(FieldTag::F2u, "(u)").unwrap(),
            precision: 32,
            samples: SampleSpec::Explicit {
                values: vec![F2u::one(), u.clone(), u.inv().unwrap()],
            },
        };
        let r = theorem_witness(&config).unwrap();
        assert_eq!(r.t, u);
        assert_eq!(r.verdict, WitnessVerdict::Established, "{:?}", r.failures);
        let SplitEvidence::ArtinSchreier { lifts, .. } = &r.samples[0].splitting[0].evidence else {
            panic!()
        };
        assert_eq!(lifts.len(), 2);
        assert_eq!(&lifts[0].root.digits[..6], &[1, 0, 1, 1, 1, 0]);
    }

    #[test]
    fn enumerated_selection_is_stable() {
        let places = PlaceSet::parse(FieldTag::Q, "2,3,R").unwrap();
        let spec = SampleSpec::Enumerated {
            height: 50,
            count: 200,
            seed: 7,
        };
        let a = select_samples::<Rational>(&spec, &places).unwrap();
        let b = select_samples::<Rational>(&spec, &places).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 200);
        assert!(a.windows(2).all(|w| w[0].0 < w[1].0));
        for anchor in ["0", "1", "2", "1/2", "3", "1/3"] {
            assert!(a.iter().any(|(_, y)| *y == q(anchor)), "{anchor}");
        }
    }
}
