use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use totsadic_core::algebra::f2u::{artin_schreier_root, f2_poly_from_bits};
use totsadic_core::algebra::ratfunc::RatFunc;
use totsadic_core::theorem::lemma2::discriminant_numerator;
use totsadic_core::theorem::witness::IrreducibilityVerdict;
use totsadic_core::theorem::{
    gamma_eval, gamma_ratfunc, gamma_symmetry_check, is_totally_s_adic, lemma1_certify,
    lemma2_certify, theorem_witness, DegenerateFlag, Lemma1Case, Lemma2Evidence, Lemma2Verdict,
    Membership, SampleSpec, WitnessConfig, WitnessVerdict,
};
use totsadic_core::{
    F2u, Field, FieldTag, GlobalField, Place, PlaceSet, Poly, Rational, Valuation,
};

fn coprime_to(rng: &mut ChaCha8Rng, p: i64, max: i64) -> i64 {
    loop {
        let a = rng.gen_range(1..=max);
        if a % p != 0 {
            return a;
        }
    }
}

fn random_rational_with_valuation(rng: &mut ChaCha8Rng, p: i64, k: i64) -> Rational {
    let a = coprime_to(rng, p, 40);
    let b = coprime_to(rng, p, 40);
    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
    let pk = Rational::integer(p).pow(k.unsigned_abs());
    let unit = Rational::new(sign * a, b);
    if k >= 0 {
        unit.mul(&pk)
    } else {
        unit.div(&pk).unwrap()
    }
}

#[test]
fn lemma1_sweep_over_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [2i64, 3, 5, 7] {
        let place = Place::Padic(p as u64);
        let t = Rational::integer(p);
        let mut seen = [0usize; 3];
        for i in 0..1000 {
            let k = match i % 3 {
                0 => 0,
                1 => -rng.gen_range(1..=3),
                _ => rng.gen_range(1..=3),
            };
            let y = random_rational_with_valuation(&mut rng, p, k);
            let c = lemma1_certify(&y, &t, &place).unwrap();
            assert!(c.holds, "y = {y} at {p}");
            assert_eq!(c.case, Lemma1Case::of(Valuation::Finite(k)));
            assert!(c.v_of_gamma.is_at_least(1));
            seen[i % 3] += 1;
        }
        assert!(seen.iter().all(|&n| n > 300));
    }
}

#[test]
fn lemma1_sweep_over_f2u() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (bits, src) in [(0b10u64, "(u)"), (0b11, "(u+1)")] {
        let place: Place = src.parse().unwrap();
        let t = F2u::from_poly(f2_poly_from_bits(bits));
        for i in 0..200 {
            let unit = loop {
                let n = F2u::from_poly(f2_poly_from_bits(rng.gen_range(1..256)));
                let d = F2u::from_poly(f2_poly_from_bits(rng.gen_range(1..256)));
                let x = n.div(&d).unwrap();
                if x.val_at_place(&place).unwrap() == Valuation::Finite(0) {
                    break x;
                }
            };
            let k: i64 = match i % 3 {
                0 => 0,
                1 => -rng.gen_range(1..=3),
                _ => rng.gen_range(1..=3),
            };
            let y = if k >= 0 {
                unit.mul(&t.pow(k as u64))
            } else {
                unit.div(&t.pow(k.unsigned_abs())).unwrap()
            };
            let c = lemma1_certify(&y, &t, &place).unwrap();
            assert!(c.holds);
            assert_eq!(c.case, Lemma1Case::of(Valuation::Finite(k)));
        }
    }
}

#[test]
fn lemma2_boundary_is_exact() {
    for t in -10i64..=10 {
        let c = lemma2_certify(&Rational::integer(t), true).unwrap();
        assert!(c.verify(), "t = {t}");
        if t == 0 || t == -1 {
            assert_eq!(c.verdict, Lemma2Verdict::ReducibleBoundary);
        } else {
            assert_eq!(c.verdict, Lemma2Verdict::Irreducible, "t = {t}");
            assert!(matches!(c.evidence, Lemma2Evidence::NotASquare { .. }));
        }
    }
}

#[test]
fn discriminant_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let t = Rational::new(rng.gen_range(-50..=50), rng.gen_range(1..=50));
        if t.is_zero() || t == Rational::integer(-1) {
            continue;
        }
        let g = gamma_ratfunc(&t);
        let lhs = RatFunc::<Rational>::one().add(&RatFunc::from_i64(4).mul(&g.square()));
        let y2t = Poly::new(vec![t.clone(), Rational::zero(), Rational::one()]);
        // (1 + 4γ²)(Y² + t)² = (Y² + t)² + 4(tY)²
        let cross = lhs.mul(&RatFunc::from_poly(y2t.square()));
        assert_eq!(cross, RatFunc::from_poly(discriminant_numerator(&t)));
    }
}

#[test]
fn gamma_symmetry_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checked = 0;
    while checked < 500 {
        let y = Rational::new(rng.gen_range(-40..=40), rng.gen_range(1..=40));
        let t = Rational::new(rng.gen_range(-40..=40), rng.gen_range(1..=40));
        if y.is_zero() || t.is_zero() || t == Rational::integer(-1) || y.square().add(&t).is_zero()
        {
            continue;
        }
        // independent evaluation of both sides
        let lhs = y.mul(&t).div(&y.square().add(&t)).unwrap();
        let y2 = t.div(&y).unwrap();
        let rhs = y2.mul(&t).div(&y2.square().add(&t)).unwrap();
        assert_eq!(lhs, rhs);
        assert!(gamma_symmetry_check(&y, &t).unwrap());
        checked += 1;
    }
}

fn soundness<F: GlobalField>(base: FieldTag, places: &str, height: u64, count: usize) {
    let config = WitnessConfig::<F> {
        base,
        places: PlaceSet::parse(base, places).unwrap(),
        precision: 24,
        samples: SampleSpec::Enumerated {
            height,
            count,
            seed: 3,
        },
    };
    let report = theorem_witness(&config).unwrap();
    assert_eq!(
        report.verdict,
        WitnessVerdict::Established,
        "{:?}",
        report.failures
    );
    for s in &report.samples {
        let f = s.specialization.as_ref().unwrap();
        let m = is_totally_s_adic(f, &config.places, 24).unwrap();
        assert_eq!(m.verdict, Membership::True, "y = {}", s.y);
    }
}

#[test]
fn end_to_end_soundness() {
    soundness::<Rational>(FieldTag::Q, "2,3,R", 20, 40);
    soundness::<Rational>(FieldTag::Q, "5,R", 20, 30);
    soundness::<Rational>(FieldTag::Q, "7", 20, 30);
    soundness::<Rational>(FieldTag::Q, "R", 20, 30);
    soundness::<F2u>(FieldTag::F2u, "(u)", 3, 30);
    soundness::<F2u>(FieldTag::F2u, "(u+1),(u^2+u+1)", 3, 30);
}

#[test]
fn irreducible_over_q_yet_split_on_s() {
    let config = WitnessConfig::<Rational> {
        base: FieldTag::Q,
        places: PlaceSet::parse(FieldTag::Q, "2,3,R").unwrap(),
        precision: 64,
        samples: SampleSpec::Explicit {
            values: vec![Rational::one()],
        },
    };
    let r = theorem_witness(&config).unwrap();
    let s = &r.samples[0];
    assert_eq!(
        s.specialization.as_ref().unwrap().to_string(),
        "X^2+X-36/49"
    );
    assert!(s.splitting.iter().all(|p| p.splits()));
    assert_eq!(
        s.irreducible_over_k.as_ref().unwrap().verdict,
        IrreducibilityVerdict::Irreducible
    );
    // 193 is not a perfect square
    let r193 = BigInt::from(193).sqrt();
    assert_ne!(&r193 * &r193, BigInt::from(193));
}

/// If `b = N/D` with `deg D ≤ 6` solved `b² + b = γ(Y, t)` identically, then
/// `b(y)` would solve `z² + z = γ(y, t)` whenever `D(y) ≠ 0`; seven distinct
/// `y` without such a `z` rule this out.
fn artin_schreier_obstruction(t: &F2u, needed: usize) -> Vec<F2u> {
    let mut witnesses = Vec::new();
    for bits in 1u64..512 {
        let y = F2u::from_poly(f2_poly_from_bits(bits));
        let g = gamma_eval(&y, t).unwrap();
        if g.degenerate_flag != DegenerateFlag::None {
            continue;
        }
        if !artin_schreier_root(&g.value.unwrap()).has_root() {
            witnesses.push(y);
            if witnesses.len() == needed {
                break;
            }
        }
    }
    witnesses
}

#[test]
fn char_two_obstruction_agrees_with_valuation_parity() {
    for src in ["u", "u+1", "u^2+u", "u^2+u+1"] {
        let t: F2u = src.parse().unwrap();
        let c = lemma2_certify(&t, false).unwrap();
        assert_eq!(c.verdict, Lemma2Verdict::Irreducible);
        let Lemma2Evidence::OddValuation { valuation, .. } = c.evidence else {
            panic!("{src}")
        };
        assert_eq!(valuation, Valuation::Finite(-1));
        assert_eq!(artin_schreier_obstruction(&t, 7).len(), 7, "{src}");
    }
}
