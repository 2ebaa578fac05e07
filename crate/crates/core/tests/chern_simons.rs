mod common;

use abelian_cs::chern_simons::{
    check_charge, check_level, evaluate, evaluate_with_witnesses, phase_from_linking,
    single_component_phase, torsion_form_contains_trivial_form, wilson_expectation, CsLevel,
    WilsonComponent, WilsonLink,
};
use abelian_cs::error::{CsError, LinkingError, Rejection};
use abelian_cs::linalg::PhaseModOne;
use abelian_cs::linking::{
    classify, intersection_number, pushoff_with_self_linking, FramedCycle, LinkingNumber,
};
use abelian_cs::manifold::Triangulation;
use abelian_cs::par::Parallelism;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn level(k: i64) -> CsLevel {
    CsLevel::new(k).unwrap()
}

fn designated(tri: &Triangulation, cycle: &str, pushoff: &str) -> FramedCycle {
    FramedCycle::new(
        tri,
        cycle,
        tri.designated(cycle).unwrap().clone(),
        tri.designated(pushoff).unwrap().clone(),
    )
    .unwrap()
}

fn single(framed: FramedCycle, charge: i64) -> WilsonLink {
    WilsonLink::new(vec![WilsonComponent { framed, charge }]).unwrap()
}

fn framed_with_sl(tri: &Triangulation, cycle: &str, n: i64) -> FramedCycle {
    let z = tri.designated(cycle).unwrap().clone();
    let target = BigRational::from_integer(BigInt::from(n));
    let f = pushoff_with_self_linking(tri, cycle, &z, &target, &[]).unwrap();
    FramedCycle::new(tri, cycle, z, f).unwrap()
}

#[test]
fn trivial_component_follows_framing() {
    let tri = common::model("s3-join");
    for n in -2..=2i64 {
        let fz = framed_with_sl(&tri, "hopf_b", n);
        for q in 1..=3i64 {
            for k in [2, 4] {
                let e = wilson_expectation(&single(fz.clone(), q), level(k), &tri).unwrap();
                assert_eq!(e.phase, PhaseModOne::from_ratio(-q * q * n, 4 * k), "n={n} q={q} k={k}");
            }
        }
    }
}

#[test]
fn zero_framing_is_trivial() {
    let tri = common::model("s3-join");
    let fz = framed_with_sl(&tri, "hopf_a", 0);
    for (q, k) in [(1, 1), (5, 3), (-2, 7)] {
        let e = wilson_expectation(&single(fz.clone(), q), level(k), &tri).unwrap();
        assert!(e.phase.is_zero());
        assert_eq!(e.render(3), "1.000 + 0.000i");
    }
}

#[test]
fn projective_generator_phase() {
    let tri = common::model("rp3");
    let fz = designated(&tri, "tau1", "tau1_f");
    let class = classify(fz.cycle(), &tri);
    let i = intersection_number(class.witness().unwrap(), fz.pushoff(), &tri);
    assert_eq!(i, BigInt::from(3));
    let e = wilson_expectation(&single(fz, 2), level(2), &tri).unwrap();
    // −(q²/4k)·(I/2) with q = k = 2, I = 3.
    assert_eq!(e.phase, PhaseModOne::from_ratio(-3, 4));
    assert_eq!(e.phase.to_string(), "1/4");
    assert_eq!(e.phase, single_component_phase(2, level(2), &i, 2));
}

#[test]
fn torsion_formula_on_lens_spaces() {
    for p in 2..=5i64 {
        let tri = common::model(&format!("lens-{p}"));
        let fz = designated(&tri, "tau1", "tau1_f");
        let class = classify(fz.cycle(), &tri);
        let i = intersection_number(class.witness().unwrap(), fz.pushoff(), &tri);
        for q in [p, 2 * p] {
            for k in [p, 2 * p, 3 * p] {
                let e = wilson_expectation(&single(fz.clone(), q), level(k), &tri).unwrap();
                assert_eq!(e.phase, single_component_phase(q, level(k), &i, p as u64));
            }
        }
    }
}

#[test]
fn charge_sign_does_not_matter() {
    let tri = common::model("s3-join");
    let a = designated(&tri, "hopf_a", "hopf_a_f");
    let b = designated(&tri, "hopf_b", "hopf_b_f");
    let link = |qa, qb| {
        WilsonLink::new(vec![
            WilsonComponent { framed: a.clone(), charge: qa },
            WilsonComponent { framed: b.clone(), charge: qb },
        ])
        .unwrap()
    };
    let k = level(3);
    let e = |l: &WilsonLink| wilson_expectation(l, k, &tri).unwrap().phase;
    assert_eq!(e(&link(2, 3)), e(&link(-2, -3)));
    assert_ne!(e(&link(1, 1)), e(&link(1, -1)));
}

#[test]
fn hopf_link_phase() {
    let tri = common::model("s3-join");
    let a = designated(&tri, "hopf_a", "hopf_a_f");
    let b = designated(&tri, "hopf_b", "hopf_b_f");
    let link = WilsonLink::new(vec![
        WilsonComponent { framed: a, charge: 1 },
        WilsonComponent { framed: b, charge: 1 },
    ])
    .unwrap();
    let eval = evaluate(&link, level(2), &tri, Parallelism::Sequential).unwrap();
    let one = LinkingNumber::from_ratio(1, 1);
    assert_eq!(eval.linking, vec![vec![one.clone(), one.clone()], vec![one.clone(), one]]);
    // −(1 + 1 + 2)/8.
    assert_eq!(eval.expectation.phase, PhaseModOne::from_ratio(1, 2));
    assert_eq!(eval, evaluate(&link, level(2), &tri, Parallelism::Auto).unwrap());
}

#[test]
fn twist_shifts_phase_by_one_unit() {
    let tri = common::model("s3-join");
    let z = tri.designated("hopf_a").unwrap().clone();
    let (q, k) = (3, 5);
    let phase = |twist| {
        let f = FramedCycle::with_twist(&tri, "a", z.clone(), twist, &[]).unwrap();
        wilson_expectation(&single(f, q), level(k), &tri).unwrap().phase
    };
    let step = PhaseModOne::from_ratio(-q * q, 4 * k);
    assert_eq!(phase(1), &phase(0) + &step);
    assert_eq!(phase(-1), &phase(0) - &step);
}

#[test]
fn level_constraint() {
    let rp3 = common::model("rp3");
    let err = check_level(level(3), &rp3).unwrap_err();
    assert_eq!(err, CsError::Rejected(Rejection::Level { k: 3, exponent: 2 }));
    assert!(err.to_string().contains("k = 2l"));
    assert!(check_level(level(4), &rp3).is_ok());
    assert!(check_level(level(-2), &rp3).is_ok());
    assert!(check_level(level(1), &common::model("s3")).is_ok());
    let lens = common::model("lens-3");
    assert!(check_level(level(3), &lens).is_ok());
    assert!(check_level(level(2), &lens).is_err());
    assert_eq!(CsLevel::new(0), Err(CsError::ZeroLevel));
}

#[test]
fn charge_constraint() {
    let rp3 = common::model("rp3");
    let class = classify(rp3.designated("tau1").unwrap(), &rp3);
    let err = check_charge("tau1", 1, &class, &rp3).unwrap_err();
    assert!(matches!(err, CsError::Rejected(Rejection::Charge { q: 1, degree: 2, .. })));
    assert!(err.to_string().contains("q = 2m"));
    assert!(check_charge("tau1", 2, &class, &rp3).is_ok());
    let s3 = common::model("s3");
    let trivial = classify(s3.designated("triangle_loop").unwrap(), &s3);
    assert!(check_charge("loop", 3, &trivial, &s3).is_ok());
    assert!(matches!(check_charge("loop", 0, &trivial, &s3), Err(CsError::ZeroCharge(_))));
}

#[test]
fn evaluation_enforces_constraints() {
    let tri = common::model("rp3");
    let fz = designated(&tri, "tau1", "tau1_f");
    assert!(matches!(
        wilson_expectation(&single(fz.clone(), 2), level(3), &tri),
        Err(CsError::Rejected(Rejection::Level { .. }))
    ));
    assert!(matches!(
        wilson_expectation(&single(fz, 1), level(2), &tri),
        Err(CsError::Rejected(Rejection::Charge { .. }))
    ));
}

#[test]
fn overlapping_components_rejected() {
    let tri = common::model("s3-join");
    let a = designated(&tri, "hopf_a", "hopf_a_f");
    let err = WilsonLink::new(vec![
        WilsonComponent { framed: a.clone(), charge: 1 },
        WilsonComponent { framed: a, charge: 1 },
    ])
    .unwrap_err();
    assert!(matches!(err, CsError::Linking(LinkingError::NotDisjoint(..))));
    let b = designated(&tri, "hopf_b", "hopf_b_f");
    assert!(matches!(
        WilsonLink::new(vec![WilsonComponent { framed: b, charge: 0 }]),
        Err(CsError::ZeroCharge(_))
    ));
}

#[test]
fn witnesses_must_bound() {
    let tri = common::model("rp3");
    let fz = designated(&tri, "tau1", "tau1_f");
    let c = classify(fz.cycle(), &tri).witness().unwrap().clone();
    let link = single(fz, 2);
    assert!(evaluate_with_witnesses(&link, level(2), &tri, &[(c.clone(), 2)], Parallelism::Auto).is_ok());
    assert!(matches!(
        evaluate_with_witnesses(&link, level(2), &tri, &[(c.clone(), 1)], Parallelism::Auto),
        Err(CsError::Linking(LinkingError::BadWitness { .. }))
    ));
    assert!(evaluate_with_witnesses(&link, level(2), &tri, &[], Parallelism::Auto).is_err());
}

#[test]
fn doubled_witness_route_agrees() {
    let tri = common::model("s3-join");
    for n in -2..=2 {
        let fz = framed_with_sl(&tri, "hopf_b", n);
        for q in 1..=3 {
            assert!(torsion_form_contains_trivial_form(&fz, q, level(2), &tri).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn phase_is_quadratic_in_charges(
        sl in proptest::collection::vec((-6i64..6, 1i64..4), 3),
        cross in proptest::collection::vec((-6i64..6, 1i64..4), 3),
        q in proptest::collection::vec(-5i64..=5, 3),
        k in 1i64..9,
    ) {
        let l = |(n, d): (i64, i64)| LinkingNumber::from_ratio(n, d);
        let m = vec![
            vec![l(sl[0]), l(cross[0]), l(cross[1])],
            vec![l(cross[0]), l(sl[1]), l(cross[2])],
            vec![l(cross[1]), l(cross[2]), l(sl[2])],
        ];
        let k = level(k);
        let p = phase_from_linking(&q, &m, k);
        let neg: Vec<i64> = q.iter().map(|x| -x).collect();
        prop_assert_eq!(&p, &phase_from_linking(&neg, &m, k));
        let doubled: Vec<i64> = q.iter().map(|x| 2 * x).collect();
        prop_assert_eq!(p.scale(&BigInt::from(4)), phase_from_linking(&doubled, &m, k));
        // Quadratic form expansion against a direct sum.
        let mut total = BigRational::from_integer(0.into());
        for i in 0..3 {
            for j in 0..3 {
                total += m[i][j].value() * BigRational::from_integer(BigInt::from(q[i] * q[j]));
            }
        }
        let direct = PhaseModOne::new(-total / BigRational::from_integer(BigInt::from(4 * k.value())));
        prop_assert_eq!(p, direct);
    }
}
