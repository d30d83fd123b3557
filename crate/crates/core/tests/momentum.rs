use csck_core::momentum::{
    build_p, build_profile, build_profile_at_c0, build_q, curvature_integrand, growth_exponent, infinity_asymptotics,
    is_allowable, pmy_coefficients, solve_lambda_negative, split_p, sup_allowable_c, BundleProblem, C0Class, CaseTag,
    TotalSpace,
};
use csck_core::asymptotics::{Basis, Location};
use csck_core::projective::hl_values;
use csck_core::scalar::{rat, ratio, ratio_to_f64};
use csck_core::{PolyQ, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn q(v: &[Rational]) -> PolyQ {
    PolyQ::new(v.to_vec())
}

fn bundle(m: u32, n: u32, lambda: Rational, c_m: Rational, c: Rational, a: Rational) -> BundleProblem {
    BundleProblem::new(m, n, lambda, c_m, c, a).unwrap()
}

#[test]
fn q_expansions() {
    assert_eq!(build_q(1, 2, &rat(1)), q(&[rat(0), rat(1), rat(1)]));
    assert_eq!(build_q(1, 2, &rat(-1)), q(&[rat(0), rat(1), rat(-1)]));
    assert_eq!(build_q(2, 2, &rat(0)), q(&[rat(0), rat(1)]));
    assert_eq!(build_q(2, 3, &rat(1)).degree(), Some(4));
}

#[test]
fn example_split() {
    let c = rat(-1);
    let g = curvature_integrand(1, 2, &rat(1), &rat(-4), &c);
    assert_eq!(g, q(&[rat(2), -(&c + rat(2)), -c]));
    let (p0, p1) = split_p(1, 2, &rat(1), &rat(-4), &rat(1));
    assert_eq!(p0, q(&[ratio(1, 3), rat(-1), rat(1), ratio(-1, 3)]));
    assert_eq!(p1, q(&[ratio(7, 12), ratio(-5, 6), rat(0), ratio(1, 6), ratio(1, 12)]));
}

#[test]
fn supremum_example_double_root() {
    let s = sup_allowable_c(1, 2, &rat(1), &rat(-4), &rat(1), 1e-8).unwrap();
    assert_eq!(s.class, C0Class::NotInSet);
    assert!((s.c0 - (-0.3094)).abs() < 5e-4, "{}", s.c0);
    assert!((s.b.unwrap() - 4.4641).abs() < 5e-4);
    let (prof, _) = build_profile_at_c0(1, 2, &rat(1), &rat(-4), &rat(1), 1e-8).unwrap();
    assert_eq!(prof.case_tag, CaseTag::CaseIVEstarDoubleRoot);
    assert_eq!(prof.total_space, TotalSpace::Estar);
    let b = prof.b.clone().unwrap();
    assert!(prof.p.eval(&b).is_zero() && prof.p.derivative().eval(&b).is_zero());
    assert!(prof.kappa_b.unwrap() > 0.0);
    assert!(prof.p.derivative_n(2).eval(&b).is_positive());
}

#[test]
fn supremum_attained_and_zero_cases() {
    let s = sup_allowable_c(1, 2, &rat(1), &rat(-8), &rat(1), 1e-8).unwrap();
    assert_eq!(s.class, C0Class::InSetNegative);
    assert!((s.c0 + 2.0).abs() < 1e-6);
    let s = sup_allowable_c(1, 2, &rat(1), &rat(5), &rat(1), 1e-8).unwrap();
    assert_eq!(s.class, C0Class::InSetZero);
    assert_eq!(s.c0, 0.0);
}

#[test]
fn supremum_is_sharp() {
    let tol = 1e-6;
    let s = sup_allowable_c(1, 2, &rat(1), &rat(-4), &rat(1), tol).unwrap();
    let (p0, p1) = split_p(1, 2, &rat(1), &rat(-4), &rat(1));
    let below = csck_core::scalar::f64_to_ratio(s.c0 - tol).unwrap();
    let above = csck_core::scalar::f64_to_ratio(s.c0 + tol).unwrap();
    assert!(is_allowable(&p0, &p1, &rat(1), &below).unwrap());
    assert!(!is_allowable(&p0, &p1, &rat(1), &above).unwrap());
}

#[test]
fn case_classification() {
    let p = build_profile(&bundle(1, 2, rat(1), rat(-8), rat(-2), rat(1))).unwrap();
    assert_eq!(p.case_tag, CaseTag::CaseIIIUstarC0Neg);
    assert_eq!(p.total_space, TotalSpace::Ustar);
    assert!(p.kappa_a_exact.is_zero());

    let p = build_profile(&bundle(1, 2, rat(1), rat(5), rat(0), rat(1))).unwrap();
    assert_eq!(p.case_tag, CaseTag::CaseIIEstarC0Zero);
    let model = infinity_asymptotics(&p);
    assert_eq!(model.location, Location::InfinityBundle);
    let theta = growth_exponent(1, 2, &rat(1), &rat(5));
    assert_eq!(theta, ratio(7, 6));
    assert!(model.terms.iter().any(|t| t.basis == Basis::PowR2(ratio_to_f64(&theta))));

    let p = build_profile(&bundle(1, 2, rat(1), rat(5), rat(-1), rat(1))).unwrap();
    assert_eq!(p.case_tag, CaseTag::CaseIUstar);
    assert_eq!(infinity_asymptotics(&p).coefficient_of(Basis::PoincareLog), Some(12.0));

    let p = build_profile(&bundle(1, 2, rat(1), rat(-8), rat(-2), rat(1))).unwrap();
    assert_eq!(infinity_asymptotics(&p).coefficient_of(Basis::PoincareLog), Some(6.0));

    assert!(build_profile(&bundle(1, 2, rat(1), rat(5), rat(1), rat(1))).is_err());
}

#[test]
fn lambda_zero_degree_gap() {
    let p = build_profile(&bundle(1, 2, rat(0), rat(3), rat(3), rat(1))).unwrap();
    assert_eq!(p.degree_gap, 1);
    assert_eq!(p.total_space, TotalSpace::Estar);
    let p = build_profile(&bundle(1, 2, rat(0), rat(3), rat(2), rat(1))).unwrap();
    assert_eq!(p.degree_gap, 2);
    assert_eq!(p.total_space, TotalSpace::Ustar);
    assert!((p.kappa_a - 3.0).abs() < 1e-15);
    let model = pmy_coefficients(&p).unwrap();
    assert_eq!(model.coefficient_of(Basis::LogNegLogR2), Some(-2.0 / 3.0));
    assert!(build_profile(&bundle(1, 2, rat(0), rat(3), rat(4), rat(1))).is_err());
}

#[test]
fn degenerate_puncture_models() {
    let p = build_profile(&bundle(1, 2, rat(1), rat(-8), rat(-2), rat(1))).unwrap();
    let model = pmy_coefficients(&p).unwrap();
    assert!(model.terms.iter().any(|t| matches!(t.basis, Basis::NegLogR2Pow(e) if (e - 0.5).abs() < 1e-12 || (e - 2.0 / 3.0).abs() < 1e-12)));
}

#[test]
fn lambda_negative_solve() {
    let sols = solve_lambda_negative(1, 2, &rat(-1), &rat(2), &ratio(1, 1000), 1e-12).unwrap();
    assert_eq!(sols.len(), 1);
    let s = &sols[0];
    assert_eq!(s.b, ratio(999, 1000));
    assert!(s.c_approx > 0.0);
    assert!((s.c_approx - 11.97607).abs() < 1e-4);
    let h = hl_values(1, 2, &rat(-1), &ratio(1, 1000), &s.b).unwrap();
    let back = rat(2) * &h.h1 / &h.h2;
    assert!((ratio_to_f64(&back) - 2.0).abs() < 1e-10);
    assert!(solve_lambda_negative(1, 2, &rat(-1), &rat(-2), &ratio(1, 10), 1e-12).is_err());
}

#[test]
fn h_blows_up_at_small_zeta_and_vanishes_near_the_pole() {
    let lam = rat(-1);
    let h = |a: &Rational, b: &Rational| {
        let v = hl_values(1, 2, &lam, a, b).unwrap();
        ratio_to_f64(&(&v.h1 / &v.h2))
    };
    let small: Vec<f64> = (1..=6).map(|k| h(&ratio(1, 10i64.pow(k)), &ratio(2, 10i64.pow(k)))).collect();
    assert!(small.windows(2).all(|w| w[1] > 5.0 * w[0]), "{small:?}");
    let near: Vec<f64> = (1..=6)
        .map(|k| {
            let e = ratio(1, 10i64.pow(k));
            h(&(rat(1) - rat(2) * &e), &(rat(1) - &e))
        })
        .collect();
    assert!(near.windows(2).all(|w| w[1] < w[0]) && *near.last().unwrap() < 1e-4, "{near:?}");
}

#[test]
fn finite_interval_rejects_zero_a() {
    assert!(BundleProblem::new(1, 2, rat(1), rat(1), rat(0), rat(0)).is_err());
    assert!(BundleProblem::new(1, 2, rat(-1), rat(1), rat(0), rat(2)).is_err());
}

fn arb_rational(lo: i64, hi: i64) -> impl Strategy<Value = Rational> {
    (lo..=hi, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn p_has_double_root_at_a_and_matches_curvature(m in 1u32..=3, n in 2u32..=4, lambda in arb_rational(-3, 3), c_m in arb_rational(-20, 20), c in arb_rational(-20, 20), a in arb_rational(1, 12)) {
        prop_assume!(!lambda.is_negative() || (rat(1) + &lambda * &a).is_positive());
        let prob = bundle(m, n, lambda.clone(), c_m.clone(), c.clone(), a.clone());
        let p = build_p(&prob);
        prop_assert!(p.eval(&a).is_zero());
        prop_assert!(p.derivative().eval(&a).is_zero());
        prop_assert_eq!(p.derivative_n(2), curvature_integrand(m, n, &lambda, &c_m, &c));
        let (p0, p1) = split_p(m, n, &lambda, &c_m, &a);
        prop_assert_eq!(&p0 - &p1.scale(&c), p);
    }

    #[test]
    fn lambda_negative_roots_are_double(c_m in arb_rational(1, 30), a in (1i64..=40).prop_map(|k| ratio(k, 100))) {
        let lam = rat(-1);
        for s in solve_lambda_negative(1, 2, &lam, &c_m, &a, 1e-12).unwrap_or_default() {
            prop_assert!(s.b > a && s.b < rat(1));
            let prob = bundle(1, 2, lam.clone(), s.c_m.clone(), s.c.clone(), a.clone());
            let p = build_p(&prob);
            prop_assert!(p.eval(&s.b).is_zero() && p.derivative().eval(&s.b).is_zero());
            prop_assert!(s.c.is_positive());
            prop_assert!((ratio_to_f64(&s.c_m) - ratio_to_f64(&c_m)).abs() < 1e-9 * ratio_to_f64(&c_m).abs().max(1.0));
        }
    }

    #[test]
    fn h_values_positive_for_negative_lambda(m in 1u32..=3, n in 2u32..=4, a in (1i64..=90).prop_map(|k| ratio(k, 100)), frac in 1i64..=99) {
        let b = &a + (rat(1) - &a) * ratio(frac, 100);
        let h = hl_values(m, n, &rat(-1), &a, &b).unwrap();
        prop_assert!(h.h1.is_positive() && h.h2.is_positive() && h.h3.is_positive());
    }
}
