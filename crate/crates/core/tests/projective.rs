use csck_core::momentum::build_q;
use csck_core::poly::positive_on;
use csck_core::projective::{
    build_projective_profile, c_m_of_b, c_m_range, c_of_b, hl_values, k_negative_beyond_a, pmy_check_projective,
    solve_b_given_c_m, CmRange, HlPolys,
};
use csck_core::scalar::{rat, ratio, ratio_to_f64};
use csck_core::{PolyQ, RatFuncQ, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn closed_form(b: &Rational) -> Rational {
    let b2 = b * b;
    let num = rat(2) * (rat(-13) + rat(37) * b + rat(39) * &b2 + rat(7) * &b2 * b + rat(2) * &b2 * &b2);
    let den = (b - rat(1)) * (b - rat(1)) * (rat(1) + rat(4) * b + &b2);
    num / den
}

#[test]
fn example_constants() {
    let (one, two) = (rat(1), rat(2));
    assert_eq!(c_m_of_b(1, 2, &one, &one, &two).unwrap(), ratio(610, 13));
    assert_eq!(c_of_b(1, 2, &one, &one, &two).unwrap(), ratio(276, 13));
    assert_eq!(c_m_of_b(1, 2, &one, &one, &rat(3)).unwrap(), ratio(200, 11));
}

#[test]
fn closed_form_at_twenty_points() {
    for k in 1..=20 {
        let b = rat(1) + ratio(9 * k, 21);
        assert_eq!(c_m_of_b(1, 2, &rat(1), &rat(1), &b).unwrap(), closed_form(&b), "b = {b}");
    }
}

#[test]
fn example_profile_is_exact() {
    let p = build_projective_profile(1, 2, &rat(1), &rat(1), &rat(2)).unwrap();
    let num = PolyQ::new([64, -114, 13, 60, -23].iter().map(|&c| rat(c)).collect());
    let den = PolyQ::new(vec![rat(0), rat(13), rat(13)]);
    assert_eq!(p.profile.phi, RatFuncQ::new(num, den).unwrap());
    let phi = &p.profile.phi;
    let dphi = phi.derivative();
    assert_eq!(phi.eval(&rat(1)), Some(rat(0)));
    assert_eq!(dphi.eval(&rat(1)), Some(rat(0)));
    assert_eq!(phi.eval(&rat(2)), Some(rat(0)));
    assert_eq!(dphi.eval(&rat(2)), Some(rat(-1)));
    assert!(p.extension_ok && p.only_root_below_b);
    let model = pmy_check_projective(&p).unwrap();
    assert!(model.terms.len() >= 2);
    assert!(p.profile.kappa_a > 0.0);
}

#[test]
fn hl_values_degenerate_and_invalid() {
    let hl = HlPolys::new(1, 2, &rat(1), &rat(1));
    let h = hl.eval(&rat(1));
    assert!(h.h1.is_zero() && h.h2.is_zero() && h.h3.is_zero() && h.l1.is_zero() && h.l2.is_zero());
    assert!(hl_values(1, 2, &rat(1), &rat(1), &rat(1)).is_err());
    assert!(hl_values(1, 2, &rat(-1), &ratio(1, 2), &rat(2)).is_err());
    assert!(build_projective_profile(1, 2, &rat(1), &rat(1), &rat(1)).is_err());
}

#[test]
fn negative_lambda_examples() {
    let roots = solve_b_given_c_m(1, 2, &rat(-1), &ratio(1, 1000), &rat(2), 1e-12).unwrap();
    assert_eq!(roots.len(), 2);
    assert!((roots[0].b_approx - 0.0893745).abs() < 1e-3);
    assert!((roots[0].c_approx / 68.7366 - 1.0).abs() < 1e-3);
    assert!((roots[1].b_approx - 0.998).abs() < 1e-3);
    assert!((roots[1].c_approx / 11.9761 - 1.0).abs() < 1e-3);

    let roots = solve_b_given_c_m(1, 2, &rat(-1), &ratio(1, 10), &rat(-2), 1e-12).unwrap();
    assert_eq!(roots.len(), 1);
    assert!((roots[0].b_approx - 0.61146).abs() < 1e-4);
    assert!((roots[0].c_approx - 5.02242).abs() < 1e-3);
    let cm = c_m_of_b(1, 2, &rat(-1), &ratio(1, 10), &ratio(61146, 100000)).unwrap();
    assert!((ratio_to_f64(&cm) + 2.0).abs() < 1e-3);
    for r in roots {
        let p = build_projective_profile(1, 2, &rat(-1), &ratio(1, 10), &r.b).unwrap();
        assert!(p.extension_ok && p.only_root_below_b);
        assert!(pmy_check_projective(&p).is_ok());
    }
}

#[test]
fn round_trip_and_range() {
    let roots = solve_b_given_c_m(1, 2, &rat(1), &rat(1), &ratio(610, 13), 1e-12).unwrap();
    assert!(roots.iter().any(|r| r.b == rat(2)));
    let err = solve_b_given_c_m(1, 2, &rat(1), &rat(1), &rat(3), 1e-12).unwrap_err();
    assert!(err.to_string().contains('4'));
    assert_eq!(c_m_range(1, 2, &rat(1)).unwrap(), CmRange::Above("4".into()));
    assert_eq!(c_m_range(1, 2, &rat(-1)).unwrap(), CmRange::All);
    assert_eq!(c_m_range(2, 3, &rat(2)).unwrap(), CmRange::Above("28".into()));
    assert!(c_m_range(1, 2, &rat(0)).is_err());
}

#[test]
fn limit_from_above() {
    let mut b = rat(1) + ratio(1, 64);
    let mut last = f64::INFINITY;
    while b <= rat(1000) {
        let cm = c_m_of_b(1, 2, &rat(1), &rat(1), &b).unwrap();
        assert!(cm > rat(4), "b = {b}");
        last = ratio_to_f64(&cm);
        b = &b * rat(2);
    }
    let at = ratio_to_f64(&c_m_of_b(1, 2, &rat(1), &rat(1), &rat(1000)).unwrap());
    assert!((at - 4.0).abs() < 0.05 && last > 4.0);
}

#[test]
fn k_inequality_holds() {
    for (m, n, a) in [(1, 2, rat(1)), (1, 3, ratio(1, 2)), (2, 2, rat(3)), (2, 3, ratio(1, 5))] {
        assert!(k_negative_beyond_a(m, n, &rat(1), &a).unwrap(), "{m} {n} {a}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closing_profiles_have_no_interior_root(lam in prop::sample::select(vec![1i64, -1]), a in (1i64..=30).prop_map(|k| ratio(k, 40)), frac in 1i64..=19) {
        let lambda = rat(lam);
        let b = if lam < 0 { &a + (rat(1) - &a) * ratio(frac, 20) } else { &a * (rat(1) + ratio(frac, 4)) };
        if let Ok(p) = build_projective_profile(1, 2, &lambda, &a, &b) {
            prop_assert!(p.extension_ok);
            prop_assert!(p.only_root_below_b);
            prop_assert!(positive_on(&p.profile.p, &a, Some(&b)).unwrap());
            prop_assert!(build_q(1, 2, &lambda).eval(&b).is_positive());
        }
    }

    #[test]
    fn solve_recovers_b(frac in 1i64..=19, a in (1i64..=30).prop_map(|k| ratio(k, 40))) {
        let b = &a + (rat(1) - &a) * ratio(frac, 20);
        let cm = c_m_of_b(1, 2, &rat(-1), &a, &b).unwrap();
        let roots = solve_b_given_c_m(1, 2, &rat(-1), &a, &cm, 1e-12).unwrap();
        prop_assert!(roots.iter().any(|r| (r.b_approx - ratio_to_f64(&b)).abs() < 1e-10));
    }
}
