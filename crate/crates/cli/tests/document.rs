use csck_cli::document::{InputRecord, ProfileDocument, Tolerances};
use csck_core::flat::{build_f, FlatProblem};
use csck_core::momentum::{build_profile, build_profile_at_c0, BundleProblem};
use csck_core::oracle::Thresholds;
use csck_core::projective::{build_projective_profile, solve_b_given_c_m};
use csck_core::scalar::{rat, ratio};
use proptest::prelude::*;

fn tolerances() -> Tolerances {
    Tolerances { solver: 1e-10, thresholds: Thresholds::default() }
}

fn round_trips(doc: &ProfileDocument) {
    let back = ProfileDocument::from_json(&doc.to_json()).unwrap();
    assert_eq!(&back, doc);
}

#[test]
fn documents_round_trip_with_reports() {
    let flat = build_f(&FlatProblem::new(2, rat(1), rat(1)).unwrap()).unwrap();
    let mut doc = ProfileDocument::flat(&flat, vec![InputRecord::new("a", "1.0", &rat(1))], tolerances());
    doc.attach(&csck_core::oracle::verify_flat(&flat, &Thresholds::default()));
    round_trips(&doc);

    let (bundle, sup) = build_profile_at_c0(1, 2, &rat(1), &rat(-4), &rat(1), 1e-10).unwrap();
    round_trips(&ProfileDocument::bundle(&bundle, Some(&sup), &[], Vec::new(), tolerances()));

    let roots = solve_b_given_c_m(1, 2, &rat(-1), &ratio(1, 1000), &rat(2), 1e-12).unwrap();
    let p = build_projective_profile(1, 2, &rat(-1), &ratio(1, 1000), &roots[0].b).unwrap();
    round_trips(&ProfileDocument::projective(&p, &roots, None, Vec::new(), tolerances()));
}

#[test]
fn rebuilt_profiles_match_the_originals() {
    let prob = BundleProblem::new(1, 2, rat(1), rat(-8), rat(-2), rat(1)).unwrap();
    let p = build_profile(&prob).unwrap();
    let doc = ProfileDocument::bundle(&p, None, &[], Vec::new(), tolerances());
    match doc.rebuild().unwrap() {
        csck_cli::document::Profile::Bundle(q) => {
            assert_eq!(q.p, p.p);
            assert_eq!(q.case_tag, p.case_tag);
            assert_eq!(q.kappa_a_exact, p.kappa_a_exact);
        }
        _ => panic!("wrong kind"),
    }
    let proj = build_projective_profile(1, 2, &rat(1), &rat(1), &rat(2)).unwrap();
    let doc = ProfileDocument::projective(&proj, &[], None, Vec::new(), tolerances());
    match doc.rebuild().unwrap() {
        csck_cli::document::Profile::Projective(q) => {
            assert!(q.extension_ok && q.only_root_below_b);
            assert_eq!(q.profile.phi, proj.profile.phi);
        }
        _ => panic!("wrong kind"),
    }
}

#[test]
fn rejects_inconsistent_documents() {
    let proj = build_projective_profile(1, 2, &rat(1), &rat(1), &rat(2)).unwrap();
    let mut doc = ProfileDocument::projective(&proj, &[], None, Vec::new(), tolerances());
    doc.denominator.as_mut().unwrap().coefficients[1] = "2".into();
    assert_eq!(doc.rebuild().err().unwrap().code(), 2);
    let mut doc = ProfileDocument::projective(&proj, &[], None, Vec::new(), tolerances());
    doc.schema_version = "2".into();
    assert_eq!(ProfileDocument::from_json(&doc.to_json()).unwrap_err().code(), 2);
    assert_eq!(ProfileDocument::from_json("  \n").unwrap_err().code(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn flat_documents_round_trip(n in 2u32..=4, ap in 1i64..=20, aq in 1i64..=7, cp in -30i64..=30, cq in 1i64..=7) {
        let (a, c) = (ratio(ap, aq), ratio(cp, cq));
        prop_assume!(FlatProblem::new(n, a.clone(), c.clone()).is_ok());
        let p = build_f(&FlatProblem::new(n, a, c).unwrap()).unwrap();
        let doc = ProfileDocument::flat(&p, Vec::new(), tolerances());
        let back = ProfileDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        match back.rebuild().unwrap() {
            csck_cli::document::Profile::Flat(q) => prop_assert_eq!(q.f, p.f),
            _ => prop_assert!(false),
        }
    }

    #[test]
    fn projective_documents_round_trip(ak in 1i64..=30, frac in 1i64..=19) {
        let a = ratio(ak, 40);
        let b = &a + (rat(1) - &a) * ratio(frac, 20);
        if let Ok(p) = build_projective_profile(1, 2, &rat(-1), &a, &b) {
            let doc = ProfileDocument::projective(&p, &[], None, Vec::new(), tolerances());
            prop_assert_eq!(ProfileDocument::from_json(&doc.to_json()).unwrap(), doc);
        }
    }
}
