//! The serialized profile document and its reconstruction.

use csck_core::asymptotics::AsymptoticModel;
use csck_core::flat::{Endpoint, EndpointClass, FlatProblem, FlatProfile};
use csck_core::momentum::{
    build_q, infinity_asymptotics, pmy_coefficients, AllowableCurvature, BundleProblem, BundleProfile, CaseTag,
    DoubleRootSolution, TotalSpace,
};
use csck_core::oracle::{verify_bundle, verify_flat, verify_projective, Thresholds, VerificationReport};
use csck_core::poly::positive_on;
use csck_core::projective::{infinity_model, pmy_check_projective, CmRange, ProjectiveProfile, ProjectiveRoot};
use csck_core::scalar::{format_rational, parse_rational, ratio_to_f64};
use csck_core::{PolyQ, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{CliResult, Failure};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Flat,
    Bundle,
    Projective,
}

/// Problem data of the stored profile; rationals are `p/q` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(rename = "cM", default, skip_serializing_if = "Option::is_none")]
    pub c_m: Option<String>,
    pub c: String,
    pub a: String,
    /// Exact right endpoint of a momentum profile.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
}

/// A command-line value and the exact rational it was read as.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputRecord {
    pub name: String,
    pub given: String,
    pub value: String,
    /// The input was a decimal converted to a rational.
    pub snapped: bool,
}

impl InputRecord {
    pub fn new(name: &str, given: &str, value: &Rational) -> Self {
        let given = given.trim();
        InputRecord {
            name: name.into(),
            given: given.into(),
            value: format_rational(value),
            snapped: given.contains(['.', 'e', 'E']),
        }
    }
}

/// Exact polynomial with ascending coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactPoly {
    pub symbol: String,
    pub display: String,
    pub coefficients: Vec<String>,
}

impl ExactPoly {
    pub fn new(symbol: &str, p: &PolyQ) -> Self {
        ExactPoly {
            symbol: symbol.into(),
            display: p.to_string(),
            coefficients: p.coeffs().iter().map(format_rational).collect(),
        }
    }

    pub fn to_poly(&self) -> CliResult<PolyQ> {
        let coeffs = self
            .coefficients
            .iter()
            .map(|s| parse_field(&format!("{} coefficient", self.symbol), s))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(PolyQ::new(coeffs))
    }
}

/// A solved constant with its exact value when known and the tolerance of
/// its approximation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constant {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Constant {
    fn exact(name: &str, v: &Rational) -> Self {
        Constant { name: name.into(), exact: Some(format_rational(v)), approx: finite(ratio_to_f64(v)), tolerance: None }
    }

    fn approx(name: &str, v: f64, tolerance: Option<f64>) -> Self {
        Constant { name: name.into(), exact: None, approx: finite(v), tolerance }
    }
}

/// One `(b, c, c_M)` solution of a two-point problem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub b: String,
    pub b_approx: f64,
    pub c: String,
    pub c_approx: f64,
    #[serde(rename = "cM")]
    pub c_m: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Root refinement and bisection tolerance of the solvers.
    pub solver: f64,
    pub thresholds: Thresholds,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub value: Option<f64>,
    pub threshold: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
    pub notes: Vec<String>,
}

impl From<&VerificationReport> for VerificationSummary {
    fn from(r: &VerificationReport) -> Self {
        VerificationSummary {
            pass: r.pass,
            checks: r
                .checks
                .iter()
                .map(|c| CheckRecord { name: c.name.clone(), value: finite(c.value), threshold: c.threshold.clone(), pass: c.pass })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub schema_version: String,
    pub kind: ProfileKind,
    pub parameters: Parameters,
    pub inputs: Vec<InputRecord>,
    pub polynomial: ExactPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<ExactPoly>,
    pub constants: Vec<Constant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case_tag: Option<CaseTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_space: Option<TotalSpace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint_class: Option<EndpointClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension_ok: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub only_root_below_b: Option<bool>,
    #[serde(rename = "cM_range", default, skip_serializing_if = "Option::is_none")]
    pub c_m_range: Option<CmRange>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub solutions: Vec<Solution>,
    pub asymptotics: Vec<AsymptoticModel>,
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSummary>,
}

/// A profile reconstructed from a document.
pub enum Profile {
    Flat(FlatProfile),
    Bundle(BundleProfile),
    Projective(ProjectiveProfile),
}

impl Profile {
    pub fn verify(&self, th: &Thresholds) -> VerificationReport {
        match self {
            Profile::Flat(p) => verify_flat(p, th),
            Profile::Bundle(p) => verify_bundle(p, th),
            Profile::Projective(p) => verify_projective(p, th),
        }
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn parse_field(name: &str, s: &str) -> CliResult<Rational> {
    parse_rational(s).map_err(|e| Failure::input(format!("{name}: {e}")))
}

fn required<'a>(name: &str, v: &'a Option<String>) -> CliResult<&'a str> {
    v.as_deref().ok_or_else(|| Failure::input(format!("document is missing parameter {name}")))
}

fn bundle_asymptotics(p: &BundleProfile) -> Vec<AsymptoticModel> {
    let mut out: Vec<_> = pmy_coefficients(p).into_iter().collect();
    out.push(infinity_asymptotics(p));
    out
}

impl ProfileDocument {
    fn base(kind: ProfileKind, parameters: Parameters, polynomial: ExactPoly, inputs: Vec<InputRecord>, tolerances: Tolerances) -> Self {
        ProfileDocument {
            schema_version: SCHEMA_VERSION.into(),
            kind,
            parameters,
            inputs,
            polynomial,
            denominator: None,
            constants: Vec::new(),
            case_tag: None,
            total_space: None,
            endpoint_class: None,
            extension_ok: None,
            only_root_below_b: None,
            c_m_range: None,
            solutions: Vec::new(),
            asymptotics: Vec::new(),
            tolerances,
            verification: None,
        }
    }

    pub fn flat(p: &FlatProfile, inputs: Vec<InputRecord>, tolerances: Tolerances) -> Self {
        let prob = &p.problem;
        let params = Parameters {
            m: None,
            n: prob.n,
            lambda: None,
            c_m: None,
            c: format_rational(&prob.c),
            a: format_rational(&prob.a),
            b: None,
        };
        let mut doc = Self::base(ProfileKind::Flat, params, ExactPoly::new("F", &p.f), inputs, tolerances);
        doc.endpoint_class = Some(p.endpoint_class);
        if let Endpoint::Finite(iv) = &p.b {
            doc.constants.push(match iv.exact() {
                Some(b) => Constant::exact("b", b),
                None => Constant::approx("b", iv.approx(), Some(ratio_to_f64(&iv.width()))),
            });
        }
        match (&p.kappa_exact, p.kappa) {
            (Some(k), _) => doc.constants.push(Constant::exact("kappa", k)),
            (None, Some(k)) => doc.constants.push(Constant::approx("kappa", k, Some(f64::EPSILON * k.abs()))),
            _ => {}
        }
        doc.constants.push(Constant::approx("t_normalization", p.t_normalization, None));
        doc.asymptotics = p.expected_asymptotics();
        doc
    }

    fn momentum(kind: ProfileKind, p: &BundleProfile, inputs: Vec<InputRecord>, tolerances: Tolerances) -> Self {
        let prob = &p.problem;
        let params = Parameters {
            m: Some(prob.m),
            n: prob.n,
            lambda: Some(format_rational(&prob.lambda)),
            c_m: Some(format_rational(&prob.c_m)),
            c: format_rational(&prob.c),
            a: format_rational(&prob.a),
            b: p.b.as_ref().map(format_rational),
        };
        let mut doc = Self::base(kind, params, ExactPoly::new("P", &p.p), inputs, tolerances);
        doc.denominator = Some(ExactPoly::new("Q", &p.q));
        doc.case_tag = Some(p.case_tag);
        doc.total_space = Some(p.total_space);
        doc.constants.push(Constant::exact("kappa_a", &p.kappa_a_exact));
        if let Some(b) = &p.b {
            doc.constants.push(Constant::exact("kappa_b", &prob.kappa(b)));
        }
        if let Some(adj) = &p.adjustment {
            doc.constants.push(Constant::exact("cM_requested", &adj.c_m_requested));
        }
        doc
    }

    pub fn bundle(
        p: &BundleProfile,
        sup: Option<&AllowableCurvature>,
        solutions: &[DoubleRootSolution],
        inputs: Vec<InputRecord>,
        tolerances: Tolerances,
    ) -> Self {
        let mut doc = Self::momentum(ProfileKind::Bundle, p, inputs, tolerances);
        if let Some(s) = sup {
            doc.constants.push(match &s.c0_exact {
                Some(c0) => Constant::exact("c0", c0),
                None => Constant::approx("c0", s.c0, Some(s.tol)),
            });
            if let Some(b) = s.b {
                doc.constants.push(Constant::approx("b_extremal", b, s.b_interval.as_ref().map(|iv| ratio_to_f64(&iv.width()))));
            }
        }
        doc.solutions = solutions
            .iter()
            .map(|s| Solution {
                b: format_rational(&s.b),
                b_approx: s.b_approx,
                c: format_rational(&s.c),
                c_approx: s.c_approx,
                c_m: format_rational(&s.c_m),
            })
            .collect();
        doc.asymptotics = bundle_asymptotics(p);
        doc
    }

    pub fn projective(p: &ProjectiveProfile, roots: &[ProjectiveRoot], range: Option<CmRange>, inputs: Vec<InputRecord>, tolerances: Tolerances) -> Self {
        let mut doc = Self::momentum(ProfileKind::Projective, &p.profile, inputs, tolerances);
        doc.extension_ok = Some(p.extension_ok);
        doc.only_root_below_b = Some(p.only_root_below_b);
        doc.c_m_range = range;
        doc.solutions = roots
            .iter()
            .map(|r| Solution {
                b: format_rational(&r.b),
                b_approx: r.b_approx,
                c: format_rational(&r.c),
                c_approx: r.c_approx,
                c_m: format_rational(&r.c_m),
            })
            .collect();
        doc.asymptotics = pmy_check_projective(p).into_iter().chain([infinity_model(p)]).collect();
        doc
    }

    pub fn attach(&mut self, report: &VerificationReport) {
        self.verification = Some(report.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        if text.trim().is_empty() {
            return Err(Failure::input("document is empty"));
        }
        let doc: ProfileDocument = serde_json::from_str(text).map_err(|e| Failure::input(format!("malformed document: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Failure::input(format!("unsupported schema_version '{}'", doc.schema_version)));
        }
        Ok(doc)
    }

    /// Rebuilds the profile from the stored polynomial (not from the
    /// parameters), so that a tampered polynomial is what gets verified.
    pub fn rebuild(&self) -> CliResult<Profile> {
        let par = &self.parameters;
        let a = parse_field("a", &par.a)?;
        let c = parse_field("c", &par.c)?;
        let poly = self.polynomial.to_poly()?;
        if self.kind == ProfileKind::Flat {
            let prob = FlatProblem::new(par.n, a, c)?;
            return Ok(Profile::Flat(FlatProfile::from_polynomial(prob, poly)?));
        }
        let m = par.m.ok_or_else(|| Failure::input("document is missing parameter m"))?;
        let lambda = parse_field("lambda", required("lambda", &par.lambda)?)?;
        let c_m = parse_field("cM", required("cM", &par.c_m)?)?;
        let b = par.b.as_deref().map(|s| parse_field("b", s)).transpose()?;
        let prob = BundleProblem::new(m, par.n, lambda, c_m, c, a)?;
        let q = build_q(prob.m, prob.n, &prob.lambda);
        if let Some(den) = &self.denominator {
            if den.to_poly()? != q {
                return Err(Failure::input("denominator Q does not match (m, n, lambda)"));
            }
        }
        let tag = self.case_tag.ok_or_else(|| Failure::input("document is missing case_tag"))?;
        if self.kind == ProfileKind::Bundle {
            return Ok(Profile::Bundle(BundleProfile::from_parts(prob, poly, b, tag)?));
        }
        let b = b.ok_or_else(|| Failure::input("projective document is missing b"))?;
        let extension_ok = poly.eval(&b).is_zero() && poly.derivative().eval(&b) == -q.eval(&b);
        let only_root_below_b = positive_on(&poly, &Rational::zero(), Some(&prob.a))?;
        let (c_m, c) = (prob.c_m.clone(), prob.c.clone());
        let profile = BundleProfile::from_parts(prob, poly, Some(b.clone()), tag)?;
        Ok(Profile::Projective(ProjectiveProfile { profile, b, c_m, c, extension_ok, only_root_below_b }))
    }
}
