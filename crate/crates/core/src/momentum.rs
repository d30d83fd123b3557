//! Momentum profiles on the complement of the zero section of a vector bundle.
//!
//! With `Q(τ) = (1+λτ)^m τ^{n−1}` and
//! `κ(τ) = c_M/(1+λτ) + n(n−1)/τ − c`, the profile is `φ = P/Q` where
//! `P'' = κ Q` and `P(a) = P'(a) = 0`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::asymptotics::{AsymptoticModel, Basis, Location, Remainder, Term};
use crate::error::{CoreError, Result};
use crate::numeric::{integrate, integrate_log, integrate_to_infinity, QuadOptions};
use crate::poly::{cauchy_bound, isolate_real_roots, positive_on, refine_root};
use crate::projective::HlPolys;
use crate::scalar::{rat, ratio_to_f64, rpow, simplest_rational_in};
use crate::{PolyF, PolyQ, RatFuncQ, Rational};

const QUAD: QuadOptions<f64> = QuadOptions { abs_tol: 1e-300, rel_tol: 4e-15, max_intervals: 4000 };

#[derive(Clone, Debug, PartialEq)]
pub struct BundleProblem {
    pub m: u32,
    pub n: u32,
    pub lambda: Rational,
    pub c_m: Rational,
    pub c: Rational,
    pub a: Rational,
}

impl BundleProblem {
    pub fn new(m: u32, n: u32, lambda: Rational, c_m: Rational, c: Rational, a: Rational) -> Result<Self> {
        check_shape(m, n, &lambda, &a)?;
        Ok(BundleProblem { m, n, lambda, c_m, c, a })
    }

    /// `n(n−1)`.
    pub fn nn(&self) -> Rational {
        rat((self.n * (self.n - 1)) as i64)
    }

    /// `κ(τ) = c_M/(1+λτ) + n(n−1)/τ − c`.
    pub fn kappa(&self, tau: &Rational) -> Rational {
        &self.c_m / (Rational::one() + &self.lambda * tau) + self.nn() / tau - &self.c
    }

    /// `(κ'(τ), κ''(τ))`.
    pub fn kappa_derivatives(&self, tau: &Rational) -> (Rational, Rational) {
        let w = Rational::one() + &self.lambda * tau;
        let nn = self.nn();
        let d1 = -(&self.lambda * &self.c_m) / (&w * &w) - &nn / (tau * tau);
        let d2 = rat(2) * &self.lambda * &self.lambda * &self.c_m / (&w * &w * &w) + rat(2) * nn / (tau * tau * tau);
        (d1, d2)
    }
}

pub(crate) fn check_shape(m: u32, n: u32, lambda: &Rational, a: &Rational) -> Result<()> {
    if m < 1 {
        return Err(CoreError::InvalidParameter("base dimension m must be at least 1".into()));
    }
    if n < 2 {
        return Err(CoreError::InvalidParameter("fibre rank n must be at least 2".into()));
    }
    if !a.is_positive() {
        return Err(CoreError::InvalidParameter("a must be positive".into()));
    }
    if lambda.is_negative() && (Rational::one() + lambda * a) <= Rational::zero() {
        return Err(CoreError::InvalidParameter("λ < 0 requires a < −1/λ".into()));
    }
    Ok(())
}

/// `(1+λx)^m x^{n−1}`.
pub fn build_q(m: u32, n: u32, lambda: &Rational) -> PolyQ {
    let base = PolyQ::linear(Rational::one(), lambda.clone()).pow(m);
    &base * &PolyQ::monomial(Rational::one(), n as usize - 1)
}

/// `(1+λx)^i x^j`.
pub(crate) fn bq(i: u32, j: u32, lambda: &Rational) -> PolyQ {
    &PolyQ::linear(Rational::one(), lambda.clone()).pow(i) * &PolyQ::monomial(Rational::one(), j as usize)
}

/// `κ(x) Q(x)` as a polynomial.
pub fn curvature_integrand(m: u32, n: u32, lambda: &Rational, c_m: &Rational, c: &Rational) -> PolyQ {
    let nn = rat((n * (n - 1)) as i64);
    let t1 = bq(m - 1, n - 1, lambda).scale(c_m);
    let t2 = bq(m, n - 2, lambda).scale(&nn);
    let t3 = build_q(m, n, lambda).scale(c);
    &(&t1 + &t2) - &t3
}

/// `∫_a^τ (τ − x) g(x) dx` for a polynomial `g`.
pub fn double_integral_from(g: &PolyQ, a: &Rational) -> PolyQ {
    let g1 = g.antiderivative();
    let g2 = g1.antiderivative();
    let lin = PolyQ::linear(-a.clone(), Rational::one()).scale(&g1.eval(a));
    &(&g2 - &PolyQ::constant(g2.eval(a))) - &lin
}

/// `P` without parameter validation (any `a`, including 0).
pub fn p_polynomial(m: u32, n: u32, lambda: &Rational, c_m: &Rational, c: &Rational, a: &Rational) -> PolyQ {
    double_integral_from(&curvature_integrand(m, n, lambda, c_m, c), a)
}

/// `P(τ) = ∫_a^τ (τ − x) κ(x) Q(x) dx`.
pub fn build_p(prob: &BundleProblem) -> PolyQ {
    p_polynomial(prob.m, prob.n, &prob.lambda, &prob.c_m, &prob.c, &prob.a)
}

/// `P = P₀ − c P₁`: returns `(P₀, P₁)`.
pub fn split_p(m: u32, n: u32, lambda: &Rational, c_m: &Rational, a: &Rational) -> (PolyQ, PolyQ) {
    let p0 = p_polynomial(m, n, lambda, c_m, &Rational::zero(), a);
    let p1 = double_integral_from(&build_q(m, n, lambda), a);
    (p0, p1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    /// λ > 0, c below the supremum: complete on the disc bundle.
    #[serde(rename = "CaseI_Ustar")]
    CaseIUstar,
    /// λ > 0, c = c₀ = 0: complete on the punctured total space.
    #[serde(rename = "CaseII_Estar_c0zero")]
    CaseIIEstarC0Zero,
    /// λ > 0, c = c₀ < 0 attained: `κ(a) = 0`, non-PMY puncture.
    #[serde(rename = "CaseIII_Ustar_c0neg")]
    CaseIIIUstarC0Neg,
    /// λ > 0, c = c₀ not attained: double root at a finite `b`.
    #[serde(rename = "CaseIV_Estar_doubleroot")]
    CaseIVEstarDoubleRoot,
    /// λ < 0: double roots at `a` and `b`.
    #[serde(rename = "LambdaNeg_Estar")]
    LambdaNegEstar,
    /// λ = 0, c < c_M.
    #[serde(rename = "LambdaZero_Ustar")]
    LambdaZeroUstar,
    /// λ = 0, c = c_M.
    #[serde(rename = "LambdaZero_Estar")]
    LambdaZeroEstar,
    /// Simple root at `b` with `φ'(b) = −1`: closes up over the infinity divisor.
    #[serde(rename = "Projective")]
    Projective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TotalSpace {
    Estar,
    Ustar,
    /// Projective completion minus the zero section.
    Compactified,
}

impl CaseTag {
    pub fn total_space(self) -> TotalSpace {
        match self {
            CaseTag::CaseIUstar | CaseTag::CaseIIIUstarC0Neg | CaseTag::LambdaZeroUstar => TotalSpace::Ustar,
            CaseTag::Projective => TotalSpace::Compactified,
            _ => TotalSpace::Estar,
        }
    }
}

/// Offset from an end of `(a, b)`, as in the flat module.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TauSite {
    FromA(f64),
    FromB(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Weight {
    /// `1/φ = dν/dτ`
    Nu,
    /// `τ/φ = df/dτ`
    Potential,
    /// `1/√φ`, radial length density
    Length,
}

/// Applied when an exact double root is forced at a rational `b̃` close to
/// the true irrational root.
#[derive(Clone, Debug, PartialEq)]
pub struct Adjustment {
    pub c_m_requested: Rational,
    pub c_m_used: Rational,
}

#[derive(Clone, Debug)]
pub struct BundleProfile {
    pub problem: BundleProblem,
    pub q: PolyQ,
    pub p: PolyQ,
    pub phi: RatFuncQ,
    /// Right end of the momentum interval; `None` for `+∞`.
    pub b: Option<Rational>,
    pub case_tag: CaseTag,
    pub total_space: TotalSpace,
    pub kappa_a: f64,
    pub kappa_a_exact: Rational,
    pub kappa_b: Option<f64>,
    /// `deg P − deg Q`.
    pub degree_gap: i64,
    pub adjustment: Option<Adjustment>,
    a_f: f64,
    b_f: f64,
    p_at_a: PolyF,
    q_at_a: PolyF,
    p_at_b: Option<PolyF>,
    q_at_b: Option<PolyF>,
    tau_ref: f64,
}

impl BundleProfile {
    /// Assembles a profile around a given `P` (no identities are enforced,
    /// so externally supplied polynomials can be verified).
    pub fn from_parts(problem: BundleProblem, p: PolyQ, b: Option<Rational>, case_tag: CaseTag) -> Result<Self> {
        let q = build_q(problem.m, problem.n, &problem.lambda);
        let phi = RatFuncQ::new(p.clone(), q.clone())?;
        let kappa_a_exact = problem.kappa(&problem.a);
        let kappa_b = b.as_ref().map(|b| ratio_to_f64(&problem.kappa(b)));
        let degree_gap = p.degree().map_or(i64::MIN, |d| d as i64) - q.degree().unwrap_or(0) as i64;
        let a_f = ratio_to_f64(&problem.a);
        let b_f = b.as_ref().map_or(f64::INFINITY, ratio_to_f64);
        let tau_ref = if a_f + 1.0 < b_f { a_f + 1.0 } else { 0.5 * (a_f + b_f) };
        Ok(BundleProfile {
            p_at_a: p.shift(&problem.a).to_f64(),
            q_at_a: q.shift(&problem.a).to_f64(),
            p_at_b: b.as_ref().map(|b| p.shift(b).to_f64()),
            q_at_b: b.as_ref().map(|b| q.shift(b).to_f64()),
            kappa_a: ratio_to_f64(&kappa_a_exact),
            kappa_a_exact,
            kappa_b,
            total_space: case_tag.total_space(),
            degree_gap,
            adjustment: None,
            problem,
            q,
            p,
            phi,
            b,
            case_tag,
            a_f,
            b_f,
            tau_ref,
        })
    }

    pub fn a(&self) -> f64 {
        self.a_f
    }

    pub fn b_approx(&self) -> f64 {
        self.b_f
    }

    pub fn site_of(&self, tau: f64) -> TauSite {
        if self.b_f.is_finite() && self.b_f - tau < tau - self.a_f {
            TauSite::FromB(self.b_f - tau)
        } else {
            TauSite::FromA(tau - self.a_f)
        }
    }

    pub fn tau_at(&self, site: TauSite) -> f64 {
        match site {
            TauSite::FromA(s) => self.a_f + s,
            TauSite::FromB(s) => self.b_f - s,
        }
    }

    /// `φ` in floating point, accurate near both ends.
    pub fn phi_site(&self, site: TauSite) -> f64 {
        match (site, &self.p_at_b, &self.q_at_b) {
            (TauSite::FromB(s), Some(pb), Some(qb)) => pb.eval(&-s) / qb.eval(&-s),
            (TauSite::FromB(s), _, _) => {
                let x = TauSite::FromA(self.b_f - s - self.a_f);
                self.phi_site(x)
            }
            (TauSite::FromA(s), _, _) => self.p_at_a.eval(&s) / self.q_at_a.eval(&s),
        }
    }

    pub fn phi_value(&self, tau: f64) -> f64 {
        self.phi_site(self.site_of(tau))
    }

    fn density(&self, site: TauSite, w: Weight) -> f64 {
        let phi = self.phi_site(site);
        match w {
            Weight::Nu => 1.0 / phi,
            Weight::Potential => self.tau_at(site) / phi,
            Weight::Length => 1.0 / phi.sqrt(),
        }
    }

    fn integrate_offsets(&self, from_a: bool, s1: f64, s2: f64, w: Weight) -> Result<f64> {
        if s1 == s2 {
            return Ok(0.0);
        }
        let (lo, hi, sign) = if s1 < s2 { (s1, s2, 1.0) } else { (s2, s1, -1.0) };
        let orient = if from_a { 1.0 } else { -1.0 };
        let g = |s: f64| self.density(if from_a { TauSite::FromA(s) } else { TauSite::FromB(s) }, w);
        let v = if lo > 0.0 && hi / lo > 4.0 {
            integrate_log(g, lo, hi, &QUAD)?.value
        } else {
            integrate(g, lo, hi, &QUAD)?.value
        };
        Ok(sign * orient * v)
    }

    fn integrate_sites(&self, p1: TauSite, p2: TauSite, w: Weight) -> Result<f64> {
        match (p1, p2) {
            (TauSite::FromA(s1), TauSite::FromA(s2)) => self.integrate_offsets(true, s1, s2, w),
            (TauSite::FromB(s1), TauSite::FromB(s2)) => self.integrate_offsets(false, s1, s2, w),
            _ => {
                let half = 0.5 * (self.b_f - self.a_f);
                let m1 = if matches!(p1, TauSite::FromA(_)) { TauSite::FromA(half) } else { TauSite::FromB(half) };
                let m2 = if matches!(p2, TauSite::FromA(_)) { TauSite::FromA(half) } else { TauSite::FromB(half) };
                Ok(self.integrate_sites(p1, m1, w)? + self.integrate_sites(m2, p2, w)?)
            }
        }
    }

    fn check_site(&self, site: TauSite) -> Result<()> {
        let ok = match site {
            TauSite::FromA(s) => s > 0.0 && self.a_f + s < self.b_f,
            TauSite::FromB(s) => s > 0.0 && self.b_f.is_finite() && s < self.b_f - self.a_f,
        };
        if ok {
            Ok(())
        } else {
            Err(CoreError::OutOfDomain { x: self.tau_at(site), lo: self.a_f, hi: self.b_f })
        }
    }

    /// `ν = log r² = ∫ dτ/φ`. On the disc bundle `ν → 0` at the far end;
    /// otherwise `ν(τ₀) = 0` at the reference point `τ₀`.
    pub fn nu_at(&self, site: TauSite) -> Result<f64> {
        self.check_site(site)?;
        let reference = self.site_of(self.tau_ref);
        if self.total_space == TotalSpace::Ustar && self.b.is_none() {
            let x = self.tau_at(site);
            let tail = |y: f64| self.density(TauSite::FromA(y - self.a_f), Weight::Nu);
            if x >= self.tau_ref {
                return Ok(-integrate_to_infinity(tail, x, &QUAD)?.value);
            }
            let t0 = -integrate_to_infinity(tail, self.tau_ref, &QUAD)?.value;
            return Ok(t0 + self.integrate_sites(reference, site, Weight::Nu)?);
        }
        self.integrate_sites(reference, site, Weight::Nu)
    }

    /// Fibre potential `f = ∫ τ/φ dτ`, zero at the reference point.
    pub fn potential_at(&self, site: TauSite) -> Result<f64> {
        self.check_site(site)?;
        self.integrate_sites(self.site_of(self.tau_ref), site, Weight::Potential)
    }

    /// `∫ dτ/√φ` between two sites (twice the radial distance).
    pub fn length_between(&self, p1: TauSite, p2: TauSite) -> Result<f64> {
        self.check_site(p1)?;
        self.check_site(p2)?;
        self.integrate_sites(p1, p2, Weight::Length)
    }

    pub fn reference_tau(&self) -> f64 {
        self.tau_ref
    }
}

/// Classification of the supremum of allowable curvatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum C0Class {
    InSetZero,
    InSetNegative,
    NotInSet,
}

#[derive(Clone, Debug)]
pub struct AllowableCurvature {
    pub c0: f64,
    /// Exact value when the supremum is attained.
    pub c0_exact: Option<Rational>,
    pub class: C0Class,
    /// Double root of the extremal profile when the supremum is not attained.
    pub b: Option<f64>,
    pub b_interval: Option<crate::RootInterval>,
    /// Final bisection bracket `(lo, hi)` with `lo ∈ 𝔠`, `hi ∉ 𝔠`.
    pub bracket: Option<(Rational, Rational)>,
    pub tol: f64,
}

/// `c ∈ 𝔠`, i.e. `P > 0` on `(a, ∞)`, decided exactly.
pub fn is_allowable(p0: &PolyQ, p1: &PolyQ, a: &Rational, c: &Rational) -> Result<bool> {
    let p = p0 - &p1.scale(c);
    positive_on(&p, a, None)
}

/// Supremum `c₀` of the curvatures for which `φ > 0` on `(a, ∞)` (λ > 0).
pub fn sup_allowable_c(m: u32, n: u32, lambda: &Rational, c_m: &Rational, a: &Rational, tol: f64) -> Result<AllowableCurvature> {
    check_shape(m, n, lambda, a)?;
    if !lambda.is_positive() {
        return Err(CoreError::InvalidParameter("the allowable-curvature supremum needs λ > 0".into()));
    }
    if !(tol > 0.0) {
        return Err(CoreError::InvalidParameter("tolerance must be positive".into()));
    }
    let (p0, p1) = split_p(m, n, lambda, c_m, a);
    let nn = rat((n * (n - 1)) as i64);
    let zero = Rational::zero();
    let mut out = AllowableCurvature {
        c0: 0.0,
        c0_exact: None,
        class: C0Class::InSetZero,
        b: None,
        b_interval: None,
        bracket: None,
        tol,
    };
    if is_allowable(&p0, &p1, a, &zero)? {
        out.c0_exact = Some(zero);
        return Ok(out);
    }
    let c_a = c_m / (Rational::one() + lambda * a) + nn / a;
    if c_a.is_negative() && is_allowable(&p0, &p1, a, &c_a)? {
        out.c0 = ratio_to_f64(&c_a);
        out.c0_exact = Some(c_a);
        out.class = C0Class::InSetNegative;
        return Ok(out);
    }
    // Membership is monotone in c because P₁ > 0 on (a, ∞).
    let mut lo = rat(-1);
    let mut widen = 0;
    while !is_allowable(&p0, &p1, a, &lo)? {
        lo *= rat(2);
        widen += 1;
        if widen > 200 {
            return Err(CoreError::NoBracket("no allowable curvature found below zero".into()));
        }
    }
    let mut hi = zero;
    let tol_q = crate::scalar::f64_to_ratio(tol)?;
    while &hi - &lo > tol_q {
        let mid = (&lo + &hi) / rat(2);
        if is_allowable(&p0, &p1, a, &mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.class = C0Class::NotInSet;
    // The extremal P touches zero where ψ = P₀/P₁ attains its infimum, a
    // root of the Wronskian P₀'P₁ − P₀P₁'.
    let w = &(&p0.derivative() * &p1) - &(&p0 * &p1.derivative());
    let top = cauchy_bound(&w) * rat(2) + a + rat(1);
    let fine = rpow(&rat(2), -160);
    let mut best: Option<(Rational, crate::RootInterval)> = None;
    for iv in isolate_real_roots(&w, a, &top)? {
        let iv = refine_root(&w, &iv, &fine);
        let t = iv.midpoint();
        let d = p1.eval(&t);
        if d.is_zero() {
            continue;
        }
        let psi = p0.eval(&t) / d;
        if best.as_ref().is_none_or(|(v, _)| &psi < v) {
            best = Some((psi, iv));
        }
    }
    let (psi, iv) = best.ok_or_else(|| CoreError::Invariant("no critical point for the extremal profile".into()))?;
    let slack = rpow(&rat(2), -60);
    if psi < &lo - &slack || psi > &hi + &slack {
        return Err(CoreError::Invariant("critical value disagrees with the bisection bracket".into()));
    }
    out.c0 = ratio_to_f64(&psi);
    out.b = Some(iv.approx());
    out.b_interval = Some(iv);
    out.bracket = Some((lo, hi));
    Ok(out)
}

/// Exact `(c_M, c)` making `b` a double root of `P` for given `(a, b)`.
pub fn double_root_constants(m: u32, n: u32, lambda: &Rational, a: &Rational, b: &Rational) -> Result<(Rational, Rational)> {
    let hl = crate::projective::hl_values(m, n, lambda, a, b)?;
    if hl.h2.is_zero() {
        return Err(CoreError::Degenerate("H₂ vanishes".into()));
    }
    let nn = rat((n * (n - 1)) as i64);
    Ok((&nn * &hl.h1 / &hl.h2, &nn * &hl.h3 / &hl.h2))
}

fn certify(p: &PolyQ, a: &Rational, b: Option<&Rational>) -> Result<()> {
    if !p.eval(a).is_zero() || !p.derivative().eval(a).is_zero() {
        return Err(CoreError::Invariant("P lacks a double root at a".into()));
    }
    if !positive_on(p, a, b)? {
        return Err(CoreError::NoPositiveProfile("P is not positive on the momentum interval".into()));
    }
    Ok(())
}

/// Builds the profile for given data, classifying it into a case.
///
/// λ > 0 requires `c ∈ 𝔠`; λ = 0 requires `c ≤ c_M`; λ < 0 data go
/// through [`solve_lambda_negative`].
pub fn build_profile(prob: &BundleProblem) -> Result<BundleProfile> {
    check_shape(prob.m, prob.n, &prob.lambda, &prob.a)?;
    let p = build_p(prob);
    let case = if prob.lambda.is_positive() {
        let (p0, p1) = split_p(prob.m, prob.n, &prob.lambda, &prob.c_m, &prob.a);
        if !is_allowable(&p0, &p1, &prob.a, &prob.c)? {
            return Err(CoreError::NoPositiveProfile(format!(
                "c = {} exceeds the allowable supremum",
                crate::scalar::format_rational(&prob.c)
            )));
        }
        if prob.c.is_zero() {
            CaseTag::CaseIIEstarC0Zero
        } else if prob.kappa(&prob.a).is_zero() {
            CaseTag::CaseIIIUstarC0Neg
        } else {
            CaseTag::CaseIUstar
        }
    } else if prob.lambda.is_zero() {
        if prob.c < prob.c_m {
            CaseTag::LambdaZeroUstar
        } else if prob.c == prob.c_m {
            CaseTag::LambdaZeroEstar
        } else {
            return Err(CoreError::NoPositiveProfile("λ = 0 requires c ≤ c_M".into()));
        }
    } else {
        return Err(CoreError::InvalidParameter(
            "λ < 0 profiles are determined by a two-point condition; use the λ < 0 solver".into(),
        ));
    };
    certify(&p, &prob.a, None)?;
    BundleProfile::from_parts(prob.clone(), p, None, case)
}

/// Profile with `c = c₀` (λ > 0). When the supremum is not attained the
/// double root is placed at a rational `b̃` within `2^{-160}` of the true
/// root and `(c_M, c)` are solved exactly for it; the shift in `c_M` is
/// recorded in [`BundleProfile::adjustment`].
pub fn build_profile_at_c0(m: u32, n: u32, lambda: &Rational, c_m: &Rational, a: &Rational, tol: f64) -> Result<(BundleProfile, AllowableCurvature)> {
    let sac = sup_allowable_c(m, n, lambda, c_m, a, tol)?;
    match sac.class {
        C0Class::InSetZero | C0Class::InSetNegative => {
            let c = sac.c0_exact.clone().expect("attained supremum is exact");
            let prob = BundleProblem::new(m, n, lambda.clone(), c_m.clone(), c, a.clone())?;
            Ok((build_profile(&prob)?, sac))
        }
        C0Class::NotInSet => {
            let iv = sac.b_interval.clone().expect("double root interval");
            let b = simplest_rational_in(&iv.lo, &iv.hi);
            let profile = double_root_profile(m, n, lambda, c_m, a, &b, CaseTag::CaseIVEstarDoubleRoot)?;
            Ok((profile, sac))
        }
    }
}

fn double_root_profile(m: u32, n: u32, lambda: &Rational, c_m: &Rational, a: &Rational, b: &Rational, tag: CaseTag) -> Result<BundleProfile> {
    let (cm_used, c) = double_root_constants(m, n, lambda, a, b)?;
    let prob = BundleProblem::new(m, n, lambda.clone(), cm_used.clone(), c, a.clone())?;
    let p = build_p(&prob);
    if !p.eval(b).is_zero() || !p.derivative().eval(b).is_zero() {
        return Err(CoreError::Invariant("P lacks a double root at b".into()));
    }
    certify(&p, a, Some(b))?;
    let mut prof = BundleProfile::from_parts(prob, p, Some(b.clone()), tag)?;
    if &cm_used != c_m {
        prof.adjustment = Some(Adjustment { c_m_requested: c_m.clone(), c_m_used: cm_used });
    }
    Ok(prof)
}

/// One solution of the λ < 0 two-point problem.
#[derive(Clone, Debug)]
pub struct DoubleRootSolution {
    pub b: Rational,
    pub b_approx: f64,
    pub c: Rational,
    pub c_approx: f64,
    /// `c_M` reproduced by `n(n−1)H₁/H₂` at `(a, b)`; differs from the
    /// requested value only by the root refinement.
    pub c_m: Rational,
}

/// All `b ∈ (a, −1/λ)` with `n(n−1)H₁(a,b)/H₂(a,b) = c_M`, sorted, each
/// paired with `c = n(n−1)H₃/H₂`. The equation is polynomial in `b`, so
/// roots are isolated exactly and refined far below `tol`.
pub fn solve_lambda_negative(m: u32, n: u32, lambda: &Rational, c_m: &Rational, a: &Rational, tol: f64) -> Result<Vec<DoubleRootSolution>> {
    check_shape(m, n, lambda, a)?;
    if !lambda.is_negative() {
        return Err(CoreError::InvalidParameter("this solver needs λ < 0".into()));
    }
    if !c_m.is_positive() {
        return Err(CoreError::InvalidParameter("λ < 0 requires c_M > 0".into()));
    }
    let top = -lambda.recip();
    let hl = HlPolys::new(m, n, lambda, a);
    let nn = rat((n * (n - 1)) as i64);
    let eq = &hl.h1().scale(&nn) - &hl.h2().scale(c_m);
    let mut out = Vec::new();
    let width = crate::scalar::f64_to_ratio(tol.min(1e-30))?;
    for iv in isolate_real_roots(&eq, a, &top)? {
        if iv.is_exact() && iv.lo == top {
            continue;
        }
        let iv = refine_root(&eq, &iv, &width);
        let b = simplest_rational_in(&iv.lo, &iv.hi);
        if b >= top || &b <= a {
            continue;
        }
        let (cm, c) = match double_root_constants(m, n, lambda, a, &b) {
            Ok(v) => v,
            Err(_) => continue,
        };
        out.push(DoubleRootSolution { b_approx: ratio_to_f64(&b), c_approx: ratio_to_f64(&c), b, c, c_m: cm });
    }
    Ok(out)
}

/// Profile for one λ < 0 solution.
pub fn build_lambda_negative_profile(m: u32, n: u32, lambda: &Rational, c_m: &Rational, a: &Rational, sol: &DoubleRootSolution) -> Result<BundleProfile> {
    double_root_profile(m, n, lambda, c_m, a, &sol.b, CaseTag::LambdaNegEstar)
}

/// Expansion of the fibre potential as `r² → 0`.
pub fn pmy_coefficients(profile: &BundleProfile) -> Result<AsymptoticModel> {
    let prob = &profile.problem;
    let a = ratio_to_f64(&prob.a);
    let k = &profile.kappa_a_exact;
    if k.is_negative() {
        return Err(CoreError::Invariant("κ(a) < 0 contradicts positivity".into()));
    }
    let lead = Term::known(a, Basis::LogR2);
    if k.is_positive() {
        return Ok(AsymptoticModel {
            location: Location::PunctureZero,
            terms: vec![lead, Term::known(-2.0 / ratio_to_f64(k), Basis::LogNegLogR2)],
            remainder: Remainder::InvLogR2,
        });
    }
    let (d1, d2) = prob.kappa_derivatives(&prob.a);
    if d1.is_positive() {
        let k1 = ratio_to_f64(&d1);
        return Ok(AsymptoticModel {
            location: Location::PunctureZero,
            terms: vec![lead, Term::known(-2.0 * (3.0 / k1).sqrt(), Basis::NegLogR2Pow(0.5))],
            remainder: Remainder::LogNegLogR2,
        });
    }
    if d1.is_zero() && d2.is_positive() {
        let k2 = ratio_to_f64(&d2);
        return Ok(AsymptoticModel {
            location: Location::PunctureZero,
            terms: vec![lead, Term::known(-1.5 * (8.0 / k2).cbrt(), Basis::NegLogR2Pow(2.0 / 3.0))],
            remainder: Remainder::NegLogR2Pow(1.0 / 3.0),
        });
    }
    Err(CoreError::Invariant("degenerate κ at a contradicts positivity".into()))
}

/// Expansion at the far end of the momentum interval.
pub fn infinity_asymptotics(profile: &BundleProfile) -> AsymptoticModel {
    let prob = &profile.problem;
    let mn = (prob.m + prob.n) as f64;
    match profile.case_tag {
        CaseTag::CaseIUstar | CaseTag::CaseIIIUstarC0Neg => AsymptoticModel {
            location: Location::BoundaryPoincare,
            terms: vec![Term::known(mn * (mn + 1.0) / -ratio_to_f64(&prob.c), Basis::PoincareLog)],
            remainder: Remainder::LogR2,
        },
        CaseTag::LambdaZeroUstar => {
            // Q = τⁿ⁻¹, so φ ~ (c_M − c) τ²/(n(n+1)).
            let nf = prob.n as f64;
            AsymptoticModel {
                location: Location::BoundaryPoincare,
                terms: vec![Term::known(nf * (nf + 1.0) / ratio_to_f64(&(&prob.c_m - &prob.c)), Basis::PoincareLog)],
                remainder: Remainder::LogR2,
            }
        }
        CaseTag::CaseIIEstarC0Zero | CaseTag::LambdaZeroEstar => {
            // φ = θτ + β + O(1/τ) gives f = (r²)^θ/θ' − (β/θ) log r² + …
            let (quot, _) = profile.p.div_rem(&profile.q);
            let theta = ratio_to_f64(&quot.coeff(1));
            let beta = ratio_to_f64(&quot.coeff(0));
            AsymptoticModel {
                location: Location::InfinityBundle,
                terms: vec![Term::free(Basis::PowR2(theta)), Term::known(-beta / theta, Basis::LogR2)],
                remainder: Remainder::PowR2(-theta),
            }
        }
        CaseTag::CaseIVEstarDoubleRoot | CaseTag::LambdaNegEstar => {
            let b = profile.b_f;
            let kb = profile.kappa_b.unwrap_or(f64::NAN);
            AsymptoticModel {
                location: Location::InfinityBundle,
                terms: vec![Term::known(b, Basis::LogR2), Term::known(-2.0 / kb, Basis::LogLogR2)],
                remainder: Remainder::InvLogR2,
            }
        }
        CaseTag::Projective => AsymptoticModel {
            location: Location::InfinityIncomplete,
            terms: vec![Term::known(profile.b_f, Basis::LogR2), Term::free(Basis::R2)],
            remainder: Remainder::PowR2(-2.0),
        },
    }
}

/// `(c_M + n(n−1)λ)/(λ(m+n)(m+n−1))`, the growth exponent of the case with
/// `c = 0` on the punctured total space.
pub fn growth_exponent(m: u32, n: u32, lambda: &Rational, c_m: &Rational) -> Rational {
    let nn = rat((n * (n - 1)) as i64);
    let mn = rat((m + n) as i64);
    (c_m + nn * lambda) / (lambda * &mn * (mn - rat(1)))
}
