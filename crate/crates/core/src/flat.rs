//! Rotationally symmetric profiles on punctured balls and punctured spaces.
//!
//! With `t = log r²` and `φ = u'(t)` the constant scalar curvature equation
//! integrates to `dφ/dt = F(φ)/φ^{n−1}` for the polynomial
//! `F(φ) = −c/(n(n+1)) φ^{n+1} + φⁿ − c₁φ − c₂`. Completeness at the
//! puncture forces a double root of `F` at `a = lim_{t→−∞} φ`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::asymptotics::{AsymptoticModel, Basis, Location, Remainder, Term};
use crate::error::{CoreError, Result};
use crate::numeric::{integrate, integrate_log, integrate_to_infinity, QuadOptions};
use crate::poly::{isolate_real_roots, positive_on, refine_root, RootInterval};
use crate::scalar::{rat, ratio_to_f64, rpow};
use crate::{PolyF, PolyQ, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct FlatProblem {
    pub n: u32,
    pub a: Rational,
    pub c: Rational,
}

impl FlatProblem {
    pub fn new(n: u32, a: Rational, c: Rational) -> Result<Self> {
        if n < 2 {
            return Err(CoreError::InvalidParameter(format!("dimension n = {n} must be at least 2")));
        }
        if !a.is_positive() {
            return Err(CoreError::InvalidParameter("a must be positive".into()));
        }
        let nn = rat((n * (n - 1)) as i64);
        if c.is_positive() && &a * &c >= nn {
            return Err(CoreError::InvalidParameter(format!(
                "positive curvature requires a·c < n(n−1) = {nn}"
            )));
        }
        Ok(FlatProblem { n, a, c })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndpointClass {
    /// `c = 0`: `φ → ∞`, complete ALE end.
    InfiniteLogGrowth,
    /// `c < 0`: `φ → ∞` as `t → 0⁻`, complete Poincaré-type end.
    InfinitePoincare,
    /// `c > 0`: `φ → b`, a simple root of `F`; the end has finite length.
    FiniteSimpleRoot,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint {
    Infinite,
    /// Isolating interval of the right endpoint (a point when rational).
    Finite(RootInterval),
}

impl Endpoint {
    pub fn approx(&self) -> f64 {
        match self {
            Endpoint::Infinite => f64::INFINITY,
            Endpoint::Finite(iv) => iv.approx(),
        }
    }
}

/// Location in the `φ`-interval `(a, b)` given by its offset from an end.
/// Using offsets keeps values near the double root at `a` (or the simple
/// root at `b`) accurate when they are closer than f64 resolution of `φ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Site {
    /// `φ = a + s`
    FromA(f64),
    /// `φ = b − s`
    FromB(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Weight {
    /// `xⁿ⁻¹/F`, the derivative `dt/dφ`.
    Time,
    /// `xⁿ/F`, the derivative `du/dφ`.
    Potential,
    /// `√(xⁿ⁻¹/F)`, the radial length density.
    Length,
}

/// One row of [`FlatProfile::sample_potential`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialSample {
    pub t: f64,
    pub phi: f64,
    pub u: f64,
    pub det_g: f64,
}

#[derive(Clone, Debug)]
pub struct FlatProfile {
    pub problem: FlatProblem,
    pub f: PolyQ,
    pub c1: Rational,
    pub c2: Rational,
    pub b: Endpoint,
    pub endpoint_class: EndpointClass,
    /// `−b^{n−1}/F'(b)` for `c > 0` (exact when `b` is rational).
    pub kappa: Option<f64>,
    pub kappa_exact: Option<Rational>,
    /// Value of `t` at the reference point `φ₀`.
    pub t_normalization: f64,
    /// Reference point `φ₀` where `u = 0` (and `t = 0` when `c > 0`).
    pub phi0: f64,
    a_f: f64,
    b_f: f64,
    f_f: PolyF,
    f_at_a: PolyF,
    f_at_b: Option<PolyF>,
    /// `xⁿ − F(x)`, used for the `c = 0` tail.
    tail: PolyF,
}

const QUAD: QuadOptions<f64> = QuadOptions { abs_tol: 1e-300, rel_tol: 4e-15, max_intervals: 4000 };

/// `c₁ = n aⁿ⁻¹ − (c/n) aⁿ`, `c₂ = (1−n) aⁿ + c/(n+1) aⁿ⁺¹`.
pub fn integration_constants(n: u32, a: &Rational, c: &Rational) -> (Rational, Rational) {
    let ni = n as i64;
    let an1 = rpow(a, n as i32 - 1);
    let an = rpow(a, n as i32);
    let an2 = rpow(a, n as i32 + 1);
    let c1 = rat(ni) * an1 - c / rat(ni) * &an;
    let c2 = rat(1 - ni) * an + c / rat(ni + 1) * an2;
    (c1, c2)
}

/// `F(φ) = −c/(n(n+1)) φⁿ⁺¹ + φⁿ − c₁φ − c₂`.
pub fn f_polynomial(n: u32, c: &Rational, c1: &Rational, c2: &Rational) -> PolyQ {
    let ni = n as i64;
    let mut v = vec![Rational::zero(); n as usize + 2];
    v[n as usize + 1] = -c / rat(ni * (ni + 1));
    v[n as usize] = Rational::one();
    v[1] = &v[1] - c1;
    v[0] = &v[0] - c2;
    PolyQ::new(v)
}

/// Builds `F` with the puncture constants and solves for the right end.
pub fn build_f(prob: &FlatProblem) -> Result<FlatProfile> {
    let prob = FlatProblem::new(prob.n, prob.a.clone(), prob.c.clone())?;
    let (c1, c2) = integration_constants(prob.n, &prob.a, &prob.c);
    let f = f_polynomial(prob.n, &prob.c, &c1, &c2);
    if !f.eval(&prob.a).is_zero() || !f.derivative().eval(&prob.a).is_zero() {
        return Err(CoreError::Invariant("F lacks a double root at a".into()));
    }
    let p = FlatProfile::from_polynomial(prob, f)?;
    let positive = match &p.b {
        Endpoint::Infinite => positive_on(&p.f, &p.problem.a, None)?,
        Endpoint::Finite(iv) => positive_on(&p.f, &p.problem.a, Some(&iv.lo))?,
    };
    if !positive {
        return Err(CoreError::Invariant("F is not positive on (a, b)".into()));
    }
    Ok(p)
}

impl FlatProfile {
    /// Assembles a profile around a given `F` without checking the puncture
    /// identities, so that externally supplied data can be verified.
    pub fn from_polynomial(problem: FlatProblem, f: PolyQ) -> Result<Self> {
        if f.degree().unwrap_or(0) < 2 {
            return Err(CoreError::InvalidParameter("F must have degree at least 2".into()));
        }
        let n = problem.n;
        let c1 = -f.coeff(1);
        let c2 = -f.coeff(0);
        let a = problem.a.clone();
        let search_hi = crate::poly::cauchy_bound(&f) * rat(2) + &a + rat(1);
        let roots = isolate_real_roots(&f, &a, &search_hi)?;
        let (b, class, kappa, kappa_exact) = match roots.first() {
            None => {
                if !f.leading().is_positive() {
                    return Err(CoreError::Invariant("F negative at infinity without a root".into()));
                }
                let class = if problem.c.is_negative() {
                    EndpointClass::InfinitePoincare
                } else {
                    EndpointClass::InfiniteLogGrowth
                };
                (Endpoint::Infinite, class, None, None)
            }
            Some(iv) => {
                let iv = refine_root(&f, iv, &rpow(&rat(2), -140));
                let bq = iv.midpoint();
                let dfb = f.derivative().eval(&bq);
                if dfb.is_zero() {
                    return Err(CoreError::Invariant("right endpoint is a multiple root".into()));
                }
                let k = -rpow(&bq, n as i32 - 1) / dfb;
                let exact = iv.is_exact().then(|| k.clone());
                (Endpoint::Finite(iv), EndpointClass::FiniteSimpleRoot, Some(ratio_to_f64(&k)), exact)
            }
        };
        let a_f = ratio_to_f64(&a);
        let (b_f, f_at_b) = match &b {
            Endpoint::Infinite => (f64::INFINITY, None),
            Endpoint::Finite(iv) => (iv.approx(), Some(f.shift(&iv.midpoint()).to_f64())),
        };
        let tail = (&PolyQ::monomial(Rational::one(), n as usize) - &f).to_f64();
        let phi0 = if a_f + 1.0 < b_f { a_f + 1.0 } else { 0.5 * (a_f + b_f) };
        let mut p = FlatProfile {
            f_f: f.to_f64(),
            f_at_a: f.shift(&a).to_f64(),
            f_at_b,
            tail,
            problem,
            f,
            c1,
            c2,
            b,
            endpoint_class: class,
            kappa,
            kappa_exact,
            t_normalization: 0.0,
            phi0,
            a_f,
            b_f,
        };
        p.t_normalization = p.reference_time()?;
        Ok(p)
    }

    pub fn n(&self) -> u32 {
        self.problem.n
    }

    pub fn a(&self) -> f64 {
        self.a_f
    }

    /// Right end of the `φ`-interval (`+∞` when unbounded).
    pub fn b(&self) -> f64 {
        self.b_f
    }

    /// Range of `t` over `(a, b)`.
    pub fn t_range(&self) -> (f64, f64) {
        match self.endpoint_class {
            EndpointClass::InfinitePoincare => (f64::NEG_INFINITY, 0.0),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    fn site_of(&self, phi: f64) -> Site {
        if self.b_f.is_finite() && self.b_f - phi < phi - self.a_f {
            Site::FromB(self.b_f - phi)
        } else {
            Site::FromA(phi - self.a_f)
        }
    }

    pub fn phi_at(&self, site: Site) -> f64 {
        match site {
            Site::FromA(s) => self.a_f + s,
            Site::FromB(s) => self.b_f - s,
        }
    }

    /// `F` evaluated in floating point, accurate near both ends.
    pub fn f_value(&self, phi: f64) -> f64 {
        self.f_site(self.site_of(phi))
    }

    fn f_site(&self, site: Site) -> f64 {
        match (site, &self.f_at_b) {
            (Site::FromA(s), _) => self.f_at_a.eval(&s),
            (Site::FromB(s), Some(fb)) => fb.eval(&-s),
            (Site::FromB(s), None) => self.f_f.eval(&(self.b_f - s)),
        }
    }

    /// `dφ/dt = F(φ)/φⁿ⁻¹`.
    pub fn phi_velocity(&self, phi: f64) -> f64 {
        self.f_value(phi) / phi.powi(self.n() as i32 - 1)
    }

    fn density(&self, site: Site, w: Weight) -> f64 {
        let x = self.phi_at(site);
        let f = self.f_site(site);
        let n = self.n() as i32;
        match w {
            Weight::Time => x.powi(n - 1) / f,
            Weight::Potential => x.powi(n) / f,
            Weight::Length => (x.powi(n - 1) / f).sqrt(),
        }
    }

    /// `∫` of a weight between two offsets measured from the same end.
    fn integrate_offsets(&self, from_a: bool, s1: f64, s2: f64, w: Weight) -> Result<f64> {
        if s1 == s2 {
            return Ok(0.0);
        }
        let (lo, hi, sign) = if s1 < s2 { (s1, s2, 1.0) } else { (s2, s1, -1.0) };
        // dφ = ds from a, dφ = −ds from b.
        let orient = if from_a { 1.0 } else { -1.0 };
        let g = |s: f64| {
            let site = if from_a { Site::FromA(s) } else { Site::FromB(s) };
            self.density(site, w)
        };
        let v = if lo > 0.0 && hi / lo > 4.0 {
            integrate_log(g, lo, hi, &QUAD)?.value
        } else {
            integrate(g, lo, hi, &QUAD)?.value
        };
        Ok(sign * orient * v)
    }

    /// `∫_{p1}^{p2} w(φ) dφ`.
    fn integrate_sites(&self, p1: Site, p2: Site, w: Weight) -> Result<f64> {
        match (p1, p2) {
            (Site::FromA(s1), Site::FromA(s2)) => self.integrate_offsets(true, s1, s2, w),
            (Site::FromB(s1), Site::FromB(s2)) => self.integrate_offsets(false, s1, s2, w),
            _ => {
                let half = 0.5 * (self.b_f - self.a_f);
                let mid_a = Site::FromA(half);
                let mid_b = Site::FromB(half);
                let first = self.integrate_sites(p1, if matches!(p1, Site::FromA(_)) { mid_a } else { mid_b }, w)?;
                let second = self.integrate_sites(if matches!(p2, Site::FromA(_)) { mid_a } else { mid_b }, p2, w)?;
                Ok(first + second)
            }
        }
    }

    fn reference_site(&self) -> Site {
        self.site_of(self.phi0)
    }

    fn reference_time(&self) -> Result<f64> {
        let x0 = self.phi0;
        match self.endpoint_class {
            EndpointClass::InfinitePoincare => self.poincare_tail(x0),
            EndpointClass::InfiniteLogGrowth => self.ale_tail(x0),
            EndpointClass::FiniteSimpleRoot => Ok(0.0),
        }
    }

    /// `−∫_x^∞ xⁿ⁻¹/F`, the normalisation with `sup t = 0`.
    fn poincare_tail(&self, x: f64) -> Result<f64> {
        let v = integrate_to_infinity(|y| self.density(Site::FromA(y - self.a_f), Weight::Time), x, &QUAD)?;
        Ok(-v.value)
    }

    /// `log x − ∫_x^∞ (xⁿ⁻¹/F − 1/x)`, the normalisation with `t − log φ → 0`.
    fn ale_tail(&self, x: f64) -> Result<f64> {
        let h = |y: f64| self.tail.eval(&y) / (y * self.f_site(Site::FromA(y - self.a_f)));
        let v = integrate_to_infinity(h, x, &QUAD)?;
        Ok(x.ln() - v.value)
    }

    fn check_site(&self, site: Site) -> Result<()> {
        let ok = match site {
            Site::FromA(s) => s > 0.0 && self.a_f + s < self.b_f,
            Site::FromB(s) => s > 0.0 && self.b_f.is_finite() && s < self.b_f - self.a_f,
        };
        if ok {
            Ok(())
        } else {
            Err(CoreError::OutOfDomain { x: self.phi_at(site), lo: self.a_f, hi: self.b_f })
        }
    }

    /// `t` at a site, under the profile's normalisation.
    pub fn t_at(&self, site: Site) -> Result<f64> {
        self.check_site(site)?;
        let x = self.phi_at(site);
        if x >= self.phi0 {
            match self.endpoint_class {
                EndpointClass::InfinitePoincare => return self.poincare_tail(x),
                EndpointClass::InfiniteLogGrowth => return self.ale_tail(x),
                EndpointClass::FiniteSimpleRoot => {}
            }
        }
        Ok(self.t_normalization + self.integrate_sites(self.reference_site(), site, Weight::Time)?)
    }

    /// `u` at a site; `u(φ₀) = 0`.
    pub fn u_at(&self, site: Site) -> Result<f64> {
        self.check_site(site)?;
        self.integrate_sites(self.reference_site(), site, Weight::Potential)
    }

    /// Radial length `∫ √(xⁿ⁻¹/F) dx` between two sites.
    pub fn length_between(&self, p1: Site, p2: Site) -> Result<f64> {
        self.check_site(p1)?;
        self.check_site(p2)?;
        self.integrate_sites(p1, p2, Weight::Length)
    }

    /// `t(φ) = ∫_{φ₀}^{φ} xⁿ⁻¹/F(x) dx + t(φ₀)`.
    ///
    /// Normalisation: for `c < 0` the supremum of `t` is 0; for `c = 0`,
    /// `t − log φ → 0` as `φ → ∞`; for `c > 0`, `t(φ₀) = 0`.
    pub fn t_of_phi(&self, phi: f64) -> Result<f64> {
        self.t_at(self.site_of(phi))
    }

    pub fn u_of_phi(&self, phi: f64) -> Result<f64> {
        self.u_at(self.site_of(phi))
    }

    /// Inverts `t_of_phi` by safeguarded Newton iteration.
    pub fn phi_of_t(&self, t: f64) -> Result<f64> {
        self.phi_of_t_from(t, self.phi0)
    }

    pub fn phi_of_t_from(&self, t: f64, guess: f64) -> Result<f64> {
        let (tlo, thi) = self.t_range();
        if !(t > tlo && t < thi) {
            return Err(CoreError::OutOfDomain { x: t, lo: tlo, hi: thi });
        }
        let n = self.n() as i32;
        let mut lo = self.a_f;
        let mut hi = self.b_f;
        let mut x = if guess > lo && guess < hi { guess } else { self.phi0 };
        for _ in 0..400 {
            let tx = self.t_of_phi(x)?;
            let r = tx - t;
            if r.abs() <= 2.0 * f64::EPSILON * t.abs().max(1.0) {
                return Ok(x);
            }
            if r > 0.0 {
                hi = hi.min(x);
            } else {
                lo = lo.max(x);
            }
            let step = r * self.f_value(x) / x.powi(n - 1);
            let mut next = x - step;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * x.max(1.0) };
            }
            if next == x || (hi - lo) <= 2.0 * f64::EPSILON * x.abs() {
                return Ok(next);
            }
            x = next;
        }
        Err(CoreError::NoBracket(format!("inversion of t = {t} did not converge")))
    }

    /// Samples `(t, φ, u, det g)` with `det g = e^{−nt} φⁿ⁻¹ u'' = e^{−nt} F(φ)`.
    pub fn sample_potential(&self, t_grid: &[f64]) -> Result<Vec<PotentialSample>> {
        let mut out = Vec::with_capacity(t_grid.len());
        let mut guess = self.phi0;
        for &t in t_grid {
            let phi = self.phi_of_t_from(t, guess)?;
            guess = phi;
            let u = self.u_of_phi(phi)?;
            let det_g = (-(self.n() as f64) * t).exp() * self.f_value(phi);
            out.push(PotentialSample { t, phi, u, det_g });
        }
        Ok(out)
    }

    /// Expected expansions at each end, using this profile's `b` and `κ`.
    pub fn expected_asymptotics(&self) -> Vec<AsymptoticModel> {
        let n = self.n();
        let nf = n as f64;
        let a = self.a_f;
        let c = ratio_to_f64(&self.problem.c);
        let nn = nf * (nf - 1.0);
        let ac = ratio_to_f64(&(&self.problem.a * &self.problem.c));
        let mut out = vec![AsymptoticModel {
            location: Location::PunctureZero,
            terms: vec![Term::known(a, Basis::LogR2), Term::known(-2.0 * a / (nn - ac), Basis::LogNegLogR2)],
            remainder: Remainder::InvLogR2,
        }];
        let far = match self.endpoint_class {
            EndpointClass::InfiniteLogGrowth if n == 2 => AsymptoticModel {
                location: Location::InfinityAle,
                terms: vec![
                    Term::known(1.0, Basis::R2),
                    Term::known(2.0 * a, Basis::LogR2),
                    Term::known(a * a / 2.0, Basis::PowR2(-1.0)),
                ],
                remainder: Remainder::PowR2(-2.0),
            },
            EndpointClass::InfiniteLogGrowth => AsymptoticModel {
                location: Location::InfinityAle,
                terms: vec![
                    Term::known(1.0, Basis::R2),
                    Term::known(-nf * a.powi(n as i32 - 1) / ((nf - 1.0) * (nf - 2.0)), Basis::PowR2(2.0 - nf)),
                    Term::known(a.powi(n as i32) / nf, Basis::PowR2(1.0 - nf)),
                ],
                remainder: Remainder::PowR2(-nf),
            },
            EndpointClass::InfinitePoincare => AsymptoticModel {
                location: Location::BoundaryPoincare,
                terms: vec![Term::known(nf * (nf + 1.0) / -c, Basis::PoincareLog)],
                remainder: Remainder::LogR2,
            },
            EndpointClass::FiniteSimpleRoot => {
                let k = self.kappa.unwrap_or(f64::NAN);
                AsymptoticModel {
                    location: Location::InfinityIncomplete,
                    terms: vec![Term::known(self.b_f, Basis::LogR2), Term::free(Basis::RPowNeg2OverKappa(k))],
                    remainder: Remainder::RPowNeg4OverKappa(k),
                }
            }
        };
        out.push(far);
        out
    }
}

/// Builds the profile and returns its expected expansions.
pub fn expected_asymptotics(prob: &FlatProblem) -> Result<Vec<AsymptoticModel>> {
    Ok(build_f(prob)?.expected_asymptotics())
}

/// `κ` of a `c > 0` profile. The metric would close up smoothly over the
/// point at infinity only for `κ = 1`; that value is reported as a violation.
pub fn check_no_extension(profile: &FlatProfile) -> Result<f64> {
    let k = profile
        .kappa
        .ok_or_else(|| CoreError::InvalidParameter("κ is defined only for c > 0".into()))?;
    if let Some(kq) = &profile.kappa_exact {
        if kq.is_one() {
            return Err(CoreError::Invariant("κ = 1".into()));
        }
    } else if k == 1.0 {
        return Err(CoreError::Invariant("κ = 1".into()));
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn prob(n: u32, a: i64, c: i64) -> FlatProblem {
        FlatProblem::new(n, rat(a), rat(c)).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FlatProblem::new(1, rat(1), rat(0)).is_err());
        assert!(FlatProblem::new(2, rat(0), rat(0)).is_err());
        assert!(FlatProblem::new(2, rat(1), rat(2)).is_err());
    }

    #[test]
    fn closed_form_c_zero() {
        let p = build_f(&prob(2, 1, 0)).unwrap();
        for &phi in &[1.05, 1.5, 2.0, 10.0, 300.0] {
            let want = (phi - 1.0f64).ln() - 1.0 / (phi - 1.0);
            let got = p.t_of_phi(phi).unwrap();
            assert!((got - want).abs() < 1e-12 * want.abs().max(1.0), "{phi}: {got} vs {want}");
        }
        assert!((p.t_of_phi(2.0).unwrap() + 1.0).abs() < 1e-13);
    }

    #[test]
    fn near_puncture_limit() {
        let p = build_f(&prob(2, 1, 0)).unwrap();
        let e = 1e-4;
        let t = p.t_at(Site::FromA(e)).unwrap();
        assert!((t + 1.0 / e - e.ln()).abs() < 1e-6);
    }

    #[test]
    fn positive_curvature_end() {
        let p = build_f(&prob(2, 1, 1)).unwrap();
        assert_eq!(p.kappa_exact, Some(ratio(8, 3)));
        let k = p.kappa.unwrap();
        let d: Vec<f64> = [1e-3, 1e-5, 1e-7]
            .iter()
            .map(|&s| p.t_at(Site::FromB(s)).unwrap() + k * s.ln())
            .collect();
        assert!((d[0] - d[2]).abs() < 1e-2, "{d:?}");
    }

    #[test]
    fn inversion_round_trip() {
        for (n, c) in [(2, 0), (2, -6), (2, 1), (3, -2)] {
            let p = build_f(&prob(n, 1, c)).unwrap();
            for &t in &[-10.0, -1.0, -0.5] {
                let phi = p.phi_of_t(t).unwrap();
                let back = p.t_of_phi(phi).unwrap();
                assert!((back - t).abs() < 1e-12 * t.abs().max(1.0));
            }
        }
    }

    #[test]
    fn det_g_closed_form() {
        let p = build_f(&prob(2, 1, 0)).unwrap();
        let s = p.sample_potential(&[-2.0, 0.0, 1.5]).unwrap();
        for r in s {
            let want = (2.0 / (r.phi - 1.0)).exp();
            assert!((r.det_g / want - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reference_values() {
        let p = build_f(&prob(2, 1, -6)).unwrap();
        assert!(p.t_of_phi(1e6).unwrap() < 0.0);
        let q = build_f(&prob(2, 1, 1)).unwrap();
        assert_eq!(q.t_of_phi(2.0).unwrap(), 0.0);
        assert!(q.t_of_phi(5.0).is_err());
    }
}
