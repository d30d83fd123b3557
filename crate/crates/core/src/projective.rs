//! Profiles that close up smoothly over the infinity divisor of the
//! projective completion: a simple root at `b` with `φ'(b) = −1`.
//!
//! With `I₁ = ∫Q/(1+λx)`, `I₂ = ∫Q/x`, `I₃ = ∫Q`, `J₁ = ∫xQ/(1+λx)`,
//! `J₃ = ∫xQ` over `[a, b]`:
//!
//! ```text
//! H₁ = I₂J₃ − I₃²   H₂ = I₃J₁ − I₁J₃   H₃ = J₁I₂ − I₃I₁
//! L₁ = Q(b)J₃ − bQ(b)I₃   L₂ = Q(b)J₁ − bQ(b)I₁
//! c_M = (n(n−1)H₁ + L₁)/H₂   c = (n(n−1)H₃ + L₂)/H₂
//! ```

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::asymptotics::{AsymptoticModel, Basis, Location, Remainder, Term};
use crate::error::{CoreError, Result};
use crate::momentum::{self, bq, build_q, check_shape, BundleProblem, BundleProfile, CaseTag};
use crate::poly::{cauchy_bound, isolate_real_roots, positive_on, refine_root};
use crate::scalar::{f64_to_ratio, rat, ratio_to_f64, simplest_rational_in};
use crate::{PolyQ, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct HLValues {
    pub h1: Rational,
    pub h2: Rational,
    pub h3: Rational,
    pub l1: Rational,
    pub l2: Rational,
}

/// The integrals and `H`, `L` as polynomials in the right endpoint `b`
/// for fixed `a`.
#[derive(Clone, Debug)]
pub struct HlPolys {
    pub q: PolyQ,
    pub i1: PolyQ,
    pub i2: PolyQ,
    pub i3: PolyQ,
    pub j1: PolyQ,
    pub j3: PolyQ,
}

fn definite_from(g: &PolyQ, a: &Rational) -> PolyQ {
    let g1 = g.antiderivative();
    &g1 - &PolyQ::constant(g1.eval(a))
}

impl HlPolys {
    pub fn new(m: u32, n: u32, lambda: &Rational, a: &Rational) -> Self {
        let q = build_q(m, n, lambda);
        let xq = &q * &PolyQ::x();
        HlPolys {
            i1: definite_from(&bq(m - 1, n - 1, lambda), a),
            i2: definite_from(&bq(m, n - 2, lambda), a),
            i3: definite_from(&q, a),
            j1: definite_from(&bq(m - 1, n, lambda), a),
            j3: definite_from(&xq, a),
            q,
        }
    }

    pub fn h1(&self) -> PolyQ {
        &(&self.i2 * &self.j3) - &(&self.i3 * &self.i3)
    }

    pub fn h2(&self) -> PolyQ {
        &(&self.i3 * &self.j1) - &(&self.i1 * &self.j3)
    }

    pub fn h3(&self) -> PolyQ {
        &(&self.j1 * &self.i2) - &(&self.i3 * &self.i1)
    }

    pub fn l1(&self) -> PolyQ {
        let bq = &self.q * &PolyQ::x();
        &(&self.q * &self.j3) - &(&bq * &self.i3)
    }

    pub fn l2(&self) -> PolyQ {
        let bq = &self.q * &PolyQ::x();
        &(&self.q * &self.j1) - &(&bq * &self.i1)
    }

    pub fn eval(&self, b: &Rational) -> HLValues {
        HLValues {
            h1: self.h1().eval(b),
            h2: self.h2().eval(b),
            h3: self.h3().eval(b),
            l1: self.l1().eval(b),
            l2: self.l2().eval(b),
        }
    }
}

/// Exact `H` and `L` values for `0 < a < b`.
pub fn hl_values(m: u32, n: u32, lambda: &Rational, a: &Rational, b: &Rational) -> Result<HLValues> {
    check_shape(m, n, lambda, a)?;
    if b <= a {
        return Err(CoreError::InvalidParameter("need a < b".into()));
    }
    if lambda.is_negative() && (Rational::one() + lambda * b) <= Rational::zero() {
        return Err(CoreError::InvalidParameter("λ < 0 requires b < −1/λ".into()));
    }
    Ok(HlPolys::new(m, n, lambda, a).eval(b))
}

fn nn(n: u32) -> Rational {
    rat((n * (n - 1)) as i64)
}

fn h2_nonzero(h: &HLValues) -> Result<()> {
    if h.h2.is_zero() {
        Err(CoreError::Degenerate("H₂ vanishes at this b".into()))
    } else {
        Ok(())
    }
}

/// Base curvature `c_M` that closes the profile at `b`.
pub fn c_m_of_b(m: u32, n: u32, lambda: &Rational, a: &Rational, b: &Rational) -> Result<Rational> {
    let h = hl_values(m, n, lambda, a, b)?;
    h2_nonzero(&h)?;
    Ok((nn(n) * &h.h1 + &h.l1) / &h.h2)
}

/// Fibre curvature `c` that closes the profile at `b`.
pub fn c_of_b(m: u32, n: u32, lambda: &Rational, a: &Rational, b: &Rational) -> Result<Rational> {
    let h = hl_values(m, n, lambda, a, b)?;
    h2_nonzero(&h)?;
    Ok((nn(n) * &h.h3 + &h.l2) / &h.h2)
}

/// One closing endpoint for given `(a, c_M)`.
#[derive(Clone, Debug)]
pub struct ProjectiveRoot {
    pub b: Rational,
    pub b_approx: f64,
    /// `c_M(b̃)`; matches the requested value up to the root refinement.
    pub c_m: Rational,
    pub c: Rational,
    pub c_approx: f64,
}

/// All `b > a` (and `b < −1/λ` when λ < 0) with `c_M(b)` equal to the
/// requested value, sorted ascending. The defining equation
/// `n(n−1)H₁ + L₁ − c_M H₂ = 0` is polynomial in `b`, so every root is
/// isolated exactly.
pub fn solve_b_given_c_m(m: u32, n: u32, lambda: &Rational, a: &Rational, c_m: &Rational, tol: f64) -> Result<Vec<ProjectiveRoot>> {
    check_shape(m, n, lambda, a)?;
    if lambda.is_positive() {
        let lower = rat((m * (m + 2 * n - 1)) as i64) * lambda;
        if c_m <= &lower {
            return Err(CoreError::InvalidParameter(format!(
                "c_M must exceed m(m+2n−1)λ = {}",
                crate::scalar::format_rational(&lower)
            )));
        }
    }
    let hl = HlPolys::new(m, n, lambda, a);
    let eq = &(&hl.h1().scale(&nn(n)) + &hl.l1()) - &hl.h2().scale(c_m);
    if eq.is_zero() {
        return Err(CoreError::Degenerate("closing condition holds identically".into()));
    }
    let top = if lambda.is_negative() {
        -lambda.recip()
    } else {
        let r = cauchy_bound(&eq) * rat(2) + rat(1);
        if &r > a {
            r
        } else {
            a + rat(1)
        }
    };
    let width = f64_to_ratio(tol.clamp(1e-300, 1e-30))?;
    let h2p = hl.h2();
    let mut out = Vec::new();
    for iv in isolate_real_roots(&eq, a, &top)? {
        if lambda.is_negative() && iv.is_exact() && iv.lo == top {
            continue;
        }
        let iv = refine_root(&eq, &iv, &width);
        let b = simplest_rational_in(&iv.lo, &iv.hi);
        if &b <= a || (lambda.is_negative() && b >= top) || h2p.eval(&b).is_zero() {
            continue;
        }
        let h = hl.eval(&b);
        let cm = (nn(n) * &h.h1 + &h.l1) / &h.h2;
        let c = (nn(n) * &h.h3 + &h.l2) / &h.h2;
        out.push(ProjectiveRoot { b_approx: ratio_to_f64(&b), c_approx: ratio_to_f64(&c), b, c_m: cm, c });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ProjectiveProfile {
    pub profile: BundleProfile,
    pub b: Rational,
    pub c_m: Rational,
    pub c: Rational,
    /// `φ(b) = 0` and `φ'(b) = −1` hold exactly.
    pub extension_ok: bool,
    /// `P > 0` on `(0, a)` as well, so `a` is the first root.
    pub only_root_below_b: bool,
}

/// The profile on `[a, b]` with `(c_M, c)` solved from the closing
/// conditions.
pub fn build_projective_profile(m: u32, n: u32, lambda: &Rational, a: &Rational, b: &Rational) -> Result<ProjectiveProfile> {
    let c_m = c_m_of_b(m, n, lambda, a, b)?;
    let c = c_of_b(m, n, lambda, a, b)?;
    let prob = BundleProblem::new(m, n, lambda.clone(), c_m.clone(), c.clone(), a.clone())?;
    let p = momentum::build_p(&prob);
    let q = build_q(m, n, lambda);
    let extension_ok = p.eval(b).is_zero() && p.derivative().eval(b) == -q.eval(b);
    if !positive_on(&p, a, Some(b))? {
        return Err(CoreError::NoPositiveProfile("φ changes sign on (a, b)".into()));
    }
    if p.eval(b).is_zero() {
        let r = isolate_real_roots(&p, a, b)?;
        if r.iter().any(|iv| iv.multiplicity > 1 && iv.exact() == Some(b)) {
            return Err(CoreError::Degenerate("double root at b".into()));
        }
    }
    let only_root_below_b = positive_on(&p, &Rational::zero(), Some(a))?;
    let profile = BundleProfile::from_parts(prob, p, Some(b.clone()), CaseTag::Projective)?;
    Ok(ProjectiveProfile { profile, b: b.clone(), c_m, c, extension_ok, only_root_below_b })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CmRange {
    /// Every `c_M` is attained.
    All,
    /// Exactly the open ray `(lower, ∞)`.
    Above(String),
}

/// Range of `c_M` over all closing profiles with `λ ≠ 0`.
pub fn c_m_range(m: u32, n: u32, lambda: &Rational) -> Result<CmRange> {
    if m < 1 || n < 2 {
        return Err(CoreError::InvalidParameter("need m ≥ 1 and n ≥ 2".into()));
    }
    if lambda.is_zero() {
        return Err(CoreError::InvalidParameter("the c_M range is only characterised for λ ≠ 0".into()));
    }
    if lambda.is_negative() {
        return Ok(CmRange::All);
    }
    let lower = rat((m * (m + 2 * n - 1)) as i64) * lambda;
    Ok(CmRange::Above(crate::scalar::format_rational(&lower)))
}

/// `K(b) = n(n−1)H₁ + L₁ − m(m+2n−1)λH₂` as a polynomial in `b`. For
/// `λ > 0`, `K < 0` on `(a, ∞)` is equivalent to `c_M(b) > m(m+2n−1)λ`.
pub fn k_polynomial(m: u32, n: u32, lambda: &Rational, a: &Rational) -> Result<PolyQ> {
    check_shape(m, n, lambda, a)?;
    let hl = HlPolys::new(m, n, lambda, a);
    let lower = rat((m * (m + 2 * n - 1)) as i64) * lambda;
    Ok(&(&hl.h1().scale(&nn(n)) + &hl.l1()) - &hl.h2().scale(&lower))
}

/// Certifies `K(b) < 0` for every `b > a` by exact root isolation.
pub fn k_negative_beyond_a(m: u32, n: u32, lambda: &Rational, a: &Rational) -> Result<bool> {
    let k = k_polynomial(m, n, lambda, a)?;
    positive_on(&-k, a, None)
}

/// Puncture expansion of a closing profile; `κ(a) > 0` always holds here.
pub fn pmy_check_projective(p: &ProjectiveProfile) -> Result<AsymptoticModel> {
    if !p.profile.kappa_a_exact.is_positive() {
        return Err(CoreError::Invariant("κ(a) ≤ 0 for a closing profile".into()));
    }
    momentum::pmy_coefficients(&p.profile)
}

/// Expansion at the infinity divisor: `f = b log r² + C r^{-2}`-type
/// behaviour is not needed for the fits, so only the leading term is fixed.
pub fn infinity_model(p: &ProjectiveProfile) -> AsymptoticModel {
    AsymptoticModel {
        location: Location::InfinityIncomplete,
        terms: vec![Term::known(p.profile.b_approx(), Basis::LogR2)],
        remainder: Remainder::PowR2(-1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn example_4_1_constants() {
        let (a, b) = (rat(1), rat(2));
        assert_eq!(c_m_of_b(1, 2, &rat(1), &a, &b).unwrap(), ratio(610, 13));
        assert_eq!(c_of_b(1, 2, &rat(1), &a, &b).unwrap(), ratio(276, 13));
        assert_eq!(c_m_of_b(1, 2, &rat(1), &a, &rat(3)).unwrap(), ratio(200, 11));
    }

    #[test]
    fn closing_identities_exact() {
        let p = build_projective_profile(1, 2, &rat(1), &rat(1), &rat(2)).unwrap();
        assert!(p.extension_ok);
        assert!(p.only_root_below_b);
        assert!(p.profile.kappa_a > 0.0);
        let cross = {
            let hl = HlPolys::new(1, 2, &rat(1), &rat(1));
            let b = rat(2);
            let qb = hl.q.eval(&b);
            (&b * &qb + &p.c_m * hl.j1.eval(&b) + rat(2) * hl.i3.eval(&b)) / hl.j3.eval(&b)
        };
        assert_eq!(cross, p.c);
    }

    #[test]
    fn solve_recovers_b() {
        let r = solve_b_given_c_m(1, 2, &rat(1), &rat(1), &ratio(610, 13), 1e-12).unwrap();
        assert!(r.iter().any(|x| x.b == rat(2)));
        assert!(solve_b_given_c_m(1, 2, &rat(1), &rat(1), &rat(4), 1e-12).is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(c_m_range(2, 3, &rat(2)).unwrap(), CmRange::Above("28".into()));
        assert_eq!(c_m_range(1, 2, &rat(-1)).unwrap(), CmRange::All);
        assert!(c_m_range(1, 2, &rat(0)).is_err());
    }

    #[test]
    fn approaches_lower_limit() {
        let v = ratio_to_f64(&c_m_of_b(1, 2, &rat(1), &rat(1), &rat(1000)).unwrap());
        assert!(v > 4.0 && (v - 4.0).abs() < 0.05);
    }
}
