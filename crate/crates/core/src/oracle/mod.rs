//! Independent checks of constructed profiles.
//!
//! The oracle sees profiles only through the sampling traits below: it gets
//! values of the potential (or of the momentum profile), never the
//! polynomials or their derivatives. Curvature is rebuilt from those samples
//! by finite differences, completeness by fitting length integrals, and
//! asymptotics by least squares.

mod completeness;
mod curvature;
mod fit;
mod ode;
mod report;

pub use completeness::{completeness_probe, CompletenessResult, End};
pub use curvature::{
    curvature_residual_bundle, curvature_residual_flat, default_bundle_grid, default_flat_grid, CurvatureCheck,
};
pub use fit::{fit_asymptotics, fit_samples, sample_window, synthetic_samples, FitResult, Range, Side, Window};
pub use ode::{ode_vs_quadrature, OdeGap};
pub use report::{verify_bundle, verify_flat, verify_projective, Check, CompletenessSummary, Thresholds, VerificationReport};

use crate::error::Result;
use crate::flat::{FlatProfile, Site};
use crate::momentum::{BundleProfile, TauSite};
use crate::projective::ProjectiveProfile;
use crate::scalar::ratio_to_f64;

/// Kähler potential `u(t)`, `t = log r²`, of a radially symmetric metric on a
/// domain in `Cⁿ`.
pub trait RadialPotential {
    fn dimension(&self) -> u32;
    fn sample_u(&self, t: &[f64]) -> Result<Vec<f64>>;
}

/// Momentum profile `φ(τ)` of a bundle metric together with the data of the
/// base that enter the curvature formula.
pub trait MomentumSampler {
    /// `(m, n, λ, c_M)`.
    fn structure(&self) -> (u32, u32, f64, f64);
    /// `(a, b)`, with `b = +∞` when unbounded.
    fn interval(&self) -> (f64, f64);
    fn sample_phi(&self, tau: &[f64]) -> Result<Vec<f64>>;
}

/// A point on the radial interval: an offset from the left end, an offset
/// from the (finite) right end, or an absolute position.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Probe {
    FromLeft(f64),
    FromRight(f64),
    At(f64),
}

/// Radial data along a ray: log-radius, potential and length.
pub trait RadialCurve {
    fn left(&self) -> f64;
    fn right(&self) -> f64;
    /// `(log r², potential)`.
    fn point(&self, p: Probe) -> Result<(f64, f64)>;
    fn log_radius(&self, p: Probe) -> Result<f64> {
        Ok(self.point(p)?.0)
    }
    /// Length integral between two probes (twice the radial distance for
    /// bundle profiles, where the density is `1/√φ`).
    fn length(&self, p1: Probe, p2: Probe) -> Result<f64>;
}

impl RadialPotential for FlatProfile {
    fn dimension(&self) -> u32 {
        self.n()
    }

    fn sample_u(&self, t: &[f64]) -> Result<Vec<f64>> {
        Ok(self.sample_potential(t)?.into_iter().map(|s| s.u).collect())
    }
}

fn flat_site(p: &FlatProfile, probe: Probe) -> Site {
    match probe {
        Probe::FromLeft(s) => Site::FromA(s),
        Probe::FromRight(s) => Site::FromB(s),
        Probe::At(x) => {
            if p.b().is_finite() && p.b() - x < x - p.a() {
                Site::FromB(p.b() - x)
            } else {
                Site::FromA(x - p.a())
            }
        }
    }
}

impl RadialCurve for FlatProfile {
    fn left(&self) -> f64 {
        self.a()
    }

    fn right(&self) -> f64 {
        self.b()
    }

    fn point(&self, p: Probe) -> Result<(f64, f64)> {
        let s = flat_site(self, p);
        Ok((self.t_at(s)?, self.u_at(s)?))
    }

    fn log_radius(&self, p: Probe) -> Result<f64> {
        self.t_at(flat_site(self, p))
    }

    fn length(&self, p1: Probe, p2: Probe) -> Result<f64> {
        self.length_between(flat_site(self, p1), flat_site(self, p2))
    }
}

impl MomentumSampler for BundleProfile {
    fn structure(&self) -> (u32, u32, f64, f64) {
        let p = &self.problem;
        (p.m, p.n, ratio_to_f64(&p.lambda), ratio_to_f64(&p.c_m))
    }

    fn interval(&self) -> (f64, f64) {
        (self.a(), self.b_approx())
    }

    fn sample_phi(&self, tau: &[f64]) -> Result<Vec<f64>> {
        Ok(tau.iter().map(|&x| self.phi_value(x)).collect())
    }
}

impl MomentumSampler for ProjectiveProfile {
    fn structure(&self) -> (u32, u32, f64, f64) {
        self.profile.structure()
    }

    fn interval(&self) -> (f64, f64) {
        self.profile.interval()
    }

    fn sample_phi(&self, tau: &[f64]) -> Result<Vec<f64>> {
        self.profile.sample_phi(tau)
    }
}

fn tau_site(p: &BundleProfile, probe: Probe) -> TauSite {
    match probe {
        Probe::FromLeft(s) => TauSite::FromA(s),
        Probe::FromRight(s) => TauSite::FromB(s),
        Probe::At(x) => p.site_of(x),
    }
}

impl RadialCurve for BundleProfile {
    fn left(&self) -> f64 {
        self.a()
    }

    fn right(&self) -> f64 {
        self.b_approx()
    }

    fn point(&self, p: Probe) -> Result<(f64, f64)> {
        let s = tau_site(self, p);
        Ok((self.nu_at(s)?, self.potential_at(s)?))
    }

    fn log_radius(&self, p: Probe) -> Result<f64> {
        self.nu_at(tau_site(self, p))
    }

    fn length(&self, p1: Probe, p2: Probe) -> Result<f64> {
        self.length_between(tau_site(self, p1), tau_site(self, p2))
    }
}
