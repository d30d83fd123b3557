//! Direct integration of `dφ/dt = F(φ)/φⁿ⁻¹` against the quadrature profile.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::flat::FlatProfile;
use crate::numeric::{dopri5, OdeOptions};
use crate::scalar::ratio_to_f64;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OdeGap {
    /// `max |φ_ODE(t) − φ_quadrature(t)|`.
    pub gap: f64,
    pub t: Vec<f64>,
    pub phi_ode: Vec<f64>,
    pub phi_quadrature: Vec<f64>,
}

/// Integrates from the first point of `t_span` (sorted ascending) with the
/// initial value read off the profile. `F` is rebuilt from `(n, a, c)`.
pub fn ode_vs_quadrature(profile: &FlatProfile, t_span: &[f64]) -> Result<OdeGap> {
    if t_span.is_empty() {
        return Err(CoreError::InvalidParameter("empty t span".into()));
    }
    if t_span.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CoreError::InvalidParameter("t span must be strictly increasing".into()));
    }
    let prob = &profile.problem;
    let n = prob.n as i32;
    let nf = prob.n as f64;
    let a = ratio_to_f64(&prob.a);
    let c = ratio_to_f64(&prob.c);
    let c1 = nf * a.powi(n - 1) - c / nf * a.powi(n);
    let c2 = (1.0 - nf) * a.powi(n) + c / (nf + 1.0) * a.powi(n + 1);
    let f = move |x: f64| -c / (nf * (nf + 1.0)) * x.powi(n + 1) + x.powi(n) - c1 * x - c2;
    let quad: Vec<f64> = profile.sample_potential(t_span)?.iter().map(|s| s.phi).collect();
    let opts = OdeOptions { rtol: 1e-12, atol: 1e-14, ..OdeOptions::default() };
    let sol = dopri5(|_t, y: &[f64]| vec![f(y[0]) / y[0].powi(n - 1)], t_span[0], &[quad[0]], t_span, &opts)?;
    let phi_ode: Vec<f64> = sol.into_iter().map(|y| y[0]).collect();
    let gap = phi_ode.iter().zip(&quad).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok(OdeGap { gap, t: t_span.to_vec(), phi_ode, phi_quadrature: quad })
}
