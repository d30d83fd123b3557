//! Scalar curvature rebuilt from sampled data by central differences.
//!
//! Flat: `v = nt − (n−1) log u' − log u''`, `c(t) = (n−1) v'/u' + v''/u''`.
//! Bundle: `c(τ) = c_M/(1+λτ) + n(n−1)/τ − (Qφ)''/Q`.
//!
//! Each value is computed with steps `h` and `h/2`; the reported residual
//! is that of the Richardson combination `(4c_{h/2} − c_h)/3`, and the ratio
//! of the raw residuals shows the `O(h²)` convergence.

use serde::{Deserialize, Serialize};

use super::{MomentumSampler, RadialPotential};
use crate::error::{CoreError, Result};
use crate::numeric::linspace;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurvatureCheck {
    /// `max |c_R − c|` for the Richardson combination `c_R`.
    pub residual: f64,
    /// `max |c_h − c|`.
    pub residual_h: f64,
    /// `max |c_{h/2} − c|`.
    pub residual_half: f64,
    /// `residual_h / residual_half`, close to 4 for second-order stencils.
    pub ratio: f64,
    /// The coarse stencil is already at rounding level (the sampled
    /// function is a polynomial of low degree), so `ratio` carries no
    /// information.
    pub exact_stencil: bool,
    /// Largest step used.
    pub h: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

/// Residuals below this multiple of `max(1, |c|)` are rounding noise.
const NOISE_FLOOR: f64 = 1e-9;

fn finish(target: f64, h: f64, grid: Vec<f64>, ch: Vec<f64>, ch2: Vec<f64>) -> Result<CurvatureCheck> {
    let mut rh = 0f64;
    let mut rh2 = 0f64;
    let mut rr = 0f64;
    let mut values = Vec::with_capacity(grid.len());
    for (a, b) in ch.iter().zip(&ch2) {
        if !a.is_finite() || !b.is_finite() {
            return Err(CoreError::Invariant("non-finite curvature sample".into()));
        }
        let r = (4.0 * b - a) / 3.0;
        rh = rh.max((a - target).abs());
        rh2 = rh2.max((b - target).abs());
        rr = rr.max((r - target).abs());
        values.push(r);
    }
    let exact_stencil = rh < NOISE_FLOOR * target.abs().max(1.0);
    Ok(CurvatureCheck { residual: rr, residual_h: rh, residual_half: rh2, ratio: rh / rh2, exact_stencil, h, grid, values })
}

fn flat_curvature(n: f64, t: f64, h: f64, u: [f64; 5]) -> f64 {
    let d1 = |i: usize| (u[i + 1] - u[i - 1]) / (2.0 * h);
    let d2 = |i: usize| (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
    let v = |i: usize| n * (t + (i as f64 - 2.0) * h) - (n - 1.0) * d1(i).ln() - d2(i).ln();
    let (v1, v0, vm) = (v(3), v(2), v(1));
    let dv = (v1 - vm) / (2.0 * h);
    let ddv = (v1 - 2.0 * v0 + vm) / (h * h);
    (n - 1.0) * dv / d1(2) + ddv / d2(2)
}

/// Curvature residual of a radial potential on `grid`, with step `steps[i]`
/// at `grid[i]`.
pub fn curvature_residual_flat<P: RadialPotential + ?Sized>(p: &P, target_c: f64, grid: &[f64], steps: &[f64]) -> Result<CurvatureCheck> {
    if grid.is_empty() || steps.len() != grid.len() || steps.iter().any(|&h| !(h > 0.0)) {
        return Err(CoreError::InvalidParameter("curvature grid must be nonempty with a positive step per point".into()));
    }
    let n = p.dimension() as f64;
    let mut ts = Vec::with_capacity(9 * grid.len());
    for (&t, &h) in grid.iter().zip(steps) {
        for k in -4..=4 {
            ts.push(t + k as f64 * h / 2.0);
        }
    }
    let u = p.sample_u(&ts)?;
    let mut ch = Vec::with_capacity(grid.len());
    let mut ch2 = Vec::with_capacity(grid.len());
    for (i, (&t, &h)) in grid.iter().zip(steps).enumerate() {
        let w = &u[9 * i..9 * i + 9];
        ch.push(flat_curvature(n, t, h, [w[0], w[2], w[4], w[6], w[8]]));
        ch2.push(flat_curvature(n, t, h / 2.0, [w[2], w[3], w[4], w[5], w[6]]));
    }
    let hmax = steps.iter().copied().fold(0.0, f64::max);
    finish(target_c, hmax, grid.to_vec(), ch, ch2)
}

/// Curvature residual of a momentum profile on `grid` with step `h`.
pub fn curvature_residual_bundle<S: MomentumSampler + ?Sized>(p: &S, target_c: f64, grid: &[f64], h: f64) -> Result<CurvatureCheck> {
    if grid.is_empty() || !(h > 0.0) {
        return Err(CoreError::InvalidParameter("curvature grid must be nonempty with h > 0".into()));
    }
    let (m, n, lambda, c_m) = p.structure();
    let (a, b) = p.interval();
    if grid.iter().any(|&x| x - h <= a || x + h >= b) {
        let bad = grid.iter().copied().find(|&x| x - h <= a || x + h >= b).unwrap_or(f64::NAN);
        return Err(CoreError::StencilOutsideDomain(bad));
    }
    let q = |x: f64| (1.0 + lambda * x).powi(m as i32) * x.powi(n as i32 - 1);
    let nn = (n * (n - 1)) as f64;
    let mut taus = Vec::with_capacity(5 * grid.len());
    for &x in grid {
        for k in -2..=2 {
            taus.push(x + k as f64 * h / 2.0);
        }
    }
    let phi = p.sample_phi(&taus)?;
    let qp: Vec<f64> = taus.iter().zip(&phi).map(|(&x, &f)| q(x) * f).collect();
    let mut ch = Vec::with_capacity(grid.len());
    let mut ch2 = Vec::with_capacity(grid.len());
    for (i, &x) in grid.iter().enumerate() {
        let w = &qp[5 * i..5 * i + 5];
        let base = c_m / (1.0 + lambda * x) + nn / x;
        let d_h = (w[4] - 2.0 * w[2] + w[0]) / (h * h);
        let d_h2 = (w[3] - 2.0 * w[2] + w[1]) / (h * h / 4.0);
        ch.push(base - d_h / q(x));
        ch2.push(base - d_h2 / q(x));
    }
    finish(target_c, h, grid.to_vec(), ch, ch2)
}

/// 400 points on `[−3, 3]` with step 0.1, or, when `t` is bounded above by
/// 0, on `[−2, −0.2]` with step 0.08 shrunk in proportion to the distance
/// from the upper limit.
pub fn default_flat_grid(t_hi: f64) -> (Vec<f64>, Vec<f64>) {
    if t_hi <= 0.0 {
        let grid = linspace(-2.0, -0.2, 400);
        let steps = grid.iter().map(|&t| 0.08 * ((t_hi - t) / 3.0).min(1.0)).collect();
        (grid, steps)
    } else {
        (linspace(-3.0, 3.0, 400), vec![0.1; 400])
    }
}

/// 400 points on the middle 80% of `(a, b)` (or of `(a, a + 10 max(a, 1))`
/// when `b = ∞`), with step `w/40`.
pub fn default_bundle_grid(a: f64, b: f64) -> (Vec<f64>, f64) {
    let hi = if b.is_finite() { b } else { a + 10.0 * a.max(1.0) };
    let w = hi - a;
    (linspace(a + 0.1 * w, hi - 0.1 * w, 400), w / 40.0)
}
