//! Least-squares fits of sampled potentials against expected expansions.

use serde::{Deserialize, Serialize};

use super::{Probe, RadialCurve};
use crate::asymptotics::{AsymptoticModel, Basis, Location, Remainder};
use crate::error::{CoreError, Result};
use crate::numeric::{geomspace, least_squares};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Side {
    /// Offsets from the left end.
    Left,
    /// Offsets from the finite right end.
    Right,
    /// Offsets from the left end, reaching out to `+∞`.
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Range {
    /// Interval of the log-radius variable.
    LogRadius(f64, f64),
    /// Interval of offsets along the side.
    Offset(f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub side: Side,
    pub range: Range,
    pub count: usize,
}

impl Window {
    /// Default window and nuisance terms for a model. Nuisance terms absorb
    /// the normalisation constant and the leading remainder.
    pub fn default_for(model: &AsymptoticModel) -> (Window, Vec<Basis>) {
        let w = |side, range| Window { side, range, count: 80 };
        match model.location {
            Location::PunctureZero => {
                let nuisance = match model.terms.get(1).map(|t| t.basis) {
                    Some(Basis::NegLogR2Pow(p)) if (p - 0.5).abs() < 1e-12 => {
                        vec![Basis::Const, Basis::LogNegLogR2, Basis::NegLogR2Pow(-0.5)]
                    }
                    Some(Basis::NegLogR2Pow(_)) => {
                        vec![Basis::Const, Basis::NegLogR2Pow(1.0 / 3.0), Basis::LogNegLogR2, Basis::NegLogR2Pow(-1.0 / 3.0)]
                    }
                    _ => series(Basis::NegLogSeries),
                };
                (w(Side::Left, Range::LogRadius(-400.0, -200.0)), nuisance)
            }
            Location::InfinityAle => {
                let mut nuisance = vec![Basis::Const];
                if let Remainder::PowR2(p) = model.remainder {
                    nuisance.push(Basis::PowR2(p));
                }
                (w(Side::Unbounded, Range::Offset(1e2, 1e4)), nuisance)
            }
            Location::BoundaryPoincare => (
                w(Side::Unbounded, Range::LogRadius(-0.1, -1e-4)),
                vec![Basis::Const, Basis::LogR2, Basis::LogR2Pow(2)],
            ),
            Location::InfinityIncomplete => {
                let mut nuisance = vec![Basis::Const];
                if let Remainder::RPowNeg4OverKappa(k) = model.remainder {
                    nuisance.push(Basis::RPowNeg2OverKappa(k / 2.0));
                }
                (w(Side::Right, Range::Offset(1e-6, 1e-2)), nuisance)
            }
            Location::InfinityBundle => match model.terms.first().map(|t| t.basis) {
                Some(Basis::PowR2(theta)) => (
                    w(Side::Unbounded, Range::Offset(1e2, 1e6)),
                    vec![Basis::Const, Basis::PowR2(-theta)],
                ),
                _ => (w(Side::Right, Range::LogRadius(20.0, 40.0)), series(Basis::LogSeries)),
            },
        }
    }

    /// As [`Window::default_for`], but windows at an end of the momentum
    /// interval are placed at offsets `ℓ·[10⁻⁶, 10⁻³]` for the local length
    /// scale `ℓ`, which stays asymptotic however small `κ` or `a` is.
    pub fn scaled_for(model: &AsymptoticModel, scale: f64) -> (Window, Vec<Basis>) {
        let (mut window, nuisance) = Window::default_for(model);
        if matches!(window.side, Side::Left | Side::Right) {
            window.range = Range::Offset(1e-6 * scale, 1e-3 * scale);
        }
        (window, nuisance)
    }
}

/// Constant plus the terms `logⁱ/xʲ` with `0 ≤ i ≤ j ≤ 2`, `j ≥ 1`.
fn series(f: fn(i32, i32) -> Basis) -> Vec<Basis> {
    vec![Basis::Const, f(1, 1), f(0, 1), f(2, 2), f(1, 2), f(0, 2)]
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FitResult {
    pub model: AsymptoticModel,
    /// Fitted coefficient of each model term, in order.
    pub fitted: Vec<f64>,
    /// `|fitted − expected| / |expected|` for terms with a known coefficient.
    pub relative_errors: Vec<Option<f64>>,
    pub nuisance: Vec<(Basis, f64)>,
    /// RMS of the fit residual.
    pub residual_rms: f64,
    pub condition: f64,
    pub samples: usize,
    pub log_radius_range: (f64, f64),
}

impl FitResult {
    pub fn max_relative_error(&self) -> f64 {
        self.relative_errors.iter().flatten().fold(0.0, |m, &e| f64::max(m, e))
    }

    pub fn fitted_of(&self, basis: Basis) -> Option<f64> {
        self.model.terms.iter().position(|t| t.basis == basis).map(|i| self.fitted[i])
    }
}

/// Fits `ys` against the model terms plus the nuisance terms.
pub fn fit_samples(xs: &[f64], ys: &[f64], model: &AsymptoticModel, nuisance: &[Basis]) -> Result<FitResult> {
    let bases: Vec<Basis> = model.terms.iter().map(|t| t.basis).chain(nuisance.iter().copied()).collect();
    let rows: Vec<Vec<f64>> = xs.iter().map(|&x| bases.iter().map(|b| b.eval(x)).collect()).collect();
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(CoreError::InvalidParameter("basis not finite on the fit window".into()));
    }
    let fit = least_squares(&rows, ys)?;
    if fit.condition > 1e13 {
        return Err(CoreError::IllConditioned(fit.condition));
    }
    let k = model.terms.len();
    let fitted = fit.coefficients[..k].to_vec();
    let relative_errors = model
        .terms
        .iter()
        .zip(&fitted)
        .map(|(t, f)| t.coefficient.map(|c| if c == 0.0 { f.abs() } else { ((f - c) / c).abs() }))
        .collect();
    let nuisance = nuisance.iter().copied().zip(fit.coefficients[k..].iter().copied()).collect();
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(FitResult {
        model: model.clone(),
        fitted,
        relative_errors,
        nuisance,
        residual_rms: fit.residual_norm / (xs.len() as f64).sqrt(),
        condition: fit.condition,
        samples: xs.len(),
        log_radius_range: (lo, hi),
    })
}

/// Exact samples of a model (free terms take coefficient 1) plus nuisance
/// terms with the given coefficients.
pub fn synthetic_samples(xs: &[f64], model: &AsymptoticModel, nuisance: &[(Basis, f64)]) -> Vec<f64> {
    xs.iter()
        .map(|&x| {
            let main: f64 = model.terms.iter().map(|t| t.coefficient.unwrap_or(1.0) * t.basis.eval(x)).sum();
            main + nuisance.iter().map(|(b, c)| c * b.eval(x)).sum::<f64>()
        })
        .collect()
}

fn probe(curve: &dyn RadialCurve, side: Side, s: f64) -> Probe {
    match side {
        Side::Left => Probe::FromLeft(s),
        Side::Right => Probe::FromRight(s),
        Side::Unbounded => Probe::At(curve.left() + s),
    }
}

fn offset_cap(curve: &dyn RadialCurve, side: Side) -> f64 {
    match side {
        Side::Unbounded => f64::INFINITY,
        _ => curve.right() - curve.left(),
    }
}

/// Offset at which the log-radius equals `target`, by bisection in `ln s`.
fn offset_for(curve: &dyn RadialCurve, side: Side, target: f64) -> Result<f64> {
    let cap = offset_cap(curve, side);
    let cap_ok = |s: f64| s < cap && s > 0.0;
    // The log-radius increases with the offset except on the right side.
    let decreasing = side == Side::Right;
    let g = |s: f64| -> Result<f64> {
        let v = curve.log_radius(probe(curve, side, s))? - target;
        Ok(if decreasing { -v } else { v })
    };
    let mut lo = if cap.is_finite() { 0.25 * cap } else { 1.0 };
    let mut glo = g(lo)?;
    let mut hi = lo;
    let mut ghi = glo;
    for _ in 0..400 {
        if glo <= 0.0 && ghi >= 0.0 {
            break;
        }
        if glo > 0.0 {
            hi = lo;
            ghi = glo;
            lo *= 0.5;
            glo = g(lo)?;
        } else {
            lo = hi;
            glo = ghi;
            let next = hi * 2.0;
            hi = if cap_ok(next) { next } else { 0.5 * (hi + cap) };
            ghi = g(hi)?;
        }
    }
    if !(glo <= 0.0 && ghi >= 0.0) {
        return Err(CoreError::NoBracket(format!("log radius {target} not reached")));
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi || hi / lo - 1.0 < 1e-14 {
            break;
        }
        if g(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo * hi).sqrt())
}

/// Samples `(log radius, potential)` across a window, geometrically spaced
/// in the offset.
pub fn sample_window(curve: &dyn RadialCurve, window: &Window) -> Result<(Vec<f64>, Vec<f64>)> {
    let (s1, s2) = match window.range {
        Range::Offset(lo, hi) => (lo, hi),
        Range::LogRadius(lo, hi) => {
            let a = offset_for(curve, window.side, lo)?;
            let b = offset_for(curve, window.side, hi)?;
            (a.min(b), a.max(b))
        }
    };
    if !(s1 > 0.0 && s2 > s1 && s2 < offset_cap(curve, window.side)) || window.count < 2 {
        return Err(CoreError::InvalidParameter("fit window outside the profile domain".into()));
    }
    let mut xs = Vec::with_capacity(window.count);
    let mut ys = Vec::with_capacity(window.count);
    for s in geomspace(s1, s2, window.count) {
        let (x, y) = curve.point(probe(curve, window.side, s))?;
        xs.push(x);
        ys.push(y);
    }
    Ok((xs, ys))
}

/// Samples the window and fits the model.
pub fn fit_asymptotics(curve: &dyn RadialCurve, model: &AsymptoticModel, window: &Window, nuisance: &[Basis]) -> Result<FitResult> {
    let (xs, ys) = sample_window(curve, window)?;
    fit_samples(&xs, &ys, model, nuisance)
}
