//! Completeness from the growth of radial length integrals.
//!
//! `L(ε)` is the length from a fixed interior point to the point at offset
//! `ε` from the chosen end (or out to `1/ε` on an unbounded end), for `ε` in
//! a geometric sequence. Increments of a convergent integral shrink
//! geometrically; those of a divergent one do not.

use serde::{Deserialize, Serialize};

use super::{Probe, RadialCurve};
use crate::error::Result;
use crate::numeric::{geomspace, least_squares};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum End {
    NearA,
    FarEnd,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompletenessResult {
    pub divergent: bool,
    /// `C` in the fit `L(ε) ≈ A − C log ε`.
    pub log_rate: f64,
    /// Largest absolute deviation from that fit.
    pub fit_residual: f64,
    /// Median ratio of successive increments of `L`.
    pub increment_ratio: f64,
    /// Last computed length when the integral converges.
    pub finite_limit: Option<f64>,
    pub eps: Vec<f64>,
    pub lengths: Vec<f64>,
}

const POINTS: usize = 11;

pub fn completeness_probe(curve: &dyn RadialCurve, end: End) -> Result<CompletenessResult> {
    let (a, b) = (curve.left(), curve.right());
    let s_ref = if b.is_finite() { 0.5 * (b - a) } else { a.max(1.0) };
    let reference = Probe::FromLeft(s_ref);
    // Decreasing ε, so the integration range grows along the sequence.
    let eps: Vec<f64> = geomspace(1e-5, 1e-10, POINTS);
    let mut lengths = Vec::with_capacity(POINTS);
    for &e in &eps {
        let l = match (end, b.is_finite()) {
            (End::NearA, _) => curve.length(Probe::FromLeft(e), reference)?,
            (End::FarEnd, true) => curve.length(reference, Probe::FromRight(e))?,
            (End::FarEnd, false) => curve.length(reference, Probe::At(1.0 / e))?,
        };
        lengths.push(l.abs());
    }
    let inc: Vec<f64> = lengths.windows(2).map(|w| w[1] - w[0]).collect();
    let mut ratios: Vec<f64> = inc.windows(2).filter(|w| w[0] != 0.0).map(|w| w[1] / w[0]).collect();
    ratios.sort_by(f64::total_cmp);
    let increment_ratio = if ratios.is_empty() { 0.0 } else { ratios[ratios.len() / 2] };
    let divergent = increment_ratio >= 0.9;
    let rows: Vec<Vec<f64>> = eps.iter().map(|e| vec![1.0, -e.ln()]).collect();
    let fit = least_squares(&rows, &lengths)?;
    let fit_residual = rows
        .iter()
        .zip(&lengths)
        .map(|(r, l)| (fit.coefficients[0] * r[0] + fit.coefficients[1] * r[1] - l).abs())
        .fold(0.0, f64::max);
    Ok(CompletenessResult {
        divergent,
        log_rate: fit.coefficients[1],
        fit_residual,
        increment_ratio,
        finite_limit: (!divergent).then(|| *lengths.last().expect("nonempty")),
        eps,
        lengths,
    })
}
