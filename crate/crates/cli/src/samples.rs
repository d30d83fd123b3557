//! Sampled tables of profiles.

use csck_core::flat::FlatProfile;
use csck_core::momentum::BundleProfile;
use csck_core::numeric::linspace;

use crate::error::{CliResult, Failure};
use crate::output::Table;

/// Interior of the `t` domain intersected with `[−6, 6]`.
pub fn default_t_range(p: &FlatProfile) -> (f64, f64) {
    let (lo, hi) = p.t_range();
    let lo = if lo.is_finite() { (lo + 0.01).max(-6.0) } else { -6.0 };
    let hi = if hi.is_finite() { (hi - 0.01).min(6.0) } else { 6.0 };
    (lo, hi)
}

/// `[a, b]`, or `[a, a + 10·max(a, 1)]` on an unbounded interval.
pub fn default_tau_range(p: &BundleProfile) -> (f64, f64) {
    let (a, b) = (p.a(), p.b_approx());
    (a, if b.is_finite() { b } else { a + 10.0 * a.max(1.0) })
}

fn check_count(count: usize) -> CliResult<()> {
    if count < 2 {
        return Err(Failure::input("need at least 2 samples"));
    }
    Ok(())
}

/// `(t, φ, u, det g)` on `count` evenly spaced points of `[lo, hi]`.
pub fn flat_table(p: &FlatProfile, lo: f64, hi: f64, count: usize) -> CliResult<Table> {
    check_count(count)?;
    if !(lo < hi) {
        return Err(Failure::input(format!("empty t range [{lo}, {hi}]")));
    }
    let grid = linspace(lo, hi, count);
    let mut table = Table::new(&["t", "phi", "u", "det_g"]);
    for s in p.sample_potential(&grid)? {
        table.rows.push(vec![s.t, s.phi, s.u, s.det_g]);
    }
    Ok(table)
}

/// `(τ, φ)` on `count` evenly spaced points of `[lo, hi]`.
pub fn momentum_table(p: &BundleProfile, lo: f64, hi: f64, count: usize) -> CliResult<Table> {
    check_count(count)?;
    let (a, b) = (p.a(), p.b_approx());
    if !(lo < hi) || lo < a || hi > b {
        return Err(Failure::input(format!("tau range [{lo}, {hi}] is not inside [{a}, {b}]")));
    }
    let mut table = Table::new(&["tau", "phi"]);
    for tau in linspace(lo, hi, count) {
        table.rows.push(vec![tau, p.phi_value(tau)]);
    }
    Ok(table)
}
