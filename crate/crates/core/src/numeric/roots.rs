//! Scalar bracketing and bisection.

use num_traits::Float;

use crate::error::{CoreError, Result};

/// Bisection on a sign change of `f` over `[lo, hi]`, stopping once the
/// bracket is narrower than `tol` (or cannot shrink further).
pub fn bisect<F: Float, G: FnMut(F) -> F>(mut f: G, mut lo: F, mut hi: F, tol: F) -> Result<F> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == F::zero() {
        return Ok(lo);
    }
    if fhi == F::zero() {
        return Ok(hi);
    }
    if (flo > F::zero()) == (fhi > F::zero()) {
        return Err(CoreError::NoBracket(format!(
            "no sign change on [{}, {}]",
            lo.to_f64().unwrap_or(f64::NAN),
            hi.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let two = F::one() + F::one();
    for _ in 0..400 {
        let mid = (lo + hi) / two;
        if (hi - lo).abs() <= tol || mid <= lo.min(hi) || mid >= lo.max(hi) {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == F::zero() {
            return Ok(mid);
        }
        if (fm > F::zero()) == (flo > F::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / two)
}

/// Adjacent grid pairs across which `f` changes sign (NaN values skipped).
pub fn scan_brackets<F: Float, G: FnMut(F) -> F>(mut f: G, grid: &[F]) -> Vec<(F, F)> {
    let vals: Vec<F> = grid.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for i in 1..grid.len() {
        let (a, b) = (vals[i - 1], vals[i]);
        if a.is_nan() || b.is_nan() {
            continue;
        }
        if a == F::zero() || (b != F::zero() && (a > F::zero()) != (b > F::zero())) {
            out.push((grid[i - 1], grid[i]));
        }
    }
    out
}

/// `count` points from `start` to `end` inclusive, geometrically spaced.
pub fn geomspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let (l0, l1) = (start.ln(), end.ln());
    (0..count).map(|i| (l0 + (l1 - l0) * i as f64 / (count - 1) as f64).exp()).collect()
}

/// `count` points from `start` to `end` inclusive, evenly spaced.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    (0..count).map(|i| start + (end - start) * i as f64 / (count - 1) as f64).collect()
}

/// Running trapezoid integral of samples `ys` at abscissae `xs`.
pub fn cumulative_trapezoid(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(xs.len());
    let mut acc = 0.0;
    for i in 0..xs.len() {
        if i > 0 {
            acc += 0.5 * (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]);
        }
        out.push(acc);
    }
    out
}
