//! Dormand–Prince 5(4) embedded Runge–Kutta integrator with adaptive steps.

use num_traits::Float;

use crate::error::{CoreError, Result};

#[derive(Clone, Copy, Debug)]
pub struct OdeOptions<F> {
    pub rtol: F,
    pub atol: F,
    pub initial_step: F,
    pub min_step: F,
    pub max_steps: usize,
}

impl<F: Float> Default for OdeOptions<F> {
    fn default() -> Self {
        OdeOptions {
            rtol: F::from(1e-11).unwrap(),
            atol: F::from(1e-13).unwrap(),
            initial_step: F::from(1e-3).unwrap(),
            min_step: F::from(1e-14).unwrap(),
            max_steps: 1_000_000,
        }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Differences between the 5th and 4th order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn k<F: Float>(x: f64) -> F {
    F::from(x).unwrap()
}

fn axpy<F: Float>(y: &[F], h: F, terms: &[(f64, &[F])]) -> Vec<F> {
    (0..y.len())
        .map(|i| {
            let s = terms.iter().fold(F::zero(), |s, (c, v)| s + k::<F>(*c) * v[i]);
            y[i] + h * s
        })
        .collect()
}

/// Integrates `y' = f(t, y)` from `(t0, y0)` and returns the state at each
/// requested output time. Outputs must be monotone in the direction of
/// integration; steps are clipped so that each output is hit exactly.
pub fn dopri5<F, G>(mut f: G, t0: F, y0: &[F], outputs: &[F], opts: &OdeOptions<F>) -> Result<Vec<Vec<F>>>
where
    F: Float,
    G: FnMut(F, &[F]) -> Vec<F>,
{
    let mut out = Vec::with_capacity(outputs.len());
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut h = opts.initial_step;
    let mut fsal = f(t, &y);
    let mut steps = 0usize;
    for &target in outputs {
        let dir = if target >= t { F::one() } else { -F::one() };
        while (target - t) * dir > F::zero() {
            steps += 1;
            if steps > opts.max_steps {
                return Err(CoreError::StepUnderflow { t: t.to_f64().unwrap_or(f64::NAN) });
            }
            let remaining = (target - t).abs();
            let mut step = h.min(remaining) * dir;
            let last = h >= remaining;
            if last {
                step = target - t;
            }
            let k1 = fsal.clone();
            let y2 = axpy(&y, step, &[(A21, &k1)]);
            let k2 = f(t + step * k(C2), &y2);
            let y3 = axpy(&y, step, &[(A31, &k1), (A32, &k2)]);
            let k3 = f(t + step * k(C3), &y3);
            let y4 = axpy(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]);
            let k4 = f(t + step * k(C4), &y4);
            let y5 = axpy(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]);
            let k5 = f(t + step * k(C5), &y5);
            let y6 = axpy(&y, step, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]);
            let k6 = f(t + step, &y6);
            let ynew = axpy(&y, step, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let k7 = f(t + step, &ynew);
            let mut err = F::zero();
            for i in 0..y.len() {
                let e = step
                    * (k::<F>(E1) * k1[i]
                        + k::<F>(E3) * k3[i]
                        + k::<F>(E4) * k4[i]
                        + k::<F>(E5) * k5[i]
                        + k::<F>(E6) * k6[i]
                        + k::<F>(E7) * k7[i]);
                let sc = opts.atol + opts.rtol * y[i].abs().max(ynew[i].abs());
                let r = e / sc;
                err = err + r * r;
            }
            let err = (err / F::from(y.len().max(1)).unwrap()).sqrt();
            let finite = ynew.iter().all(|v| v.is_finite());
            if err <= F::one() && finite {
                t = if last { target } else { t + step };
                y = ynew;
                fsal = k7;
            }
            let fac = if !finite || err.is_nan() {
                k(0.2)
            } else if err == F::zero() {
                k(5.0)
            } else {
                (k::<F>(0.9) * err.powf(k(-0.2))).max(k(0.2)).min(k(5.0))
            };
            if !(last && err <= F::one()) {
                h = step.abs() * fac;
            }
            if h < opts.min_step {
                return Err(CoreError::StepUnderflow { t: t.to_f64().unwrap_or(f64::NAN) });
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}
