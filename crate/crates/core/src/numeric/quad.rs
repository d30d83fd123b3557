//! Adaptive Gauss–Kronrod (10/21 point) quadrature.

use std::collections::BinaryHeap;

use num_traits::Float;

use crate::error::{CoreError, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_452_669,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the nodes XGK[1], XGK[3], ..., XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions<F> {
    pub abs_tol: F,
    pub rel_tol: F,
    pub max_intervals: usize,
}

impl<F: Float> Default for QuadOptions<F> {
    fn default() -> Self {
        QuadOptions {
            abs_tol: F::from(1e-13).unwrap(),
            rel_tol: F::from(1e-13).unwrap(),
            max_intervals: 4000,
        }
    }
}

impl<F: Float> QuadOptions<F> {
    pub fn tight() -> Self {
        QuadOptions { abs_tol: F::from(1e-300).unwrap(), rel_tol: F::from(4e-15).unwrap(), max_intervals: 4000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult<F> {
    pub value: F,
    pub error: F,
    pub evaluations: usize,
}

fn c<F: Float>(x: f64) -> F {
    F::from(x).unwrap()
}

/// One 21-point Kronrod rule with the embedded 10-point Gauss estimate.
fn kronrod<F: Float, G: FnMut(F) -> F>(f: &mut G, a: F, b: F) -> (F, F) {
    let half = (b - a) * c(0.5);
    let mid = (a + b) * c(0.5);
    let fc = f(mid);
    let mut resk = fc * c(WGK[10]);
    let mut resg = F::zero();
    for j in 0..10 {
        let dx = half * c(XGK[j]);
        let f1 = f(mid - dx);
        let f2 = f(mid + dx);
        resk = resk + (f1 + f2) * c(WGK[j]);
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * c(WG[j / 2]);
        }
    }
    let value = resk * half;
    let err = ((resk - resg) * half).abs();
    (value, err)
}

struct Piece<F> {
    a: F,
    b: F,
    value: F,
    error: F,
}

impl<F: Float> PartialEq for Piece<F> {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl<F: Float> Eq for Piece<F> {}
impl<F: Float> PartialOrd for Piece<F> {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl<F: Float> Ord for Piece<F> {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.error.partial_cmp(&o.error).unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// `∫_a^b f`, bisecting the interval with the largest error estimate until
/// the total estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Float, G: FnMut(F) -> F>(mut f: G, a: F, b: F, opts: &QuadOptions<F>) -> Result<QuadResult<F>> {
    if a == b {
        return Ok(QuadResult { value: F::zero(), error: F::zero(), evaluations: 0 });
    }
    let (v, e) = kronrod(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value: v, error: e });
    let mut total = v;
    let mut abs_sum = v.abs();
    let mut err = e;
    let mut evals = 21;
    loop {
        if !total.is_finite() {
            return Err(CoreError::QuadratureNonConvergence {
                lo: a.to_f64().unwrap_or(f64::NAN),
                hi: b.to_f64().unwrap_or(f64::NAN),
                error: f64::INFINITY,
            });
        }
        let roundoff = c::<F>(20.0) * F::epsilon() * abs_sum;
        let target = opts.abs_tol.max(opts.rel_tol * total.abs()).max(roundoff);
        if err <= target {
            break;
        }
        if heap.len() >= opts.max_intervals {
            return Err(CoreError::QuadratureNonConvergence {
                lo: a.to_f64().unwrap_or(f64::NAN),
                hi: b.to_f64().unwrap_or(f64::NAN),
                error: err.to_f64().unwrap_or(f64::NAN),
            });
        }
        let worst = heap.pop().expect("nonempty heap");
        let m = (worst.a + worst.b) * c(0.5);
        if m <= worst.a || m >= worst.b {
            // Interval cannot be split further in this precision.
            heap.push(Piece { error: F::zero(), ..worst });
            err = heap.iter().map(|p| p.error).fold(F::zero(), |s, x| s + x);
            if heap.iter().all(|p| p.error == F::zero()) {
                break;
            }
            continue;
        }
        let (v1, e1) = kronrod(&mut f, worst.a, m);
        let (v2, e2) = kronrod(&mut f, m, worst.b);
        evals += 42;
        total = total - worst.value + v1 + v2;
        abs_sum = abs_sum - worst.value.abs() + v1.abs() + v2.abs();
        err = err - worst.error + e1 + e2;
        heap.push(Piece { a: worst.a, b: m, value: v1, error: e1 });
        heap.push(Piece { a: m, b: worst.b, value: v2, error: e2 });
        // Resum periodically against drift from the running updates.
        if heap.len() % 64 == 0 {
            total = heap.iter().map(|p| p.value).fold(F::zero(), |s, x| s + x);
            abs_sum = heap.iter().map(|p| p.value.abs()).fold(F::zero(), |s, x| s + x);
            err = heap.iter().map(|p| p.error).fold(F::zero(), |s, x| s + x);
        }
    }
    let mut pieces: Vec<F> = heap.iter().map(|p| p.value).collect();
    pieces.sort_by(|x, y| x.abs().partial_cmp(&y.abs()).unwrap_or(std::cmp::Ordering::Equal));
    let value = pieces.into_iter().fold(F::zero(), |s, x| s + x);
    let error = heap.iter().map(|p| p.error).fold(F::zero(), |s, x| s + x);
    Ok(QuadResult { value, error, evaluations: evals })
}

/// `∫_a^∞ f` through the substitution `x = a + (1 - s)/s`.
pub fn integrate_to_infinity<F: Float, G: FnMut(F) -> F>(mut f: G, a: F, opts: &QuadOptions<F>) -> Result<QuadResult<F>> {
    let g = |s: F| {
        if s <= F::zero() {
            return F::zero();
        }
        let x = a + (F::one() - s) / s;
        f(x) / (s * s)
    };
    integrate(g, F::zero(), F::one(), opts)
}

/// `∫_{lo}^{hi} g(s) ds` for `0 < lo < hi` by integrating `g(e^w) e^w` in
/// `w = log s`; suited to integrands with a `1/s`-type singularity at zero.
pub fn integrate_log<F: Float, G: FnMut(F) -> F>(mut g: G, lo: F, hi: F, opts: &QuadOptions<F>) -> Result<QuadResult<F>> {
    let h = |w: F| {
        let s = w.exp();
        g(s) * s
    };
    integrate(h, lo.ln(), hi.ln(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x: f64| x.powi(7) - 3.0 * x, 0.0, 2.0, &QuadOptions::default()).unwrap();
        assert!((r.value - (32.0 - 6.0)).abs() < 1e-13);
    }

    #[test]
    fn singular_log_integrand() {
        let r = integrate(|x: f64| x.sqrt().ln(), 0.0, 1.0, &QuadOptions::default()).unwrap();
        assert!((r.value + 0.5).abs() < 1e-11, "{}", r.value);
    }

    #[test]
    fn semi_infinite() {
        let r = integrate_to_infinity(|x: f64| 1.0 / (1.0 + x * x), 0.0, &QuadOptions::default()).unwrap();
        assert!((r.value - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn log_substitution() {
        let r = integrate_log(|s: f64| 1.0 / s, 1e-10, 1.0, &QuadOptions::tight()).unwrap();
        assert!((r.value - 10.0 * 10f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn works_in_f32() {
        let r = integrate(|x: f32| x.cos(), 0.0, 1.0, &QuadOptions { abs_tol: 1e-6, rel_tol: 1e-6, max_intervals: 100 }).unwrap();
        assert!((r.value - 1f32.sin()).abs() < 1e-5);
    }
}
