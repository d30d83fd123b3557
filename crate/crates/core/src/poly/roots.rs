//! Real-root isolation over the rationals: Sturm sequences, square-free
//! decomposition and bisection refinement.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Poly;
use crate::error::{CoreError, Result};
use crate::scalar::{ratio_to_f64, Field};

type Q = BigRational;
type PQ = Poly<Q>;

/// A half-open interval `(lo, hi]` holding exactly one distinct real root,
/// or the single point `lo == hi` when the root is rational and was hit.
#[derive(Clone, Debug, PartialEq)]
pub struct RootInterval {
    pub lo: Q,
    pub hi: Q,
    pub multiplicity: usize,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / Q::from_i64(2)
    }

    pub fn approx(&self) -> f64 {
        ratio_to_f64(&self.midpoint())
    }

    /// The exact root when the interval is a point.
    pub fn exact(&self) -> Option<&Q> {
        self.is_exact().then_some(&self.lo)
    }
}

/// Yun's algorithm. Returns monic square-free factors paired with their
/// multiplicity; constants are dropped.
pub fn square_free(p: &PQ) -> Vec<(PQ, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = PQ::gcd(p, &dp);
    let mut b = p.div_rem(&a0).0;
    let c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = PQ::gcd(&b, &d);
        let nb = b.div_rem(&a).0;
        let nc = d.div_rem(&a).0;
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        d = &nc - &nb.derivative();
        b = nb;
        i += 1;
    }
    out
}

/// `p / gcd(p, p')`, monic.
pub fn square_free_part(p: &PQ) -> PQ {
    if p.is_zero() {
        return PQ::zero();
    }
    let g = PQ::gcd(p, &p.derivative());
    p.div_rem(&g).0.monic()
}

/// Canonical Sturm chain `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &PQ) -> Vec<PQ> {
    let mut seq = vec![p.clone()];
    if p.is_zero() {
        return seq;
    }
    let mut cur = p.derivative();
    while !cur.is_zero() {
        seq.push(cur.clone());
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        cur = -r;
    }
    seq
}

fn sign_changes(seq: &[PQ], x: &Q) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// Distinct roots of a square-free polynomial in `(lo, hi]`.
fn sturm_count(seq: &[PQ], lo: &Q, hi: &Q) -> usize {
    sign_changes(seq, lo).saturating_sub(sign_changes(seq, hi))
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn count_distinct_roots(p: &PQ, lo: &Q, hi: &Q) -> usize {
    if p.is_zero() || lo >= hi {
        return 0;
    }
    sturm_count(&sturm_sequence(&square_free_part(p)), lo, hi)
}

/// `1 + max |a_i / a_n|`; every complex root has modulus below it.
pub fn cauchy_bound(p: &PQ) -> Q {
    let lead = p.leading();
    let mut m = Q::zero();
    if let Some(d) = p.degree() {
        for c in &p.coeffs()[..d] {
            let v = (c / &lead).abs();
            if v > m {
                m = v;
            }
        }
    }
    m + Q::one()
}

struct Isolating {
    iv: RootInterval,
    factor: PQ,
    seq: Vec<PQ>,
}

impl Isolating {
    /// Halve the interval, keeping the half that holds the root.
    fn halve(&mut self) {
        if self.iv.is_exact() {
            return;
        }
        let mid = self.iv.midpoint();
        if self.factor.eval(&mid).is_zero() {
            self.iv.lo = mid.clone();
            self.iv.hi = mid;
        } else if sturm_count(&self.seq, &self.iv.lo, &mid) == 1 {
            self.iv.hi = mid;
        } else {
            self.iv.lo = mid;
        }
    }

    fn snap_exact(&mut self) {
        if self.iv.is_exact() {
            return;
        }
        if self.factor.degree() == Some(1) {
            let r = -self.factor.coeff(0) / self.factor.coeff(1);
            self.iv.lo = r.clone();
            self.iv.hi = r;
        } else if self.factor.eval(&self.iv.hi).is_zero() {
            self.iv.lo = self.iv.hi.clone();
        }
    }
}

fn overlaps(a: &RootInterval, b: &RootInterval) -> bool {
    // a sorted before b; both are nonempty half-open intervals or points.
    if a.is_exact() && b.is_exact() {
        return a.lo == b.lo;
    }
    if b.is_exact() {
        return a.lo < b.lo && b.lo <= a.hi;
    }
    b.lo < a.hi
}

/// Isolates every distinct real root of `p` in `(lo, hi]`, sorted by
/// position, with multiplicities from the square-free decomposition.
pub fn isolate_real_roots(p: &PQ, lo: &Q, hi: &Q) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(CoreError::InvalidParameter("root isolation of the zero polynomial".into()));
    }
    if lo >= hi {
        return Err(CoreError::InvalidParameter("empty root isolation interval".into()));
    }
    let mut found: Vec<Isolating> = Vec::new();
    for (factor, mult) in square_free(p) {
        let seq = sturm_sequence(&factor);
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((l, h)) = stack.pop() {
            let k = sturm_count(&seq, &l, &h);
            if k == 0 {
                continue;
            }
            if k == 1 {
                let mut it = Isolating {
                    iv: RootInterval { lo: l, hi: h, multiplicity: mult },
                    factor: factor.clone(),
                    seq: seq.clone(),
                };
                it.snap_exact();
                found.push(it);
                continue;
            }
            let mid = (&l + &h) / Q::from_i64(2);
            stack.push((l, mid.clone()));
            stack.push((mid, h));
        }
    }
    // Roots of different factors are distinct; shrink until disjoint.
    loop {
        found.sort_by(|a, b| a.iv.lo.cmp(&b.iv.lo).then(a.iv.hi.cmp(&b.iv.hi)));
        let clash = (1..found.len()).find(|&i| overlaps(&found[i - 1].iv, &found[i].iv));
        match clash {
            None => break,
            Some(i) => {
                found[i - 1].halve();
                found[i].halve();
            }
        }
    }
    Ok(found.into_iter().map(|f| f.iv).collect())
}

/// Shrinks an isolating interval of a root of `p` below `width`.
pub fn refine_root(p: &PQ, iv: &RootInterval, width: &Q) -> RootInterval {
    let factor = square_free_part(p);
    let mut it = Isolating { iv: iv.clone(), seq: sturm_sequence(&factor), factor };
    it.snap_exact();
    while !it.iv.is_exact() && &it.iv.width() > width {
        it.halve();
    }
    it.iv
}

/// True iff `p > 0` on the open interval `(lo, hi)`; `hi = None` means `+∞`.
/// A root exactly at `hi` is permitted.
pub fn positive_on(p: &PQ, lo: &Q, hi: Option<&Q>) -> Result<bool> {
    if p.is_zero() {
        return Ok(false);
    }
    let top = match hi {
        Some(h) => h.clone(),
        None => {
            let r = cauchy_bound(p) * Q::from_i64(2) + Q::one();
            if &r > lo {
                r
            } else {
                lo + Q::one()
            }
        }
    };
    if &top <= lo {
        return Err(CoreError::InvalidParameter("empty positivity interval".into()));
    }
    let roots = isolate_real_roots(p, lo, &top)?;
    let interior = roots.iter().any(|r| !(hi.is_some() && r.is_exact() && r.lo == top));
    if interior {
        return Ok(false);
    }
    let mid = (lo + &top) / Q::from_i64(2);
    Ok(p.eval(&mid).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn pq(v: &[i64]) -> PQ {
        Poly::new(v.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn double_root_found_negative_root_excluded() {
        let p = pq(&[3, -5, 1, 1]);
        let r = isolate_real_roots(&p, &rat(0), &rat(10)).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 2);
        assert_eq!(r[0].exact(), Some(&rat(1)));
    }

    #[test]
    fn simple_root_of_c_positive_profile() {
        // (1/6)(x−1)²(4−x)
        let p = pq(&[4, -9, 6, -1]).scale(&ratio(1, 6));
        let r = isolate_real_roots(&p, &rat(1), &rat(100)).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 1);
        let t = refine_root(&p, &r[0], &ratio(1, 1_000_000));
        assert!((t.approx() - 4.0).abs() < 1e-6);
    }

    #[test]
    fn no_real_roots() {
        let r = isolate_real_roots(&pq(&[1, 0, 1]), &rat(-10), &rat(10)).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn irrational_roots_refine() {
        let p = pq(&[-2, 0, 1]);
        let r = isolate_real_roots(&p, &rat(-5), &rat(5)).unwrap();
        assert_eq!(r.len(), 2);
        let w = ratio(1, 1 << 40);
        let s = refine_root(&p, &r[1], &w);
        assert!((s.approx() - 2f64.sqrt()).abs() < 1e-12);
        assert!(s.lo < s.hi);
    }

    #[test]
    fn neighbouring_factors_are_separated() {
        // (x−1)²(x−1−1/1000)(x−2)³
        let a = pq(&[-1, 1]).pow(2);
        let b = PQ::linear(-ratio(1001, 1000), rat(1));
        let c = pq(&[-2, 1]).pow(3);
        let p = &(&a * &b) * &c;
        let r = isolate_real_roots(&p, &rat(0), &rat(3)).unwrap();
        let mults: Vec<usize> = r.iter().map(|x| x.multiplicity).collect();
        assert_eq!(mults, vec![2, 1, 3]);
        for w in r.windows(2) {
            assert!(w[0].hi <= w[1].lo);
        }
    }

    #[test]
    fn yun_factors() {
        let p = &(&pq(&[-1, 1]).pow(2) * &pq(&[3, 1])) * &pq(&[1, 0, 1]);
        let sf = square_free(&p);
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0], (&pq(&[3, 1]) * &pq(&[1, 0, 1]), 1));
        assert_eq!(sf[1], (pq(&[-1, 1]), 2));
    }

    #[test]
    fn positivity() {
        let f = pq(&[3, -5, 1, 1]);
        assert!(positive_on(&f, &rat(1), None).unwrap());
        let g = pq(&[4, -9, 6, -1]);
        assert!(positive_on(&g, &rat(1), Some(&rat(4))).unwrap());
        assert!(!positive_on(&g, &rat(1), Some(&rat(5))).unwrap());
        assert!(!positive_on(&g, &rat(1), None).unwrap());
    }
}
