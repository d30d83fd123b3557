use super::Poly;
use crate::error::{CoreError, Result};
use crate::scalar::Field;

/// Quotient `num / den` reduced so that `gcd(num, den) = 1` and `den` is monic.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RatFunc<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(CoreError::InvalidParameter("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFunc { num, den: Poly::one() });
        }
        let g = Poly::gcd(&num, &den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let l = den.leading();
        Ok(RatFunc { num: num.scale(&(K::one() / l.clone())), den: den.monic() })
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &K) -> Option<K> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        Self::new(n, d).expect("square of a nonzero polynomial")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::PolyQ;

    fn pq(v: &[i64]) -> PolyQ {
        Poly::new(v.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn reduces_common_factor() {
        let f = RatFunc::new(pq(&[-1, 0, 1]), pq(&[-2, 2])).unwrap();
        assert_eq!(f.num(), &pq(&[1, 1]).scale(&crate::scalar::ratio(1, 2)));
        assert_eq!(f.den(), &PolyQ::one());
        assert!(RatFunc::new(pq(&[1]), PolyQ::zero()).is_err());
    }

    #[test]
    fn derivative_quotient_rule() {
        let f = RatFunc::new(pq(&[1]), pq(&[0, 1])).unwrap();
        let d = f.derivative();
        assert_eq!(d.eval(&rat(2)), Some(crate::scalar::ratio(-1, 4)));
        assert_eq!(f.eval(&rat(0)), None);
    }
}
