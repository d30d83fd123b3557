//! Scalar traits and rational helpers.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{CoreError, Result};

/// Coefficient field for [`Poly`](crate::poly::Poly).
///
/// Implemented for `f64`, `f32` and [`BigRational`]. Only the exact field
/// gives certified gcd and root counts; the float instances exist for fast
/// evaluation of polynomials that were built exactly.
pub trait Field: Num + Signed + Clone + PartialOrd + Debug + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn to_real(&self) -> f64;
    /// True when arithmetic is exact, i.e. `is_zero` can be trusted.
    const EXACT: bool;
}

impl Field for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_real(&self) -> f64 {
        *self
    }
    const EXACT: bool = false;
}

impl Field for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
    fn to_real(&self) -> f64 {
        *self as f64
    }
    const EXACT: bool = false;
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_real(&self) -> f64 {
        ratio_to_f64(self)
    }
    const EXACT: bool = true;
}

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `p/q` as a reduced rational. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Nearest f64. Falls back to a scaled division when the parts overflow.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(r) {
        if v.is_finite() {
            return v;
        }
    }
    let (n, d) = (r.numer(), r.denom());
    let shift = n.bits().max(d.bits()) as i64 - 900;
    if shift <= 0 {
        return ToPrimitive::to_f64(n).unwrap_or(f64::NAN) / ToPrimitive::to_f64(d).unwrap_or(f64::NAN);
    }
    let ns = n >> (shift as usize);
    let ds = d >> (shift as usize);
    ToPrimitive::to_f64(&ns).unwrap_or(f64::NAN) / ToPrimitive::to_f64(&ds).unwrap_or(f64::NAN)
}

/// Exact binary value of a finite f64.
pub fn f64_to_ratio(x: f64) -> Result<BigRational> {
    BigRational::from_f64(x).ok_or_else(|| CoreError::InvalidParameter(format!("non-finite value {x}")))
}

/// Parses `p/q`, an integer, or a decimal with optional exponent
/// (`0.001`, `-1.5e-3`). Decimal input is converted exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || CoreError::InvalidParameter(format!("cannot parse '{s}' as a rational"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(CoreError::InvalidParameter(format!("zero denominator in '{s}'")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().map_err(|_| bad())? / BigInt::from(10);
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// `p/q` or `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn floor(r: &BigRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]`, found by walking the Stern–Brocot tree through continued
/// fractions.
pub fn simplest_rational_in(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi, "empty interval");
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_in(&-hi, &-lo);
    }
    let fl = floor(lo);
    let fl_r = BigRational::from_integer(fl.clone());
    if &fl_r == lo {
        return fl_r;
    }
    if fl_r.clone() + BigRational::one() <= *hi {
        return fl_r + BigRational::one();
    }
    // Same integer part: recurse on the reciprocals of the fractional parts.
    let inner = simplest_rational_in(&(hi - &fl_r).recip(), &(lo - &fl_r).recip());
    fl_r + inner.recip()
}

/// Rational approximation of `x` with `|q - x| <= tol`, smallest denominator.
pub fn approximate(x: f64, tol: f64) -> Result<BigRational> {
    let lo = f64_to_ratio(x - tol.abs())?;
    let hi = f64_to_ratio(x + tol.abs())?;
    Ok(simplest_rational_in(&lo, &hi))
}

/// Integer power of a rational (negative exponents allowed for nonzero base).
pub fn rpow(base: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7));
        assert_eq!(parse_rational("0.001").unwrap(), ratio(1, 1000));
        assert_eq!(parse_rational("-1.5e-3").unwrap(), ratio(-3, 2000));
        assert_eq!(parse_rational("2e3").unwrap(), rat(2000));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_rational_in(&ratio(3, 10), &ratio(4, 10)), ratio(1, 3));
        assert_eq!(simplest_rational_in(&ratio(-4, 10), &ratio(-3, 10)), ratio(-1, 3));
        assert_eq!(simplest_rational_in(&ratio(7, 2), &ratio(7, 2)), ratio(7, 2));
        assert_eq!(approximate(0.14285714285714285, 1e-12).unwrap(), ratio(1, 7));
    }

    #[test]
    fn huge_ratio_to_f64() {
        let big = rpow(&rat(10), 400);
        let r = BigRational::new(big.numer().clone() * 3, big.numer().clone() * 2);
        assert_eq!(ratio_to_f64(&r), 1.5);
    }
}
