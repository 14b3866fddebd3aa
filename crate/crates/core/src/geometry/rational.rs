//! Exact rational scalars and their `"num/den"` wire format.

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{BigUint, One, Signed, Zero};
use thiserror::Error;

/// Exact scalar used everywhere: arbitrary precision, always reduced,
/// denominator always positive.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part in rational literal `{0}`")]
    BadInteger(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
}

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `"num/den"` string, e.g. `-3/7`. Integers keep the `/1` suffix
/// so the format round-trips without a special case.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn rat_from_string(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer: BigInt = num_str
        .trim()
        .parse()
        .map_err(|_| RatParseError::BadInteger(s.to_string()))?;
    let denom: BigInt = den_str
        .trim()
        .parse()
        .map_err(|_| RatParseError::BadInteger(s.to_string()))?;
    if denom.is_zero() {
        return Err(RatParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(numer, denom))
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Binomial coefficient over signed arguments; zero when `k < 0`, `n < 0`
/// or `k > n`.
pub fn binomial_signed(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        BigUint::zero()
    } else {
        binomial(n as u64, k as u64)
    }
}

/// Largest rational `t = m / scale` with `t^degree <= r`. Requires `r >= 0`.
/// Used to round roots downward so derived bounds stay certified lower bounds.
pub fn nth_root_lower(r: &Rat, degree: u32, scale: u64) -> Rat {
    assert!(!r.is_negative(), "nth_root_lower needs a non-negative input");
    assert!(degree >= 1);
    let scale_int = BigInt::from(scale);
    // floor(numer * scale^degree / denom), then take the integer floor root.
    let scaled = r.numer() * scale_int.pow(degree) / r.denom();
    let (sign, mag) = scaled.into_parts();
    debug_assert_ne!(sign, Sign::Minus);
    let root = mag.nth_root(degree);
    Rat::new(BigInt::from(root), BigInt::from(scale))
}

/// Smallest integer `>= r`.
pub fn ceil_to_i64(r: &Rat) -> i64 {
    let c = r.ceil();
    let i = c.to_integer();
    i64::try_from(i).expect("ceil fits in i64 at desk scale")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for (n, d) in [(0, 1), (-3, 7), (22, 7), (5, 1), (-1, 2)] {
            let r = ratio(n, d);
            assert_eq!(rat_from_string(&rat_to_string(&r)).unwrap(), r);
        }
        assert_eq!(rat_from_string("4").unwrap(), rat(4));
        assert_eq!(rat_from_string(" -6/4 ").unwrap(), ratio(-3, 2));
    }

    #[test]
    fn string_rejects_garbage() {
        assert!(rat_from_string("").is_err());
        assert!(rat_from_string("a/b").is_err());
        assert!(rat_from_string("1/0").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(4, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial_signed(1, -2), BigUint::zero());
        assert_eq!(binomial_signed(-1, 0), BigUint::zero());
    }

    #[test]
    fn root_rounds_down() {
        let r = ratio(1, 108);
        let t = nth_root_lower(&r, 1, 1_000_000);
        assert!(t <= r);
        assert!(&r - &t < ratio(1, 1_000_000));

        let two = rat(2);
        let s = nth_root_lower(&two, 2, 1_000_000_000);
        assert!(&s * &s <= two);
        let bump = &s + ratio(1, 1_000_000_000);
        assert!(&bump * &bump > two);
    }
}
