//! Arbitrary-precision rational scalars and the small combinatorial tables
//! (factorials, binomials, double factorials) the basis formulas consume.
//!
//! `BigRational` already maintains the invariants we need: fractions are
//! stored reduced with a positive denominator.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` (decimal digits with optional sign) exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in rational '{s}'")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in rational '{s}'")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in rational '{s}'")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical fraction string: `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact rational to `f64`, for the floating-point evaluation paths.
pub fn to_f64(r: &Rational) -> f64 {
    num::ToPrimitive::to_f64(r).expect("rational out of f64 range")
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient; zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k) as u64;
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// Multinomial coefficient `(Σparts)! / Π parts!`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total: i64 = 0;
    for &p in parts {
        total += p as i64;
        acc *= binomial(total, p as i64);
    }
    acc
}

/// Double factorial with the standard convention `(-1)!! = 1`, `0!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    if n <= 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

/// Audits that a rational is in canonical form (reduced, positive
/// denominator). `BigRational` guarantees this; the audit keeps the
/// invariant observable for the canonicalization test pass.
pub fn is_canonical(r: &Rational) -> bool {
    r.denom().sign() == Sign::Plus && num::Integer::gcd(r.numer(), r.denom()).is_one()
}

pub fn rational_abs_f64(r: &Rational) -> f64 {
    to_f64(&r.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/2", "0", "12", "-5"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
            assert!(is_canonical(&r));
        }
        assert_eq!(format_rational(&parse_rational("4/8").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(double_factorial(6), BigInt::from(48));
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
    }
}
