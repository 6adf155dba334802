//! Arbitrary-precision rational scalars and small integer helpers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The coefficient scalar used everywhere: always in lowest terms with a
/// positive denominator (maintained by `num_rational`).
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// True iff `den * x` is an integer.
pub fn has_denominator_dividing(x: &Rational, den: i64) -> bool {
    is_integer(&(x * rat(den)))
}

/// Largest integer `m >= 0` with `m^2 <= x`; `x` must be non-negative.
pub fn isqrt_rational_floor(x: &Rational) -> BigInt {
    assert!(!x.is_negative());
    // floor(sqrt(n/d)) = floor(sqrt(n*d)/d)
    let nd = x.numer() * x.denom();
    nd.sqrt() / x.denom()
}

pub fn squarefree(n: i64) -> bool {
    if n < 1 {
        return false;
    }
    let mut m = n;
    let mut k = 2i64;
    while k * k <= m {
        if m % (k * k) == 0 {
            return false;
        }
        if m % k == 0 {
            m /= k;
        }
        k += 1;
    }
    true
}

pub fn parse_fraction(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_detection() {
        assert!(squarefree(2));
        assert!(squarefree(30));
        assert!(!squarefree(4));
        assert!(!squarefree(12));
        assert!(!squarefree(0));
        assert!(!squarefree(-2));
    }

    #[test]
    fn rational_isqrt() {
        assert_eq!(isqrt_rational_floor(&rat(8)), BigInt::from(2));
        assert_eq!(isqrt_rational_floor(&rat(9)), BigInt::from(3));
        assert_eq!(isqrt_rational_floor(&ratio(1, 4)), BigInt::from(0));
        assert_eq!(isqrt_rational_floor(&ratio(9, 4)), BigInt::from(1));
    }

    #[test]
    fn fraction_parsing() {
        assert_eq!(parse_fraction("5/2"), Some(ratio(5, 2)));
        assert_eq!(parse_fraction("-3"), Some(rat(-3)));
        assert_eq!(parse_fraction("1/0"), None);
        assert_eq!(parse_fraction("x"), None);
    }
}
