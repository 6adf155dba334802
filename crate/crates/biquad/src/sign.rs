//! Certified sign decisions via adaptive rational interval arithmetic.
//!
//! Every total-positivity test in the library funnels through
//! [`exact_sign`]: square roots are bracketed by dyadic rationals of
//! increasing precision until the interval around the evaluated element
//! excludes zero. Linear independence of `1, sqrt(p), sqrt(q), sqrt(r)`
//! over the rationals guarantees termination for nonzero elements.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::element::BiquadElement;
use crate::rat::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Outcome of an exact sign decision together with the interval precision
/// (fractional bits of the square-root brackets) that settled it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignCertificate {
    pub value_sign: Sign,
    pub interval_precision_bits: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TotalCmp {
    Less,
    Equal,
    Greater,
    Incomparable,
}

const INITIAL_BITS: u32 = 64;

thread_local! {
    static SQRT_CACHE: RefCell<HashMap<(i64, u32), (Rational, Rational)>> =
        RefCell::new(HashMap::new());
}

/// Dyadic bracket `lo <= sqrt(k) < hi` with `hi - lo = 2^-bits`.
fn sqrt_bounds(k: i64, bits: u32) -> (Rational, Rational) {
    SQRT_CACHE.with(|cache| {
        if let Some(b) = cache.borrow().get(&(k, bits)) {
            return b.clone();
        }
        let n = BigInt::from(k) << (2 * bits as usize);
        let s = n.sqrt();
        let den: BigInt = BigInt::one() << (bits as usize);
        let lo = Rational::new(s.clone(), den.clone());
        let hi = Rational::new(s + 1, den);
        cache
            .borrow_mut()
            .insert((k, bits), (lo.clone(), hi.clone()));
        (lo, hi)
    })
}

fn term_bounds(coef: &Rational, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    if coef.is_negative() {
        (coef * hi, coef * lo)
    } else {
        (coef * lo, coef * hi)
    }
}

/// Exact sign of the real value `sigma_1(x)`.
pub fn exact_sign(x: &BiquadElement) -> SignCertificate {
    if x.is_zero() {
        return SignCertificate {
            value_sign: Sign::Zero,
            interval_precision_bits: 0,
        };
    }
    let [a, b, c, d] = x.coords();
    if x.is_rational() {
        let s = if a.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        };
        return SignCertificate {
            value_sign: s,
            interval_precision_bits: 0,
        };
    }
    let f = x.field();
    let mut bits = INITIAL_BITS;
    loop {
        let mut lo = a.clone();
        let mut hi = a.clone();
        for (coef, k) in [(b, f.p), (c, f.q), (d, f.r)] {
            if coef.is_zero() {
                continue;
            }
            let (slo, shi) = sqrt_bounds(k, bits);
            let (tlo, thi) = term_bounds(coef, &slo, &shi);
            lo += tlo;
            hi += thi;
        }
        if lo.is_positive() {
            return SignCertificate {
                value_sign: Sign::Positive,
                interval_precision_bits: bits,
            };
        }
        if hi.is_negative() {
            return SignCertificate {
                value_sign: Sign::Negative,
                interval_precision_bits: bits,
            };
        }
        bits *= 2;
    }
}

pub fn sign_of(x: &BiquadElement) -> Sign {
    exact_sign(x).value_sign
}

/// True iff every embedding of `x` is positive.
pub fn is_totally_positive(x: &BiquadElement) -> bool {
    (1..=4).all(|k| sign_of(&x.embed(k)) == Sign::Positive)
}

/// True iff `x` is zero or totally positive (the non-strict order).
pub fn is_totally_nonnegative(x: &BiquadElement) -> bool {
    x.is_zero() || is_totally_positive(x)
}

/// Compare in the total-positivity partial order.
pub fn cmp_total(x: &BiquadElement, y: &BiquadElement) -> TotalCmp {
    let d = x - y;
    if d.is_zero() {
        TotalCmp::Equal
    } else if is_totally_positive(&d) {
        TotalCmp::Greater
    } else if is_totally_positive(&(-&d)) {
        TotalCmp::Less
    } else {
        TotalCmp::Incomparable
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::rat::{rat, ratio};
    use std::sync::Arc;

    fn f23() -> Arc<crate::field::Field> {
        make_field(2, 3).unwrap()
    }

    fn mu() -> BiquadElement {
        BiquadElement::new(f23(), rat(4), ratio(5, 2), rat(2), ratio(3, 2))
    }

    #[test]
    fn zero_sign() {
        let f = f23();
        assert_eq!(
            exact_sign(&BiquadElement::zero(&f)).value_sign,
            Sign::Zero
        );
    }

    #[test]
    fn negative_nested_radical() {
        // -1 + (1/2)sqrt2 - (1/2)sqrt6 is about -1.52
        let f = f23();
        let x = BiquadElement::new(f, rat(-1), ratio(1, 2), rat(0), ratio(-1, 2));
        assert_eq!(sign_of(&x), Sign::Negative);
    }

    #[test]
    fn mu_is_totally_positive() {
        let m = mu();
        for k in 1..=4 {
            assert_eq!(sign_of(&m.embed(k)), Sign::Positive);
        }
        assert!(is_totally_positive(&m));
    }

    #[test]
    fn one_plus_sqrt2_not_totally_positive() {
        let f = f23();
        let x = BiquadElement::new(f, rat(1), rat(1), rat(0), rat(0));
        assert!(!is_totally_positive(&x));
    }

    #[test]
    fn sigma_totally_positive() {
        let f = f23();
        let sigma = BiquadElement::new(f.clone(), rat(3), rat(0), rat(0), rat(1));
        assert!(is_totally_positive(&sigma));
        assert_eq!(
            cmp_total(&sigma, &BiquadElement::zero(&f)),
            TotalCmp::Greater
        );
    }

    #[test]
    fn incomparable_pair() {
        let f = f23();
        let x = BiquadElement::new(f.clone(), rat(3), rat(1), rat(0), rat(0));
        let y = BiquadElement::new(f, rat(3), rat(-1), rat(0), rat(0));
        assert_eq!(cmp_total(&x, &y), TotalCmp::Incomparable);
        assert_eq!(cmp_total(&x, &x), TotalCmp::Equal);
    }

    #[test]
    fn tight_sign_needs_more_precision() {
        // 170 - 39*sqrt(19) is about 0.0059
        let f = make_field(6, 19).unwrap();
        let x = BiquadElement::new(f, rat(170), rat(0), rat(-39), rat(0));
        assert_eq!(sign_of(&x), Sign::Positive);
    }
}
