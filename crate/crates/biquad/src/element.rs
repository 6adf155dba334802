//! Elements `a + b*sqrt(p) + c*sqrt(q) + d*sqrt(r)` of a biquadratic field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::field::Field;
use crate::rat::{is_integer, rat, Rational};

/// An element of `Q(sqrt(p), sqrt(q))` with rational coordinates over the
/// radical basis `(1, sqrt(p), sqrt(q), sqrt(r))`.
#[derive(Clone)]
pub struct BiquadElement {
    field: Arc<Field>,
    coords: [Rational; 4],
}

impl PartialEq for BiquadElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}
impl Eq for BiquadElement {}

impl PartialOrd for BiquadElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on `(a, b, c, d)`; used for canonical sorting and
/// deduplication, not for the total-positivity partial order.
impl Ord for BiquadElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for BiquadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BiquadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let radicals = [0i64, self.field.p, self.field.q, self.field.r];
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "sqrt({})", radicals[i])?;
            } else {
                write!(f, "{}*sqrt({})", mag, radicals[i])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl BiquadElement {
    pub fn new(field: Arc<Field>, a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        BiquadElement {
            field,
            coords: [a, b, c, d],
        }
    }

    pub fn from_coords(field: &Arc<Field>, coords: [Rational; 4]) -> Self {
        BiquadElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn from_int(field: &Arc<Field>, n: i64) -> Self {
        Self::new(field.clone(), rat(n), rat(0), rat(0), rat(0))
    }

    pub fn zero(field: &Arc<Field>) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Arc<Field>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "elements belong to different fields"
        );
    }

    /// The `k`-th embedding, `k` in 1..=4, applying the sign pattern to the
    /// coordinates of `sqrt(p)`, `sqrt(q)`, `sqrt(r)`.
    pub fn embed(&self, k: usize) -> Self {
        let [a, b, c, d] = self.coords.clone();
        let (sb, sc, sd) = match k {
            1 => (1, 1, 1),
            2 => (-1, 1, -1),
            3 => (1, -1, -1),
            4 => (-1, -1, 1),
            _ => panic!("embedding index must be 1..=4"),
        };
        let sgn = |s: i64, x: Rational| if s < 0 { -x } else { x };
        BiquadElement {
            field: self.field.clone(),
            coords: [a, sgn(sb, b), sgn(sc, c), sgn(sd, d)],
        }
    }

    pub fn trace(&self) -> Rational {
        &self.coords[0] * rat(4)
    }

    /// Product of the four embeddings; always a rational number.
    pub fn norm(&self) -> Rational {
        let prod = &(&self.embed(1) * &self.embed(2)) * &(&self.embed(3) * &self.embed(4));
        debug_assert!(prod.is_rational());
        prod.coords[0].clone()
    }

    /// Coordinates in the integral basis of the ring of integers.
    pub fn basis_coords(&self) -> [Rational; 4] {
        self.field.to_basis_coords(&self.coords)
    }

    /// True iff the element is an integer combination of the integral basis.
    pub fn is_integral(&self) -> bool {
        self.basis_coords().iter().all(is_integer)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/x = s2(x) s3(x) s4(x) / N(x)
        let n = rhs.norm();
        let adj = &(&rhs.embed(2) * &rhs.embed(3)) * &rhs.embed(4);
        Ok(self * &adj.scale(&n.recip()))
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        Self::one(&self.field).checked_div(self)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        BiquadElement {
            field: self.field.clone(),
            coords: [
                &self.coords[0] * s,
                &self.coords[1] * s,
                &self.coords[2] * s,
                &self.coords[3] * s,
            ],
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, e: i64) -> Result<Self, Error> {
        let mut base = if e < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        Ok(acc)
    }

    /// The Galois conjugate of an element lying in a quadratic subfield:
    /// flips the sign of every radical coordinate. Only meaningful when at
    /// most one of b, c, d is nonzero.
    pub fn quad_conjugate(&self) -> Self {
        let [a, b, c, d] = self.coords.clone();
        BiquadElement {
            field: self.field.clone(),
            coords: [a, -b, -c, -d],
        }
    }
}

impl Neg for &BiquadElement {
    type Output = BiquadElement;
    fn neg(self) -> BiquadElement {
        self.scale(&rat(-1))
    }
}

impl Add for &BiquadElement {
    type Output = BiquadElement;
    fn add(self, rhs: &BiquadElement) -> BiquadElement {
        self.assert_same_field(rhs);
        BiquadElement {
            field: self.field.clone(),
            coords: [
                &self.coords[0] + &rhs.coords[0],
                &self.coords[1] + &rhs.coords[1],
                &self.coords[2] + &rhs.coords[2],
                &self.coords[3] + &rhs.coords[3],
            ],
        }
    }
}

impl Sub for &BiquadElement {
    type Output = BiquadElement;
    fn sub(self, rhs: &BiquadElement) -> BiquadElement {
        self + &(-rhs)
    }
}

impl Mul for &BiquadElement {
    type Output = BiquadElement;
    fn mul(self, rhs: &BiquadElement) -> BiquadElement {
        self.assert_same_field(rhs);
        let f = &self.field;
        let k = rat(f.radical_gcd());
        let p_over_k = rat(f.p / f.radical_gcd());
        let q_over_k = rat(f.q / f.radical_gcd());
        let (p, q, r) = (rat(f.p), rat(f.q), rat(f.r));
        let [a1, b1, c1, d1] = &self.coords;
        let [a2, b2, c2, d2] = &rhs.coords;
        // sqrt(p)sqrt(q) = k sqrt(r), sqrt(p)sqrt(r) = (p/k) sqrt(q),
        // sqrt(q)sqrt(r) = (q/k) sqrt(p)
        let a = a1 * a2 + b1 * b2 * p + c1 * c2 * q + d1 * d2 * r;
        let b = a1 * b2 + b1 * a2 + (c1 * d2 + d1 * c2) * q_over_k;
        let c = a1 * c2 + c1 * a2 + (b1 * d2 + d1 * b2) * p_over_k;
        let d = a1 * d2 + d1 * a2 + (b1 * c2 + c1 * b2) * k;
        BiquadElement {
            field: self.field.clone(),
            coords: [a, b, c, d],
        }
    }
}

impl Div for &BiquadElement {
    type Output = BiquadElement;
    fn div(self, rhs: &BiquadElement) -> BiquadElement {
        self.checked_div(rhs).expect("division failed")
    }
}
