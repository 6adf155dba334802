//! Quadratic-subfield machinery: `omega_k`, periodic continued fractions of
//! `-conj(omega_k)`, convergents and semiconvergents, the indecomposable
//! integers of `Q(sqrt(k))`, fundamental units, and the `M_k` maxima.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::element::BiquadElement;
use crate::error::Error;
use crate::field::Field;
use crate::rat::{is_integer, rat, squarefree, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OmegaKind {
    /// `omega_k = sqrt(k)` (k = 2, 3 mod 4)
    Sqrt,
    /// `omega_k = (1 + sqrt(k)) / 2` (k = 1 mod 4)
    HalfOnePlus,
}

impl OmegaKind {
    pub fn for_radicand(k: i64) -> OmegaKind {
        if k.rem_euclid(4) == 1 {
            OmegaKind::HalfOnePlus
        } else {
            OmegaKind::Sqrt
        }
    }
}

/// An element `x + y * omega_k` of the quadratic field `Q(sqrt(k))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuadElement {
    pub x: Rational,
    pub y: Rational,
    pub k: i64,
    pub kind: OmegaKind,
}

impl std::fmt::Display for QuadElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (u, v) = self.sqrt_coords();
        if v.is_zero() {
            return write!(f, "{}", u);
        }
        if !u.is_zero() {
            write!(f, "{}", u)?;
            if !v.is_negative() {
                write!(f, "+")?;
            }
        }
        if v.is_one() {
            write!(f, "sqrt({})", self.k)
        } else if v == -Rational::one() {
            write!(f, "-sqrt({})", self.k)
        } else {
            write!(f, "{}*sqrt({})", v, self.k)
        }
    }
}

impl QuadElement {
    pub fn new(k: i64, x: Rational, y: Rational) -> Self {
        QuadElement {
            x,
            y,
            k,
            kind: OmegaKind::for_radicand(k),
        }
    }

    pub fn from_ints(k: i64, x: i64, y: i64) -> Self {
        Self::new(k, rat(x), rat(y))
    }

    /// Coordinates `(u, v)` with the element equal to `u + v*sqrt(k)`.
    pub fn sqrt_coords(&self) -> (Rational, Rational) {
        match self.kind {
            OmegaKind::Sqrt => (self.x.clone(), self.y.clone()),
            OmegaKind::HalfOnePlus => {
                let half_y = &self.y / rat(2);
                (&self.x + &half_y, half_y)
            }
        }
    }

    pub fn is_integral(&self) -> bool {
        is_integer(&self.x) && is_integer(&self.y)
    }

    pub fn conjugate(&self) -> Self {
        match self.kind {
            OmegaKind::Sqrt => Self::new(self.k, self.x.clone(), -self.y.clone()),
            // conj(omega) = 1 - omega
            OmegaKind::HalfOnePlus => Self::new(self.k, &self.x + &self.y, -self.y.clone()),
        }
    }

    pub fn trace(&self) -> Rational {
        match self.kind {
            OmegaKind::Sqrt => &self.x * rat(2),
            OmegaKind::HalfOnePlus => &self.x * rat(2) + &self.y,
        }
    }

    pub fn norm(&self) -> Rational {
        let (u, v) = self.sqrt_coords();
        &u * &u - &v * &v * rat(self.k)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.k, self.kind), (other.k, other.kind));
        Self::new(self.k, &self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.k, self.kind), (other.k, other.kind));
        Self::new(self.k, &self.x - &other.x, &self.y - &other.y)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.k, self.kind), (other.k, other.kind));
        let (u1, v1) = self.sqrt_coords();
        let (u2, v2) = other.sqrt_coords();
        let u = &u1 * &u2 + &v1 * &v2 * rat(self.k);
        let v = &u1 * &v2 + &v1 * &u2;
        Self::from_sqrt_coords(self.k, u, v)
    }

    pub fn from_sqrt_coords(k: i64, u: Rational, v: Rational) -> Self {
        match OmegaKind::for_radicand(k) {
            OmegaKind::Sqrt => Self::new(k, u, v),
            OmegaKind::HalfOnePlus => {
                let y = &v * rat(2);
                Self::new(k, u - v, y)
            }
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero());
        let (u, v) = self.sqrt_coords();
        Self::from_sqrt_coords(self.k, u / &n, -v / &n)
    }

    /// Exact sign of the real value `u + v*sqrt(k)`.
    pub fn sign(&self) -> i32 {
        let (u, v) = self.sqrt_coords();
        if v.is_zero() {
            return match u.cmp(&Rational::zero()) {
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => 1,
            };
        }
        let disc = &u * &u - &v * &v * rat(self.k);
        // u + v sqrt(k) with v != 0 is never zero
        if !u.is_negative() && v.is_positive() {
            1
        } else if !u.is_positive() && v.is_negative() {
            -1
        } else if u.is_positive() {
            // v < 0: positive iff u^2 > k v^2
            if disc.is_positive() {
                1
            } else {
                -1
            }
        } else {
            // u < 0, v > 0: positive iff k v^2 > u^2
            if disc.is_negative() {
                1
            } else {
                -1
            }
        }
    }

    pub fn is_totally_positive(&self) -> bool {
        self.sign() > 0 && self.conjugate().sign() > 0
    }

    /// Lift into a biquadratic field containing `Q(sqrt(k))`.
    pub fn to_biquad(&self, field: &Arc<Field>) -> Result<BiquadElement, Error> {
        let slot = field
            .radical_slot(self.k)
            .ok_or(Error::NotInSubfield(self.k))?;
        let (u, v) = self.sqrt_coords();
        let mut coords = [u, rat(0), rat(0), rat(0)];
        coords[slot + 1] = v;
        Ok(BiquadElement::from_coords(field, coords))
    }
}

/// `omega_k` per the congruence class of `k` mod 4.
pub fn omega(k: i64) -> Result<QuadElement, Error> {
    if k <= 1 {
        return Err(Error::BadRadicand(k));
    }
    if !squarefree(k) {
        return Err(Error::NotSquarefree(k));
    }
    Ok(QuadElement::from_ints(k, 0, 1))
}

/// Periodic continued fraction `[u0; period]` of `-conj(omega_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFExpansion {
    pub k: i64,
    pub kind: OmegaKind,
    pub u0: i64,
    pub period: Vec<i64>,
}

impl CFExpansion {
    /// Partial quotient `u_i`, indices past the period taken cyclically.
    pub fn quotient(&self, i: usize) -> i64 {
        if i == 0 {
            self.u0
        } else {
            self.period[(i - 1) % self.period.len()]
        }
    }

    /// Convergent numerators/denominators `(x_i, y_i)`; index -1 yields (1, 0).
    pub fn convergent_pair(&self, i: isize) -> (BigInt, BigInt) {
        let (mut xp, mut yp) = (BigInt::one(), BigInt::zero()); // i = -1
        if i < 0 {
            return (xp, yp);
        }
        let (mut x, mut y) = (BigInt::from(self.u0), BigInt::one()); // i = 0
        for j in 1..=(i as usize) {
            let u = BigInt::from(self.quotient(j));
            let nx = &u * &x + &xp;
            let ny = &u * &y + &yp;
            xp = std::mem::replace(&mut x, nx);
            yp = std::mem::replace(&mut y, ny);
        }
        (x, y)
    }

    /// The algebraic convergent `alpha_i = x_i + y_i * omega_k`.
    pub fn convergent(&self, i: isize) -> QuadElement {
        let (x, y) = self.convergent_pair(i);
        QuadElement::new(
            self.k,
            Rational::from_integer(x),
            Rational::from_integer(y),
        )
    }
}

/// Expand `-conj(omega_k)` by the exact quadratic-surd algorithm.
///
/// State `(P, Q)` represents `(P + sqrt(k)) / Q`; the period is detected by
/// exact state repetition.
pub fn cf_expand(k: i64) -> Result<CFExpansion, Error> {
    let om = omega(k)?;
    let kind = om.kind;
    let s = BigInt::from(k).sqrt(); // floor(sqrt(k))
    let (mut p, mut q) = match kind {
        OmegaKind::Sqrt => (BigInt::zero(), BigInt::one()),
        OmegaKind::HalfOnePlus => (BigInt::from(-1), BigInt::from(2)),
    };
    let d = BigInt::from(k);
    let mut quotients: Vec<i64> = Vec::new();
    let mut states: Vec<(BigInt, BigInt)> = Vec::new();
    loop {
        assert!(q.is_positive(), "surd state denominator must stay positive");
        let u = (&p + &s).div_floor(&q);
        let np = &u * &q - &p;
        let nq = (&d - &np * &np) / &q;
        quotients.push(i64::try_from(&u).expect("partial quotient fits i64"));
        p = np;
        q = nq;
        if let Some(start) = states.iter().position(|st| *st == (p.clone(), q.clone())) {
            // states[j] is the state entering quotient j+1
            let period_start = start + 1;
            assert_eq!(
                period_start, 1,
                "-conj(omega_k) must be periodic from the first partial quotient"
            );
            let u0 = quotients[0];
            let period = quotients[period_start..].to_vec();
            return Ok(CFExpansion {
                k,
                kind,
                u0,
                period,
            });
        }
        states.push((p.clone(), q.clone()));
    }
}

/// Convergents `alpha_i` with trace at most `trace_bound`.
pub fn convergents(k: i64, trace_bound: i64) -> Result<Vec<QuadElement>, Error> {
    let cf = cf_expand(k)?;
    let bound = rat(trace_bound);
    let mut out = Vec::new();
    let mut i: isize = 0;
    loop {
        let a = cf.convergent(i);
        // traces are monotone from i = 1 on; trace(alpha_0) may be smaller
        // than trace(alpha_{-1}) = 2 when omega_k = (1 + sqrt k)/2 and u0 = 0
        if i >= 1 && a.trace() > bound {
            break;
        }
        if a.trace() <= bound {
            out.push(a);
        }
        i += 1;
    }
    Ok(out)
}

/// A semiconvergent `alpha_{i,l} = alpha_i + l * alpha_{i+1}` with its tag.
#[derive(Debug, Clone)]
pub struct Semiconvergent {
    pub element: QuadElement,
    pub i: isize,
    pub l: i64,
}

/// All semiconvergents (starting at `i = -1`, `alpha_{-1} = 1`) with trace
/// at most `trace_bound`.
pub fn semiconvergents(k: i64, trace_bound: i64) -> Result<Vec<Semiconvergent>, Error> {
    let cf = cf_expand(k)?;
    let bound = rat(trace_bound);
    let mut out = Vec::new();
    let mut i: isize = -1;
    loop {
        let a = cf.convergent(i);
        if i >= 1 && a.trace() > bound {
            break;
        }
        let next = cf.convergent(i + 1);
        let lmax = cf.quotient((i + 2) as usize);
        for l in 0..=lmax {
            let mut e = a.clone();
            for _ in 0..l {
                e = e.add(&next);
            }
            if e.trace() <= bound {
                out.push(Semiconvergent { element: e, i, l });
            }
        }
        i += 1;
    }
    Ok(out)
}

///// All indecomposables of `Q(sqrt(k))` with trace at most `trace_bound`:
/// the totally positive semiconvergents with odd index and their conjugates,
/// deduplicated and sorted.
pub fn quad_indecomposables(k: i64, trace_bound: i64) -> Result<Vec<QuadElement>, Error> {
    let mut set = std::collections::BTreeSet::new();
    for sc in semiconvergents(k, trace_bound)? {
        if sc.i % 2 == 0 {
            continue;
        }
        if sc.element.is_totally_positive() {
            set.insert(sc.element.conjugate());
            set.insert(sc.element);
        }
    }
    Ok(set.into_iter().collect())
}

/// Fundamental unit of `Q(sqrt(k))`: the first convergent of norm +-1
/// exceeding 1.
pub fn fundamental_unit(k: i64) -> Result<QuadElement, Error> {
    let cf = cf_expand(k)?;
    for i in 0.. {
        let a = cf.convergent(i);
        let n = a.norm();
        if (n.clone().abs()).is_one() && a.sub(&QuadElement::from_ints(k, 1, 0)).sign() > 0 {
            return Ok(a);
        }
    }
    unreachable!()
}

/// The smallest totally positive unit exceeding 1: the fundamental unit or
/// its square.
pub fn totally_positive_fundamental_unit(k: i64) -> Result<QuadElement, Error> {
    let e = fundamental_unit(k)?;
    if e.is_totally_positive() {
        Ok(e)
    } else {
        Ok(e.mul(&e))
    }
}

/// Representatives of the indecomposables in the interval `[1, eps]`, where
/// `eps` is the totally positive fundamental unit; this is the shape of the
/// per-subfield lists used when seeding an escalation.
pub fn quad_indecomposables_up_to_units(k: i64) -> Result<Vec<QuadElement>, Error> {
    let eps = totally_positive_fundamental_unit(k)?;
    let cf = cf_expand(k)?;
    let mut out = std::collections::BTreeSet::new();
    let mut i: isize = -1;
    'outer: loop {
        let a = cf.convergent(i);
        if a.sub(&eps).sign() > 0 {
            break 'outer;
        }
        let next = cf.convergent(i + 1);
        let lmax = cf.quotient((i + 2) as usize);
        if i % 2 != 0 {
            let mut e = a.clone();
            for _ in 0..=lmax {
                if e.sub(&eps).sign() <= 0 && e.is_totally_positive() {
                    out.insert(e.clone());
                }
                e = e.add(&next);
            }
        }
        i += 1;
    }
    Ok(out.into_iter().collect())
}

/// `M_k`: the maximum odd-indexed partial quotient of `cf_expand(k)`.
///
/// Odd indices are scanned through two full periods, so the result does not
/// depend on where the period boundary falls.
pub fn m_value(k: i64) -> Result<i64, Error> {
    let cf = cf_expand(k)?;
    let s = cf.period.len();
    let mut m = 0;
    for i in (1..=2 * s).step_by(2) {
        m = m.max(cf.quotient(i));
    }
    Ok(m)
}
