//! Field descriptors for real biquadratic fields `Q(sqrt(p), sqrt(q))`.
//!
//! A field is described by a canonical triple `(p, q, r)` with
//! `r = pq / gcd(p,q)^2`, one of the case labels of the classification by
//! residues mod 4, and the matching integral basis.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::element::BiquadElement;
use crate::error::Error;
use crate::rat::{rat, ratio, squarefree, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    /// p = 2, q = 3 (mod 4)
    C1,
    /// p = 2, q = 1 (mod 4)
    C2,
    /// p = 3, q = 1 (mod 4)
    C3,
    /// p = q = 1 (mod 4), p/gcd = q/gcd = 1 (mod 4)
    C4a,
    /// p = q = 1 (mod 4), p/gcd = q/gcd = 3 (mod 4)
    C4b,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::C1 => "1",
            Case::C2 => "2",
            Case::C3 => "3",
            Case::C4a => "4a",
            Case::C4b => "4b",
        };
        f.write_str(s)
    }
}

impl Case {
    fn rank(self) -> u8 {
        match self {
            Case::C1 => 1,
            Case::C2 => 2,
            Case::C3 => 3,
            Case::C4a | Case::C4b => 4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Field {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub case: Case,
    /// The (p, q) pair as supplied by the caller, before canonicalization.
    pub input: (i64, i64),
    /// Integral basis; row `i` holds the coordinates of the `i`-th basis
    /// element over `(1, sqrt(p), sqrt(q), sqrt(r))`.
    pub basis: [[Rational; 4]; 4],
    /// Inverse of the transposed basis matrix: maps coordinates over
    /// `(1, sqrt(p), sqrt(q), sqrt(r))` to coordinates over the basis.
    basis_inv: [[Rational; 4]; 4],
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        (self.p, self.q, self.r) == (other.p, other.q, other.r)
    }
}
impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}),sqrt({}))", self.p, self.q)
    }
}

fn case_of(p: i64, q: i64) -> Option<Case> {
    match (p.rem_euclid(4), q.rem_euclid(4)) {
        (2, 3) => Some(Case::C1),
        (2, 1) => Some(Case::C2),
        (3, 1) => Some(Case::C3),
        (1, 1) => {
            let k = p.gcd(&q);
            // (p/k)(q/k) = r = 1 (mod 4), so the two residues agree.
            if (p / k).rem_euclid(4) == 1 {
                Some(Case::C4a)
            } else {
                Some(Case::C4b)
            }
        }
        _ => None,
    }
}

/// Integral basis rows over `(1, sqrt(p), sqrt(q), sqrt(r))`.
fn basis_rows(case: Case) -> [[Rational; 4]; 4] {
    let z = Rational::zero;
    let o = Rational::one;
    let h = || ratio(1, 2);
    let qu = || ratio(1, 4);
    match case {
        Case::C1 => [
            [o(), z(), z(), z()],
            [z(), o(), z(), z()],
            [z(), z(), o(), z()],
            [z(), h(), z(), h()], // (sqrt(p)+sqrt(r))/2
        ],
        Case::C2 | Case::C3 => [
            [o(), z(), z(), z()],
            [z(), o(), z(), z()],
            [h(), z(), h(), z()], // (1+sqrt(q))/2
            [z(), h(), z(), h()],
        ],
        Case::C4a => [
            [o(), z(), z(), z()],
            [h(), h(), z(), z()],
            [h(), z(), h(), z()],
            [qu(), qu(), qu(), qu()], // (1+sqrt(p)+sqrt(q)+sqrt(r))/4
        ],
        Case::C4b => [
            [o(), z(), z(), z()],
            [h(), h(), z(), z()],
            [h(), z(), h(), z()],
            [qu(), -qu(), qu(), qu()], // (1-sqrt(p)+sqrt(q)+sqrt(r))/4
        ],
    }
}

/// Invert a 4x4 rational matrix by Gauss-Jordan elimination.
fn invert4(m: &[[Rational; 4]; 4]) -> [[Rational; 4]; 4] {
    let mut a: Vec<Vec<Rational>> = (0..4)
        .map(|i| {
            let mut row: Vec<Rational> = m[i].to_vec();
            for j in 0..4 {
                row.push(if i == j { rat(1) } else { rat(0) });
            }
            row
        })
        .collect();
    for col in 0..4 {
        let pivot = (col..4)
            .find(|&i| !a[i][col].is_zero())
            .expect("basis matrix is invertible");
        a.swap(col, pivot);
        let pv = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &pv;
        }
        for i in 0..4 {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..8 {
                    let s = &a[col][j] * &f;
                    a[i][j] = &a[i][j] - &s;
                }
            }
        }
    }
    let mut out: [[Rational; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i][j + 4].clone();
        }
    }
    out
}

/// Build the canonical descriptor of `Q(sqrt(p), sqrt(q))`.
///
/// The roles of `p`, `q` and `r` are permuted deterministically so that the
/// residues mod 4 match one of the five cases: the permutation with the
/// smallest case number wins, ties broken lexicographically on `(p, q)`.
pub fn make_field(p: i64, q: i64) -> Result<Arc<Field>, Error> {
    for &x in &[p, q] {
        if x <= 1 {
            return Err(Error::BadRadicand(x));
        }
        if !squarefree(x) {
            return Err(Error::NotSquarefree(x));
        }
    }
    if p == q {
        return Err(Error::EqualRadicands(p));
    }
    let k = p.gcd(&q);
    let r = p / k * (q / k);

    let mut best: Option<(u8, i64, i64, Case)> = None;
    let vals = [p, q, r];
    for &a in &vals {
        for &b in &vals {
            if a == b {
                continue;
            }
            if let Some(case) = case_of(a, b) {
                let key = (case.rank(), a, b, case);
                if best.map_or(true, |(rk, ba, bb, _)| (case.rank(), a, b) < (rk, ba, bb)) {
                    best = Some(key);
                }
            }
        }
    }
    let (_, cp, cq, case) = best.expect("every squarefree pair matches one of the cases");
    let cr = {
        let g = cp.gcd(&cq);
        cp / g * (cq / g)
    };
    debug_assert_eq!(cp.rem_euclid(4), cr.rem_euclid(4));

    let basis = basis_rows(case);
    // Transpose: columns are basis elements, rows are the radical coordinates.
    let mut bt: [[Rational; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            bt[i][j] = basis[j][i].clone();
        }
    }
    let basis_inv = invert4(&bt);
    Ok(Arc::new(Field {
        p: cp,
        q: cq,
        r: cr,
        case,
        input: (p, q),
        basis,
        basis_inv,
    }))
}

impl Field {
    /// gcd(p, q); the product rule is sqrt(p)*sqrt(q) = gcd * sqrt(r).
    pub fn radical_gcd(&self) -> i64 {
        self.p.gcd(&self.q)
    }

    /// Denominator bound of integral coordinates over `(1, sqrt p, sqrt q, sqrt r)`:
    /// 2 in cases 1-3, 4 in case 4.
    pub fn lattice_denominator(&self) -> i64 {
        match self.case {
            Case::C1 | Case::C2 | Case::C3 => 2,
            Case::C4a | Case::C4b => 4,
        }
    }

    /// Coordinates of `coords` (over the radical basis) in the integral basis.
    pub fn to_basis_coords(&self, coords: &[Rational; 4]) -> [Rational; 4] {
        let mut out: [Rational; 4] = Default::default();
        for (i, item) in out.iter_mut().enumerate() {
            let mut acc = rat(0);
            for j in 0..4 {
                acc += &self.basis_inv[i][j] * &coords[j];
            }
            *item = acc;
        }
        out
    }

    /// True when the permutation differs from the caller's `(p, q)` order.
    pub fn was_permuted(&self) -> bool {
        (self.p, self.q) != self.input
    }

    /// The slot (0 for sqrt(p), 1 for sqrt(q), 2 for sqrt(r)) of radicand `k`.
    pub fn radical_slot(&self, k: i64) -> Option<usize> {
        if k == self.p {
            Some(0)
        } else if k == self.q {
            Some(1)
        } else if k == self.r {
            Some(2)
        } else {
            None
        }
    }

    pub fn radicals(&self) -> [i64; 3] {
        [self.p, self.q, self.r]
    }

    pub fn min_radical(&self) -> i64 {
        self.p.min(self.q).min(self.r)
    }
}

/// The four basis elements as field elements.
pub fn basis_elements(field: &Arc<Field>) -> [BiquadElement; 4] {
    let mk = |row: &[Rational; 4]| {
        BiquadElement::new(
            field.clone(),
            row[0].clone(),
            row[1].clone(),
            row[2].clone(),
            row[3].clone(),
        )
    };
    [
        mk(&field.basis[0]),
        mk(&field.basis[1]),
        mk(&field.basis[2]),
        mk(&field.basis[3]),
    ]
}
