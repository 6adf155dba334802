//! Indecomposability in the biquadratic field: the exhaustive decomposition
//! oracle, the small-norm criterion, the subfield-persistence certifier and
//! the finitely-many-fields bound.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::element::BiquadElement;
use crate::error::Error;
use crate::field::{Case, Field};
use crate::quadcf::{cf_expand, semiconvergents, m_value, QuadElement};
use crate::rat::{isqrt_rational_floor, rat, ratio, Rational};
use crate::sign::is_totally_positive;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndecompStatus {
    IndecomposableByOracle,
    IndecomposableBySmallNorm,
    IndecomposableByTheorem1,
    Decomposable,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct IndecompVerdict {
    pub status: IndecompStatus,
    /// A totally positive integral summand, present for `Decomposable`.
    pub witness: Option<BiquadElement>,
    pub certificate_detail: String,
}

impl IndecompVerdict {
    pub fn is_indecomposable(&self) -> bool {
        matches!(
            self.status,
            IndecompStatus::IndecomposableByOracle
                | IndecompStatus::IndecomposableBySmallNorm
                | IndecompStatus::IndecomposableByTheorem1
        )
    }
}

/// Largest numerator `n >= 0` with `(n/den)^2 <= bound`.
pub(crate) fn max_numerator(bound: &Rational, den: i64) -> i64 {
    if bound.is_negative() {
        return -1;
    }
    let scaled = bound * rat(den * den);
    isqrt_rational_floor(&scaled)
        .try_into()
        .expect("search box fits i64")
}

/// All totally positive integral elements with trace at most `trace_bound`,
/// sorted. The coordinate box follows from `0 < sigma_k(alpha) < Tr(alpha)`:
/// e.g. `4 b sqrt(p)` is an alternating sum of embeddings, so `|b| < T /
/// (2 sqrt p)`.
pub fn totally_positive_integers(field: &Arc<Field>, trace_bound: i64) -> Vec<BiquadElement> {
    let mut out = Vec::new();
    // A totally positive integer has trace >= 4 by AM-GM (its norm is >= 1).
    if trace_bound < 4 {
        return out;
    }
    let den = field.lattice_denominator();
    let [p, q, r] = field.radicals();
    let t = trace_bound;
    let a_max = den * t / 4;
    let b_max = max_numerator(&ratio(t * t, 4 * p), den);
    let c_max = max_numerator(&ratio(t * t, 4 * q), den);
    let d_max = max_numerator(&ratio(t * t, 4 * r), den);
    for an in 1..=a_max {
        for bn in -b_max..=b_max {
            for cn in -c_max..=c_max {
                for dn in -d_max..=d_max {
                    let alpha = BiquadElement::from_coords(
                        field,
                        [ratio(an, den), ratio(bn, den), ratio(cn, den), ratio(dn, den)],
                    );
                    if alpha.is_integral() && is_totally_positive(&alpha) {
                        out.push(alpha);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Exhaustive decomposition oracle.
///
/// Enumerates integral `beta` in the coefficient box `|a| <= Tr(alpha)/4`,
/// `|b| <= Tr(alpha)/(4 sqrt p)`, ... over the lattice of quarter- (or
/// half-) integers, pruned by the coefficient inequalities that total
/// positivity forces on both `beta` and `alpha - beta`. Returns the
/// lexicographically smallest witness when one exists.
pub fn decompose_search(alpha: &BiquadElement) -> Result<IndecompVerdict, Error> {
    if !alpha.is_integral() {
        return Err(Error::NotIntegral(alpha.to_string()));
    }
    if !is_totally_positive(alpha) {
        return Err(Error::NotTotallyPositive(alpha.to_string()));
    }
    let field = alpha.field().clone();
    let den = field.lattice_denominator();
    let tr = alpha.trace();
    let quarter_tr = &tr / rat(4);
    // |a| <= Tr/4 with a > 0; |b| <= Tr/(4 sqrt p) etc.
    let a_max = max_numerator(&(&quarter_tr * &quarter_tr), den);
    let b_max = max_numerator(&(&quarter_tr * &quarter_tr / rat(field.p)), den);
    let c_max = max_numerator(&(&quarter_tr * &quarter_tr / rat(field.q)), den);
    let d_max = max_numerator(&(&quarter_tr * &quarter_tr / rat(field.r)), den);

    let witness = (1..=a_max).into_par_iter().find_map_first(|an| {
        scan_inner(&field, alpha, den, an, b_max, c_max, d_max)
    });

    Ok(match witness {
        Some(beta) => {
            let detail = format!("{} = {} + {}", alpha, beta, &(alpha - &beta));
            IndecompVerdict {
                status: IndecompStatus::Decomposable,
                witness: Some(beta),
                certificate_detail: detail,
            }
        }
        None => IndecompVerdict {
            status: IndecompStatus::IndecomposableByOracle,
            witness: None,
            certificate_detail: format!(
                "no integral 0 < beta < {} in the trace box",
                alpha
            ),
        },
    })
}

fn scan_inner(
    field: &Arc<Field>,
    alpha: &BiquadElement,
    den: i64,
    an: i64,
    b_max: i64,
    c_max: i64,
    d_max: i64,
) -> Option<BiquadElement> {
    let [aa, ab, ac, ad] = alpha.coords();
    let a = ratio(an, den);
    let ra = aa - &a;
    if !ra.is_positive() {
        return None;
    }
    let (p, q, r) = (rat(field.p), rat(field.q), rat(field.r));
    // a > |b| sqrt(p) for both parts (necessary for total positivity)
    for bn in -b_max..=b_max {
        let b = ratio(bn, den);
        if (&a * &a - &b * &b * &p) <= Rational::zero() {
            continue;
        }
        let rb = ab - &b;
        if (&ra * &ra - &rb * &rb * &p) <= Rational::zero() {
            continue;
        }
        for cn in -c_max..=c_max {
            let c = ratio(cn, den);
            if (&a * &a - &c * &c * &q) <= Rational::zero() {
                continue;
            }
            let rc = ac - &c;
            if (&ra * &ra - &rc * &rc * &q) <= Rational::zero() {
                continue;
            }
            for dn in -d_max..=d_max {
                let d = ratio(dn, den);
                if (&a * &a - &d * &d * &r) <= Rational::zero() {
                    continue;
                }
                let rd = ad - &d;
                if (&ra * &ra - &rd * &rd * &r) <= Rational::zero() {
                    continue;
                }
                let beta = BiquadElement::from_coords(
                    field,
                    [a.clone(), b.clone(), c.clone(), d.clone()],
                );
                if !beta.is_integral() {
                    continue;
                }
                let rest = alpha - &beta;
                if is_totally_positive(&beta) && is_totally_positive(&rest) {
                    return Some(beta);
                }
            }
        }
    }
    None
}

/// Small-norm indecomposability: `N(alpha) < 2 min(sqrt p, sqrt q, sqrt r)`
/// (tested exactly as `N(alpha)^2 < 4 min(p,q,r)`) and no rational integer
/// `n > 1` divides `alpha`. A rational integer divides `alpha` exactly when
/// it divides every integral-basis coordinate, so the divisibility test is a
/// gcd of the coordinates.
pub fn small_norm_criterion(alpha: &BiquadElement) -> Result<bool, Error> {
    if !alpha.is_integral() {
        return Err(Error::NotIntegral(alpha.to_string()));
    }
    if !is_totally_positive(alpha) {
        return Err(Error::NotTotallyPositive(alpha.to_string()));
    }
    let n = alpha.norm();
    let min_rad = alpha.field().min_radical();
    if &n * &n >= rat(4 * min_rad) {
        return Ok(false);
    }
    let coords = alpha.basis_coords();
    let mut g = BigInt::zero();
    for z in &coords {
        debug_assert!(z.denom().is_one());
        g = g.gcd(z.numer());
    }
    Ok(g.is_one())
}

/// Certify that a quadratic-subfield indecomposable stays indecomposable in
/// the biquadratic field, using only exact radical comparisons.
///
/// For `alpha` in `Q(sqrt p)`: indecomposable if it is a (totally positive)
/// convergent and `r > p`, or if `r > M_p^2 p`. For `Q(sqrt q)`: cases 1-3
/// unconditionally; in case 4 the same two clauses with `q` in place of `p`.
/// For `Q(sqrt r)`: the clauses with `p` and `r` swapped. When no clause
/// applies the verdict is `Unknown` and callers chain to the oracle.
pub fn theorem1_certify(
    alpha: &QuadElement,
    field: &Arc<Field>,
) -> Result<IndecompVerdict, Error> {
    let k = alpha.k;
    if field.radical_slot(k).is_none() {
        return Err(Error::NotInSubfield(k));
    }
    if !alpha.is_integral() || !alpha.is_totally_positive() || !is_quad_indecomposable(alpha)? {
        return Err(Error::NotQuadIndecomposable(alpha.to_string()));
    }
    let conv = is_quad_convergent(alpha)?;
    let m = m_value(k)?;
    let certified = |detail: String| IndecompVerdict {
        status: IndecompStatus::IndecomposableByTheorem1,
        witness: None,
        certificate_detail: detail,
    };
    let unknown = || IndecompVerdict {
        status: IndecompStatus::Unknown,
        witness: None,
        certificate_detail: "no persistence clause applies; use the oracle".into(),
    };
    let (p, q, r) = (field.p, field.q, field.r);
    let verdict = if k == p {
        if conv && r > p {
            certified(format!("clause (a): convergent and sqrt({r}) > sqrt({p})"))
        } else if r > m * m * p {
            certified(format!("clause (a): sqrt({r}) > M_{p} sqrt({p}), M = {m}"))
        } else {
            unknown()
        }
    } else if k == q {
        match field.case {
            Case::C1 | Case::C2 | Case::C3 => {
                certified(format!("clause (b): case {} is unconditional", field.case))
            }
            Case::C4a | Case::C4b => {
                if conv && r > q {
                    certified(format!("clause (b): convergent and sqrt({r}) > sqrt({q})"))
                } else if r > m * m * q {
                    certified(format!("clause (b): sqrt({r}) > M_{q} sqrt({q}), M = {m}"))
                } else {
                    unknown()
                }
            }
        }
    } else {
        // k == r: p and r interchanged
        if conv && p > r {
            certified(format!("clause (c): convergent and sqrt({p}) > sqrt({r})"))
        } else if p > m * m * r {
            certified(format!("clause (c): sqrt({p}) > M_{r} sqrt({r}), M = {m}"))
        } else {
            unknown()
        }
    };
    Ok(verdict)
}

/// True iff `alpha` (or its conjugate) is a totally positive semiconvergent
/// with odd index, i.e. an indecomposable of `Q(sqrt k)`.
pub fn is_quad_indecomposable(alpha: &QuadElement) -> Result<bool, Error> {
    if !alpha.is_integral() || !alpha.is_totally_positive() {
        return Ok(false);
    }
    let tr = alpha.trace();
    let bound: i64 = tr.to_integer().try_into().unwrap_or(i64::MAX);
    let conj = alpha.conjugate();
    for sc in semiconvergents(alpha.k, bound)? {
        if sc.i % 2 != 0 && (sc.element == *alpha || sc.element == conj) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff `alpha` (or its conjugate) is a convergent `alpha_i` with odd
/// index (the totally positive convergents).
pub fn is_quad_convergent(alpha: &QuadElement) -> Result<bool, Error> {
    let cf = cf_expand(alpha.k)?;
    let tr = alpha.trace();
    let conj = alpha.conjugate();
    let mut i: isize = -1;
    loop {
        let c = cf.convergent(i);
        // traces are monotone from i = 1 on; the first few may dip when
        // omega_k = (1 + sqrt k)/2 and u0 = 0
        if i >= 1 && c.trace() > tr {
            return Ok(false);
        }
        if i % 2 != 0 && c.trace() <= tr && (c == *alpha || c == conj) {
            return Ok(true);
        }
        i += 1;
    }
}

/// The finitely-many-fields bound: an indecomposable `x + y sqrt(p)` of
/// `Q(sqrt p)` stays indecomposable in every `Q(sqrt p, sqrt q)` with
/// `min(q, r)` at least the returned value. `16 x^2` in general, `4 x^2`
/// when `p = 2, 3 (mod 4)` (half-integer coordinates).
pub fn persistence_bound(alpha: &QuadElement) -> BigInt {
    let (x, _) = alpha.sqrt_coords();
    let factor = if alpha.k.rem_euclid(4) == 1 { 16 } else { 4 };
    let b = &x * &x * rat(factor);
    debug_assert!(b.denom().is_one());
    b.to_integer()
}
