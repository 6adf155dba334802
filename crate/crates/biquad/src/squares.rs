//! Square detection and square roots in `O_K`, plus generation of totally
//! positive units from a caller-supplied system of units.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::element::BiquadElement;
use crate::error::Error;
use crate::field::Field;
use crate::indecomp::max_numerator;
use crate::rat::{rat, ratio, Rational};
use crate::sign::{is_totally_nonnegative, is_totally_positive, sign_of, Sign};

/// Indices (into the coordinate vector over `(1, sqrt p, sqrt q, sqrt r)`)
/// that a square root of `alpha` may use.
///
/// If `alpha = u + v sqrt(m)` with `u, v != 0` lies in a quadratic subfield
/// but is not a square there, any root in `K` must be supported on the two
/// complementary radicals: writing `beta = x + y sqrt(m) + z sqrt(m') +
/// w sqrt(m'')`, squaring forces `x = y = 0`.
fn root_support(alpha: &BiquadElement) -> [bool; 4] {
    let c = alpha.coords();
    let nonzero: Vec<usize> = (1..4).filter(|&i| !c[i].is_zero()).collect();
    if nonzero.len() == 1 && !c[0].is_zero() {
        let m = nonzero[0];
        if subfield_sqrt(alpha, m).is_none() {
            let mut support = [false; 4];
            for i in 1..4 {
                if i != m {
                    support[i] = true;
                }
            }
            return support;
        }
    }
    [true; 4]
}

/// A root of `alpha = u + v sqrt(m)` inside `Q(sqrt m)` itself, if one
/// exists (`m` is the coordinate slot of the radical).
fn subfield_sqrt(alpha: &BiquadElement, m: usize) -> Option<BiquadElement> {
    let field = alpha.field();
    let den = field.lattice_denominator();
    let quarter_trace = alpha.trace() / rat(4);
    let k = field.radicals()[m - 1];
    let x_max = max_numerator(&quarter_trace, den);
    let y_max = max_numerator(&(&quarter_trace / rat(k)), den);
    for xn in -x_max..=x_max {
        for yn in -y_max..=y_max {
            let mut coords = [
                ratio(xn, den),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            ];
            coords[m] = ratio(yn, den);
            let beta = BiquadElement::from_coords(field, coords);
            if beta.square() == *alpha {
                return Some(beta);
            }
        }
    }
    None
}

/// The square root of `alpha` inside `O_K`, when one exists.
///
/// `alpha` must be integral and totally positive (or zero). The search runs
/// over the box `a^2 <= Tr(alpha)/4`, `b^2 <= Tr(alpha)/4p`,
/// `c^2 <= Tr(alpha)/4q`, `d^2 <= Tr(alpha)/4r`, which contains every
/// integral root; the returned root is the one whose value under the
/// identity embedding is positive.
pub fn sqrt_in_ok(alpha: &BiquadElement) -> Result<Option<BiquadElement>, Error> {
    if !alpha.is_integral() {
        return Err(Error::NotIntegral(alpha.to_string()));
    }
    if alpha.is_zero() {
        return Ok(Some(alpha.clone()));
    }
    if !is_totally_positive(alpha) {
        return Err(Error::NotTotallyPositive(alpha.to_string()));
    }
    let field = alpha.field();
    let den = field.lattice_denominator();
    let quarter_trace = alpha.trace() / rat(4);
    let radicals = field.radicals();
    let support = root_support(alpha);
    let limit = |slot: usize| -> i64 {
        if !support[slot] {
            return 0;
        }
        let bound = if slot == 0 {
            quarter_trace.clone()
        } else {
            &quarter_trace / rat(radicals[slot - 1])
        };
        max_numerator(&bound, den)
    };
    let (a_max, b_max, c_max, d_max) = (limit(0), limit(1), limit(2), limit(3));
    for an in -a_max..=a_max {
        for bn in -b_max..=b_max {
            for cn in -c_max..=c_max {
                for dn in -d_max..=d_max {
                    let beta = BiquadElement::from_coords(
                        field,
                        [ratio(an, den), ratio(bn, den), ratio(cn, den), ratio(dn, den)],
                    );
                    if !beta.is_integral() || beta.square() != *alpha {
                        continue;
                    }
                    let canonical = match sign_of(&beta) {
                        Sign::Negative => -&beta,
                        _ => beta,
                    };
                    return Ok(Some(canonical));
                }
            }
        }
    }
    Ok(None)
}

/// Whether `beta / alpha` is a square in `O_K`.
pub fn is_square_quotient(beta: &BiquadElement, alpha: &BiquadElement) -> Result<bool, Error> {
    if alpha.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !beta.is_integral() {
        return Err(Error::NotIntegral(beta.to_string()));
    }
    let quotient = beta.checked_div(alpha)?;
    if !quotient.is_integral() || !is_totally_nonnegative(&quotient) {
        return Ok(false);
    }
    Ok(sqrt_in_ok(&quotient)?.is_some())
}

fn check_unit(gen: &BiquadElement) -> Result<(), Error> {
    let ok = gen.is_integral()
        && gen.norm().abs() == rat(1)
        && gen.inverse().map(|inv| inv.is_integral()).unwrap_or(false);
    if ok {
        Ok(())
    } else {
        Err(Error::NotAUnit(gen.to_string()))
    }
}

/// All totally positive products of generator powers with exponents in
/// `[-exponent_bound, exponent_bound]`, deduplicated and sorted.
///
/// No explicit `-1` generator is needed: exactly one of `u`, `-u` can be
/// totally positive, and filtering keeps it.
pub fn totally_positive_units(
    field: &Arc<Field>,
    gens: &[BiquadElement],
    exponent_bound: i64,
) -> Result<Vec<BiquadElement>, Error> {
    assert!(exponent_bound >= 0, "exponent bound must be nonnegative");
    for gen in gens {
        if !Arc::ptr_eq(gen.field(), field) && gen.field().radicals() != field.radicals() {
            return Err(Error::FieldMismatch);
        }
        check_unit(gen)?;
    }
    // Precompute gen^e for every exponent in range.
    let powers: Vec<Vec<BiquadElement>> = gens
        .iter()
        .map(|g| {
            (-exponent_bound..=exponent_bound)
                .map(|e| g.pow(e).expect("unit powers are invertible"))
                .collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    let width = (2 * exponent_bound + 1) as usize;
    let total = width.pow(gens.len() as u32);
    for index in 0..total {
        let mut rest = index;
        let mut product = BiquadElement::one(field);
        for p in &powers {
            product = &product * &p[rest % width];
            rest /= width;
        }
        if is_totally_positive(&product) {
            out.insert(product);
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::indecomp::small_norm_criterion;

    fn q23() -> Arc<Field> {
        make_field(2, 3).unwrap()
    }

    fn el(f: &Arc<Field>, a: i64, b: i64, c: i64, d: i64) -> BiquadElement {
        BiquadElement::new(f.clone(), rat(a), rat(b), rat(c), rat(d))
    }

    fn mu(f: &Arc<Field>) -> BiquadElement {
        BiquadElement::new(f.clone(), rat(4), ratio(5, 2), rat(2), ratio(3, 2))
    }

    #[test]
    fn sqrt_of_three_plus_two_sqrt_two() {
        let f = q23();
        let alpha = el(&f, 3, 2, 0, 0);
        let root = sqrt_in_ok(&alpha).unwrap().unwrap();
        assert_eq!(root, el(&f, 1, 1, 0, 0));
    }

    #[test]
    fn sqrt_of_two_plus_sqrt_three_leaves_the_subfield() {
        let f = q23();
        let alpha = el(&f, 2, 0, 1, 0);
        let root = sqrt_in_ok(&alpha).unwrap().unwrap();
        let expected =
            BiquadElement::new(f.clone(), rat(0), ratio(1, 2), rat(0), ratio(1, 2));
        assert_eq!(root, expected);
        // The root is supported away from Q(sqrt 3) and is not totally
        // positive, even though alpha is.
        assert!(root.coords()[0].is_zero() && root.coords()[2].is_zero());
        assert!(!is_totally_positive(&root));
    }

    #[test]
    fn sqrt_trivial_cases() {
        let f = q23();
        assert_eq!(
            sqrt_in_ok(&BiquadElement::zero(&f)).unwrap().unwrap(),
            BiquadElement::zero(&f)
        );
        assert_eq!(sqrt_in_ok(&el(&f, 4, 0, 0, 0)).unwrap().unwrap(), el(&f, 2, 0, 0, 0));
        assert_eq!(sqrt_in_ok(&el(&f, 2, 0, 0, 0)).unwrap().unwrap(), el(&f, 0, 1, 0, 0));
    }

    #[test]
    fn sigma_is_not_a_square() {
        let f = q23();
        let sigma = el(&f, 3, 0, 0, 1);
        assert!(sqrt_in_ok(&sigma).unwrap().is_none());
        assert!(!is_square_quotient(&sigma, &BiquadElement::one(&f)).unwrap());
    }

    #[test]
    fn sqrt_rejects_bad_inputs() {
        let f = q23();
        let half = BiquadElement::new(f.clone(), ratio(1, 2), rat(0), rat(0), rat(0));
        assert!(matches!(sqrt_in_ok(&half), Err(Error::NotIntegral(_))));
        let neg = el(&f, -1, 0, 0, 0);
        assert!(matches!(sqrt_in_ok(&neg), Err(Error::NotTotallyPositive(_))));
    }

    #[test]
    fn two_plus_sqrt_two_over_mu_is_a_square() {
        let f = q23();
        let beta = el(&f, 2, 1, 0, 0);
        assert!(is_square_quotient(&beta, &mu(&f)).unwrap());
        let quotient = beta.checked_div(&mu(&f)).unwrap();
        let root = sqrt_in_ok(&quotient).unwrap().unwrap();
        let expected =
            BiquadElement::new(f.clone(), rat(1), ratio(1, 2), rat(0), ratio(-1, 2));
        assert_eq!(root, expected);
    }

    #[test]
    fn quotient_by_itself_is_a_square() {
        let f = q23();
        let alpha = mu(&f);
        assert!(is_square_quotient(&alpha, &alpha).unwrap());
    }

    #[test]
    fn quotient_errors() {
        let f = q23();
        let zero = BiquadElement::zero(&f);
        assert!(matches!(
            is_square_quotient(&BiquadElement::one(&f), &zero),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn sqrt_recovers_canonical_root_on_a_grid() {
        for (p, q) in [(2, 3), (6, 19), (5, 13)] {
            let f = make_field(p, q).unwrap();
            let den = f.lattice_denominator();
            for an in 0..=2 * den {
                for bn in -den..=den {
                    for cn in -den..=den {
                        let beta = BiquadElement::new(
                            f.clone(),
                            ratio(an, den),
                            ratio(bn, den),
                            ratio(cn, den),
                            rat(0),
                        );
                        if !beta.is_integral() || beta.is_zero() {
                            continue;
                        }
                        let root = sqrt_in_ok(&beta.square()).unwrap().unwrap();
                        assert!(root == beta || root == -&beta);
                        assert_ne!(sign_of(&root), Sign::Negative);
                    }
                }
            }
        }
    }

    #[test]
    fn unit_generators_produce_mu() {
        let f = q23();
        let gens = vec![
            el(&f, 1, 1, 0, 0),
            BiquadElement::new(f.clone(), rat(0), ratio(1, 2), rat(0), ratio(1, 2)),
            el(&f, 0, 1, 1, 0),
        ];
        let units = totally_positive_units(&f, &gens, 1).unwrap();
        assert!(units.contains(&mu(&f)));
        for u in &units {
            assert_eq!(u.norm(), rat(1));
            assert!(is_totally_positive(u));
            assert!(small_norm_criterion(u).unwrap());
        }
    }

    #[test]
    fn unit_bound_zero_is_trivial() {
        let f = q23();
        let gens = vec![el(&f, 1, 1, 0, 0)];
        let units = totally_positive_units(&f, &gens, 0).unwrap();
        assert_eq!(units, vec![BiquadElement::one(&f)]);
    }

    #[test]
    fn non_unit_generator_is_rejected() {
        let f = q23();
        let gens = vec![el(&f, 0, 1, 0, 0)];
        assert!(matches!(
            totally_positive_units(&f, &gens, 1),
            Err(Error::NotAUnit(_))
        ));
    }
}
