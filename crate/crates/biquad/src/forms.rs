//! Classical totally positive definite quadratic forms over `O_K`:
//! definiteness testing, off-diagonal candidate enumeration, representability
//! checks, gamma-count tables, and the escalation engine.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::element::BiquadElement;
use crate::error::Error;
use crate::field::Field;
use crate::indecomp::max_numerator;
use num_bigint::BigInt;

use crate::rat::{isqrt_rational_floor, rat, ratio, Rational};
use crate::sign::{is_totally_nonnegative, is_totally_positive};
use crate::squares::is_square_quotient;

/// A quadratic form `Q(x) = x^T A x` with symmetric matrix `A` over `K`.
///
/// The form is classical exactly when every matrix entry lies in `O_K`.
#[derive(Debug, Clone)]
pub struct QuadraticForm {
    field: Arc<Field>,
    entries: Vec<Vec<BiquadElement>>,
    lineage: Vec<BiquadElement>,
}

impl QuadraticForm {
    /// The diagonal form with the given coefficients.
    pub fn diagonal(field: &Arc<Field>, diag: &[BiquadElement]) -> Self {
        let n = diag.len();
        let zero = BiquadElement::zero(field);
        let mut entries = vec![vec![zero; n]; n];
        for (i, d) in diag.iter().enumerate() {
            entries[i][i] = d.clone();
        }
        QuadraticForm {
            field: field.clone(),
            entries,
            lineage: diag.to_vec(),
        }
    }

    /// Exact `L D L^T` factorisation with unit lower-triangular `L`.
    ///
    /// Requires nonzero leading principal minors, which holds for every
    /// totally positive definite form.
    fn ldl(&self) -> Result<(Vec<Vec<BiquadElement>>, Vec<BiquadElement>), Error> {
        let n = self.n();
        let zero = BiquadElement::zero(&self.field);
        let mut l = vec![vec![zero.clone(); n]; n];
        let mut d = vec![zero; n];
        for i in 0..n {
            let mut di = self.entries[i][i].clone();
            for k in 0..i {
                di = &di - &(&(&l[i][k] * &l[i][k]) * &d[k]);
            }
            l[i][i] = BiquadElement::one(&self.field);
            for j in i + 1..n {
                let mut v = self.entries[j][i].clone();
                for k in 0..i {
                    v = &v - &(&(&l[j][k] * &l[i][k]) * &d[k]);
                }
                l[j][i] = v.checked_div(&di)?;
            }
            d[i] = di;
        }
        Ok((l, d))
    }

    /// A form from an explicit symmetric matrix.
    pub fn from_entries(field: &Arc<Field>, entries: Vec<Vec<BiquadElement>>) -> Self {
        let n = entries.len();
        for row in &entries {
            assert_eq!(row.len(), n, "matrix must be square");
        }
        for i in 0..n {
            for j in 0..i {
                assert_eq!(entries[i][j], entries[j][i], "matrix must be symmetric");
            }
        }
        let lineage = (0..n).map(|i| entries[i][i].clone()).collect();
        QuadraticForm {
            field: field.clone(),
            entries,
            lineage,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BiquadElement {
        &self.entries[i][j]
    }

    /// The diagonal coefficients in the order they were escalated in.
    pub fn lineage(&self) -> &[BiquadElement] {
        &self.lineage
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j].is_zero()))
    }

    pub fn is_classical(&self) -> bool {
        self.entries
            .iter()
            .all(|row| row.iter().all(|e| e.is_integral()))
    }

    /// Extends the form by one variable with diagonal coefficient `diag` and
    /// off-diagonal matrix entries `offdiag` against the existing variables.
    pub fn extend(&self, diag: &BiquadElement, offdiag: &[BiquadElement]) -> Self {
        let n = self.n();
        assert_eq!(offdiag.len(), n);
        let mut entries = self.entries.clone();
        for (row, g) in entries.iter_mut().zip(offdiag) {
            row.push(g.clone());
        }
        let mut last: Vec<BiquadElement> = offdiag.to_vec();
        last.push(diag.clone());
        entries.push(last);
        let mut lineage = self.lineage.clone();
        lineage.push(diag.clone());
        QuadraticForm {
            field: self.field.clone(),
            entries,
            lineage,
        }
    }

    /// Evaluates `Q(eta) = eta^T A eta`.
    pub fn evaluate(&self, eta: &[BiquadElement]) -> BiquadElement {
        assert_eq!(eta.len(), self.n());
        let mut total = BiquadElement::zero(&self.field);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                total = &total + &(&(a * &eta[i]) * &eta[j]);
            }
        }
        total
    }

    /// The determinant of the leading principal `k x k` submatrix.
    pub fn leading_minor(&self, k: usize) -> BiquadElement {
        let rows: Vec<Vec<BiquadElement>> = self.entries[..k]
            .iter()
            .map(|row| row[..k].to_vec())
            .collect();
        determinant(&self.field, &rows)
    }

    pub fn determinant(&self) -> BiquadElement {
        self.leading_minor(self.n())
    }

    /// `Tr_{K/Q}` of the trace of `Q^{-1}`, both computed exactly over `K`.
    ///
    /// The sum of inverse eigenvalues of the `k`-th embedded matrix equals
    /// `sigma_k(trace(Q^{-1}))`, so this rational bounds the representability
    /// search box without any numerical eigenvalue computation.
    pub fn trace_of_inverse(&self) -> Result<BiquadElement, Error> {
        let n = self.n();
        let det = self.determinant();
        let mut cof_sum = BiquadElement::zero(&self.field);
        for i in 0..n {
            let rows: Vec<Vec<BiquadElement>> = (0..n)
                .filter(|&a| a != i)
                .map(|a| {
                    (0..n)
                        .filter(|&b| b != i)
                        .map(|b| self.entries[a][b].clone())
                        .collect()
                })
                .collect();
            cof_sum = &cof_sum + &determinant(&self.field, &rows);
        }
        cof_sum.checked_div(&det)
    }
}

fn determinant(field: &Arc<Field>, rows: &[Vec<BiquadElement>]) -> BiquadElement {
    let n = rows.len();
    match n {
        0 => BiquadElement::one(field),
        1 => rows[0][0].clone(),
        _ => {
            let mut total = BiquadElement::zero(field);
            for (j, pivot) in rows[0].iter().enumerate() {
                if pivot.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BiquadElement>> = rows[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(b, _)| *b != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = pivot * &determinant(field, &minor);
                total = if j % 2 == 0 { &total + &term } else { &total - &term };
            }
            total
        }
    }
}

/// Sylvester's criterion applied per embedding: the form is totally positive
/// definite iff every leading principal minor is totally positive.
pub fn is_totally_positive_definite(form: &QuadraticForm) -> bool {
    (1..=form.n()).all(|k| is_totally_positive(&form.leading_minor(k)))
}

/// All integral elements `eta` with `x^2 + p y^2 + q z^2 + r w^2` at most
/// `quarter_trace` (equivalently `Tr(eta^2) <= 4 * quarter_trace`), sorted.
fn integral_elements_in_box(field: &Arc<Field>, quarter_trace: &Rational) -> Vec<BiquadElement> {
    let mut out = Vec::new();
    if quarter_trace < &Rational::zero() {
        return out;
    }
    let den = field.lattice_denominator();
    let [p, q, r] = field.radicals();
    let a_max = max_numerator(quarter_trace, den);
    let b_max = max_numerator(&(quarter_trace / rat(p)), den);
    let c_max = max_numerator(&(quarter_trace / rat(q)), den);
    let d_max = max_numerator(&(quarter_trace / rat(r)), den);
    for an in -a_max..=a_max {
        for bn in -b_max..=b_max {
            for cn in -c_max..=c_max {
                for dn in -d_max..=d_max {
                    let weight = ratio(an * an + p * bn * bn + q * cn * cn + r * dn * dn,
                        den * den);
                    if &weight > quarter_trace {
                        continue;
                    }
                    let eta = BiquadElement::from_coords(
                        field,
                        [ratio(an, den), ratio(bn, den), ratio(cn, den), ratio(dn, den)],
                    );
                    if eta.is_integral() {
                        out.push(eta);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// All integral `gamma` with `gamma^2` strictly below (`strict`) or at most
/// (non-strict) `alpha * beta` in the total order, sorted lexicographically
/// on coordinates. Always contains 0 and is symmetric under negation.
pub fn offdiag_candidates(
    alpha: &BiquadElement,
    beta: &BiquadElement,
    strict: bool,
) -> Vec<BiquadElement> {
    assert!(alpha.is_integral() && beta.is_integral());
    assert!(is_totally_positive(alpha) && is_totally_positive(beta));
    let prod = alpha * beta;
    let quarter_trace = prod.trace() / rat(4);
    integral_elements_in_box(alpha.field(), &quarter_trace)
        .into_iter()
        .filter(|g| {
            let gap = &prod - &g.square();
            if strict {
                is_totally_positive(&gap)
            } else {
                is_totally_nonnegative(&gap)
            }
        })
        .collect()
}

/// The strictly-lower-triangular matrix of non-strict candidate counts: row
/// `i` (for the `i+1`-st element) lists, for each earlier element, the number
/// of `gamma` with `alpha * beta >= gamma^2` in the total order.
pub fn gamma_count_table(elements: &[BiquadElement]) -> Vec<Vec<usize>> {
    (1..elements.len())
        .map(|i| {
            (0..i)
                .map(|j| offdiag_candidates(&elements[i], &elements[j], false).len())
                .collect()
        })
        .collect()
}

/// Whether the diagonal form represents the (caller-certified indecomposable)
/// element `beta`: true iff `beta / alpha_i` is a square for some diagonal
/// coefficient.
pub fn represents_diag(form: &QuadraticForm, beta: &BiquadElement) -> Result<bool, Error> {
    assert!(form.is_diagonal());
    for alpha in form.lineage() {
        if is_square_quotient(beta, alpha)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exhaustive search for an integral vector `eta` with `Q(eta) = gamma`,
/// returning the first solution in the deterministic enumeration order.
///
/// The search writes `Q = L D L^T` exactly over `K` and recurses coordinate
/// by coordinate on the remainder `gamma - sum d_i y_i^2` (Fincke-Pohst with
/// rational interval bounds in place of floating point).
pub fn representation_search(
    form: &QuadraticForm,
    gamma: &BiquadElement,
) -> Result<Option<Vec<BiquadElement>>, Error> {
    let mut out = Vec::new();
    search_representations(form, gamma, false, &mut out)?;
    Ok(out.into_iter().next())
}

/// Every integral vector representing `gamma` (complete enumeration).
pub fn all_representations(
    form: &QuadraticForm,
    gamma: &BiquadElement,
) -> Result<Vec<Vec<BiquadElement>>, Error> {
    let mut out = Vec::new();
    search_representations(form, gamma, true, &mut out)?;
    Ok(out)
}

fn search_representations(
    form: &QuadraticForm,
    gamma: &BiquadElement,
    find_all: bool,
    out: &mut Vec<Vec<BiquadElement>>,
) -> Result<(), Error> {
    if !is_totally_positive_definite(form) {
        return Err(Error::NotTotallyPositive(format!(
            "form with diagonal {:?} is not totally positive definite",
            form.lineage().iter().map(|e| e.to_string()).collect::<Vec<_>>()
        )));
    }
    if !gamma.is_integral() {
        return Err(Error::NotIntegral(gamma.to_string()));
    }
    let (l, d) = form.ldl()?;
    let n = form.n();
    let mut x = vec![BiquadElement::zero(form.field()); n];
    descend(form, &l, &d, n, gamma, &mut x, find_all, out);
    Ok(())
}

/// Assigns coordinate `i - 1` (descending) with remainder `rem`; `x[i..]`
/// is already fixed. Returns true when the search should stop.
fn descend(
    form: &QuadraticForm,
    l: &[Vec<BiquadElement>],
    d: &[BiquadElement],
    i: usize,
    rem: &BiquadElement,
    x: &mut Vec<BiquadElement>,
    find_all: bool,
    out: &mut Vec<Vec<BiquadElement>>,
) -> bool {
    if i == 0 {
        if rem.is_zero() {
            out.push(x.clone());
            return !find_all;
        }
        return false;
    }
    let i = i - 1;
    // y_i = x_i + carry with carry = sum_{j > i} L[j][i] x_j; the constraint
    // is d_i y_i^2 <= rem in the total order.
    let mut carry = BiquadElement::zero(form.field());
    for j in i + 1..x.len() {
        carry = &carry + &(&l[j][i] * &x[j]);
    }
    let budget = match rem.checked_div(&d[i]) {
        Ok(b) => b,
        Err(_) => return false,
    };
    let t = budget.trace() / rat(4);
    if t < Rational::zero() {
        return false;
    }
    let field = form.field();
    let den = field.lattice_denominator();
    let [p, q, r] = field.radicals();
    let weights = [1, p, q, r];
    // Per-slot numerator intervals for x_i: (m/den + carry_slot)^2 <= t/w.
    let mut ranges = Vec::with_capacity(4);
    for (slot, &w) in weights.iter().enumerate() {
        let bound = &t / rat(w);
        let center = -(&carry.coords()[slot] * rat(den));
        let radius: BigInt = isqrt_rational_floor(&(&bound * rat(den * den)));
        let lo: i64 = (center.floor().to_integer() - &radius - BigInt::one())
            .try_into()
            .expect("search window fits i64");
        let hi: i64 = (center.ceil().to_integer() + &radius + BigInt::one())
            .try_into()
            .expect("search window fits i64");
        ranges.push((lo, hi, bound));
    }
    for an in ranges[0].0..=ranges[0].1 {
        for bn in ranges[1].0..=ranges[1].1 {
            for cn in ranges[2].0..=ranges[2].1 {
                for dn in ranges[3].0..=ranges[3].1 {
                    let eta = BiquadElement::from_coords(
                        field,
                        [ratio(an, den), ratio(bn, den), ratio(cn, den), ratio(dn, den)],
                    );
                    if !eta.is_integral() {
                        continue;
                    }
                    let y = &eta + &carry;
                    // exact per-slot filter before the full sign test
                    if y.coords()
                        .iter()
                        .zip(&ranges)
                        .any(|(z, (_, _, bound))| &(z * z) > bound)
                    {
                        continue;
                    }
                    let next_rem = rem - &(&d[i] * &y.square());
                    if !is_totally_nonnegative(&next_rem) {
                        continue;
                    }
                    x[i] = eta;
                    if descend(form, l, d, i, &next_rem, x, find_all, out) {
                        return true;
                    }
                }
            }
        }
    }
    x[i] = BiquadElement::zero(field);
    false
}

/// One node of the escalation tree.
#[derive(Debug)]
pub struct EscalationNode {
    pub form: QuadraticForm,
    /// The next escalator, recorded once verified unrepresented here.
    pub unrepresented: Option<BiquadElement>,
    /// The off-diagonal matrix entries that produced this node's form from
    /// its parent (empty at the root).
    pub added_offdiag: Vec<BiquadElement>,
    pub children: Vec<EscalationNode>,
}

impl EscalationNode {
    pub fn leaves(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(|c| c.leaves()).sum()
        }
    }
}

/// The outcome of an escalation run.
#[derive(Debug)]
pub struct Escalation {
    pub root: EscalationNode,
    /// Proven rank lower bound: the deepest level at which every node
    /// verified its next escalator unrepresented (or ran out of escalators).
    pub bound: usize,
    /// True when the per-node branch cap truncated some child list.
    pub branch_capped: bool,
}

/// Runs the escalation method: starting from `Q1 = x1^2`, each level checks
/// that the next escalator is unrepresented by every form at the level, then
/// branches over all admissible off-diagonal coefficient vectors.
pub fn escalate(
    field: &Arc<Field>,
    escalators: &[BiquadElement],
    depth: usize,
    branch_cap: Option<usize>,
) -> Result<Escalation, Error> {
    if escalators.first() != Some(&BiquadElement::one(field)) {
        return Err(Error::EscalatorListMustStartWithOne);
    }
    for (i, e) in escalators.iter().enumerate() {
        if !e.is_integral() {
            return Err(Error::NotIntegral(e.to_string()));
        }
        if !is_totally_positive(e) {
            return Err(Error::NotTotallyPositive(e.to_string()));
        }
        if escalators[..i].contains(e) {
            return Err(Error::Parse(format!("duplicate escalator {e}")));
        }
    }
    assert!(depth >= 1);
    let root_form = QuadraticForm::diagonal(field, &escalators[..1]);
    let mut branch_capped = false;
    let (root, bound) = build_node(
        root_form,
        Vec::new(),
        escalators,
        depth,
        branch_cap,
        &mut branch_capped,
    )?;
    Ok(Escalation {
        root,
        bound,
        branch_capped,
    })
}

fn build_node(
    form: QuadraticForm,
    added_offdiag: Vec<BiquadElement>,
    escalators: &[BiquadElement],
    depth: usize,
    branch_cap: Option<usize>,
    branch_capped: &mut bool,
) -> Result<(EscalationNode, usize), Error> {
    let level = form.n();
    if level >= depth || level >= escalators.len() {
        return Ok((
            EscalationNode {
                form,
                unrepresented: None,
                added_offdiag,
                children: Vec::new(),
            },
            level,
        ));
    }
    let next = &escalators[level];
    let represented = if form.is_diagonal() {
        represents_diag(&form, next)?
    } else {
        representation_search(&form, next)?.is_some()
    };
    if represented {
        if level == 1 {
            return Err(Error::EscalatorRepresented(next.to_string()));
        }
        // A deeper branch representing the escalator just stops here; the
        // proven bound is the minimum over all branches.
        return Ok((
            EscalationNode {
                form,
                unrepresented: None,
                added_offdiag,
                children: Vec::new(),
            },
            level,
        ));
    }
    // Admissible off-diagonal vectors: the product of per-pair candidate
    // sets. These are necessary conditions only; a candidate that fails full
    // definiteness is kept as a terminal child (it cannot be part of a
    // universal form, so it constrains nothing deeper), which keeps the
    // branch count equal to the product of the pairwise counts.
    let per_pair: Vec<Vec<BiquadElement>> = form
        .lineage()
        .iter()
        .map(|alpha| offdiag_candidates(next, alpha, true))
        .collect();
    let mut children = Vec::new();
    let mut bound = usize::MAX;
    let mut stack: Vec<Vec<BiquadElement>> = vec![Vec::new()];
    'vectors: loop {
        let Some(prefix) = stack.pop() else {
            break;
        };
        if prefix.len() < per_pair.len() {
            // Push extensions in reverse so vectors emerge lexicographically.
            for g in per_pair[prefix.len()].iter().rev() {
                let mut next_prefix = prefix.clone();
                next_prefix.push(g.clone());
                stack.push(next_prefix);
            }
            continue;
        }
        let child_form = form.extend(next, &prefix);
        if !child_form.is_classical() {
            continue;
        }
        if let Some(cap) = branch_cap {
            if children.len() >= cap {
                *branch_capped = true;
                break 'vectors;
            }
        }
        let (child, child_bound) = if is_totally_positive_definite(&child_form) {
            build_node(
                child_form,
                prefix,
                escalators,
                depth,
                branch_cap,
                branch_capped,
            )?
        } else {
            let leaf_level = child_form.n();
            (
                EscalationNode {
                    form: child_form,
                    unrepresented: None,
                    added_offdiag: prefix,
                    children: Vec::new(),
                },
                leaf_level,
            )
        };
        bound = bound.min(child_bound);
        children.push(child);
    }
    if children.is_empty() {
        // Cannot happen with the all-zero vector admissible, but stay total.
        bound = level;
    }
    Ok((
        EscalationNode {
            form,
            unrepresented: Some(next.clone()),
            added_offdiag,
            children,
        },
        bound,
    ))
}

/// The rank lower bound provable from the element list: `n` directly when
/// every non-strict candidate set is `{0}` (all gamma counts 1), otherwise
/// the bound reached by the escalation tree.
pub fn rank_lower_bound(field: &Arc<Field>, elements: &[BiquadElement]) -> Result<usize, Error> {
    let table = gamma_count_table(elements);
    if table.iter().all(|row| row.iter().all(|&c| c == 1)) {
        return Ok(elements.len());
    }
    Ok(escalate(field, elements, elements.len(), None)?.bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::rat::ratio;

    fn q23() -> Arc<Field> {
        make_field(2, 3).unwrap()
    }

    fn el(f: &Arc<Field>, a: i64, b: i64, c: i64, d: i64) -> BiquadElement {
        BiquadElement::new(f.clone(), rat(a), rat(b), rat(c), rat(d))
    }

    fn half_el(f: &Arc<Field>, a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> BiquadElement {
        BiquadElement::new(
            f.clone(),
            ratio(a.0, a.1),
            ratio(b.0, b.1),
            ratio(c.0, c.1),
            ratio(d.0, d.1),
        )
    }

    fn mu(f: &Arc<Field>) -> BiquadElement {
        half_el(f, (4, 1), (5, 2), (2, 1), (3, 2))
    }

    fn sigma(f: &Arc<Field>) -> BiquadElement {
        el(f, 3, 0, 0, 1)
    }

    fn sigma_over_mu(f: &Arc<Field>) -> BiquadElement {
        half_el(f, (3, 1), (-3, 2), (-1, 1), (1, 2))
    }

    fn zeta(f: &Arc<Field>) -> BiquadElement {
        half_el(f, (3, 1), (-1, 2), (-1, 1), (1, 2))
    }

    fn zeta_over_mu(f: &Arc<Field>) -> BiquadElement {
        el(f, 5, -1, -2, 0)
    }

    fn q23_elements(f: &Arc<Field>) -> Vec<BiquadElement> {
        vec![
            BiquadElement::one(f),
            mu(f),
            sigma(f),
            sigma_over_mu(f),
            zeta(f),
            zeta_over_mu(f),
        ]
    }

    fn q619_elements(f: &Arc<Field>) -> Vec<BiquadElement> {
        vec![
            BiquadElement::one(f),
            el(f, 5, 2, 0, 0),  // 5 + 2 sqrt 6
            el(f, 3, 1, 0, 0),  // 3 + sqrt 6
            el(f, 9, 0, 2, 0),  // 9 + 2 sqrt 19
            el(f, 11, 0, 0, 1), // 11 + sqrt 114
            el(f, 5, 0, 1, 0),  // 5 + sqrt 19
        ]
    }

    #[test]
    fn definiteness_by_minors() {
        let f = q23();
        let diag = QuadraticForm::diagonal(&f, &[BiquadElement::one(&f), mu(&f)]);
        assert!(is_totally_positive_definite(&diag));
        let one = BiquadElement::one(&f);
        let bad = QuadraticForm::from_entries(
            &f,
            vec![vec![one.clone(), one.clone()], vec![one.clone(), mu(&f)]],
        );
        // det = mu - 1 has a negative conjugate.
        assert!(!is_totally_positive_definite(&bad));
        let trivial = QuadraticForm::diagonal(&f, &[one]);
        assert!(is_totally_positive_definite(&trivial));
    }

    #[test]
    fn sigma_zeta_strict_candidates() {
        let f = q23();
        let got = offdiag_candidates(&sigma(&f), &zeta(&f), true);
        let g = half_el(&f, (-1, 1), (1, 2), (0, 1), (-1, 2));
        let mut expected = vec![g.clone(), -&g, BiquadElement::zero(&f)];
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn sigma_over_mu_zeta_strict_candidates() {
        let f = q23();
        let got = offdiag_candidates(&sigma_over_mu(&f), &zeta(&f), true);
        assert_eq!(got.len(), 9);
        let d1 = half_el(&f, (-2, 1), (1, 2), (1, 1), (-1, 2));
        let d2 = half_el(&f, (0, 1), (-1, 2), (0, 1), (1, 2));
        for d in [&d1, &d2] {
            assert!(got.contains(d));
            assert!(got.contains(&-d));
        }
        assert!(got.contains(&BiquadElement::zero(&f)));
    }

    #[test]
    fn one_mu_nonstrict_candidates() {
        let f = q23();
        let got = offdiag_candidates(&BiquadElement::one(&f), &mu(&f), false);
        assert_eq!(got, vec![BiquadElement::zero(&f)]);
    }

    #[test]
    fn candidates_negation_symmetric_and_contain_zero() {
        let f = q23();
        for alpha in [BiquadElement::one(&f), mu(&f), sigma(&f)] {
            for beta in [sigma_over_mu(&f), zeta(&f)] {
                for strict in [false, true] {
                    let got = offdiag_candidates(&alpha, &beta, strict);
                    assert!(got.contains(&BiquadElement::zero(&f)));
                    for g in &got {
                        assert!(got.contains(&-g));
                    }
                }
            }
        }
    }

    #[test]
    fn table_one() {
        let f = q23();
        let table = gamma_count_table(&q23_elements(&f));
        assert_eq!(
            table,
            vec![
                vec![1],
                vec![1, 1],
                vec![1, 1, 1],
                vec![1, 1, 3, 9],
                vec![1, 1, 9, 3, 5],
            ]
        );
    }

    #[test]
    fn table_two() {
        let f = make_field(6, 19).unwrap();
        let table = gamma_count_table(&q619_elements(&f));
        assert_eq!(
            table,
            vec![
                vec![1],
                vec![1, 1],
                vec![1, 1, 1],
                vec![1, 1, 1, 1],
                vec![1, 1, 1, 3, 1],
            ]
        );
    }

    #[test]
    fn table_is_reorder_invariant() {
        let f = q23();
        let elements = q23_elements(&f);
        let mut pair_counts = std::collections::BTreeMap::new();
        let table = gamma_count_table(&elements);
        for (i, row) in table.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                let mut key = [elements[i + 1].clone(), elements[j].clone()];
                key.sort();
                pair_counts.insert(key, c);
            }
        }
        let mut reordered = elements.clone();
        reordered.reverse();
        let table2 = gamma_count_table(&reordered);
        for (i, row) in table2.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                let mut key = [reordered[i + 1].clone(), reordered[j].clone()];
                key.sort();
                assert_eq!(pair_counts.get(&key), Some(&c));
            }
        }
    }

    #[test]
    fn diagonal_representation_facts() {
        let f = q23();
        let one = BiquadElement::one(&f);
        let q2 = QuadraticForm::diagonal(&f, &[one.clone(), mu(&f)]);
        assert!(!represents_diag(&q2, &sigma(&f)).unwrap());
        let q3 = QuadraticForm::diagonal(&f, &[one.clone(), mu(&f), sigma(&f)]);
        assert!(!represents_diag(&q3, &sigma_over_mu(&f)).unwrap());
        let q4 = QuadraticForm::diagonal(
            &f,
            &[one.clone(), mu(&f), sigma(&f), sigma_over_mu(&f)],
        );
        assert!(!represents_diag(&q4, &zeta(&f)).unwrap());
        // ... but Q2 does represent 2 + sqrt 2 via mu * (1 + 1/2 sqrt 2 - 1/2 sqrt 6)^2.
        assert!(represents_diag(&q2, &el(&f, 2, 1, 0, 0)).unwrap());
    }

    #[test]
    fn representation_search_examples() {
        let f = q23();
        let one = BiquadElement::one(&f);
        let q1 = QuadraticForm::diagonal(&f, &[one.clone()]);
        let found = representation_search(&q1, &el(&f, 4, 0, 0, 0)).unwrap().unwrap();
        assert_eq!(found[0].square(), el(&f, 4, 0, 0, 0));
        let all = all_representations(&q1, &el(&f, 4, 0, 0, 0)).unwrap();
        assert_eq!(all, vec![vec![el(&f, -2, 0, 0, 0)], vec![el(&f, 2, 0, 0, 0)]]);

        let q2 = QuadraticForm::diagonal(&f, &[one.clone(), mu(&f)]);
        let found = representation_search(&q2, &el(&f, 2, 1, 0, 0)).unwrap().unwrap();
        assert_eq!(q2.evaluate(&found), el(&f, 2, 1, 0, 0));

        let q4 = QuadraticForm::diagonal(
            &f,
            &[one.clone(), mu(&f), sigma(&f), sigma_over_mu(&f)],
        );
        assert!(representation_search(&q4, &zeta(&f)).unwrap().is_none());
    }

    #[test]
    fn representation_search_rejects_indefinite() {
        let f = q23();
        let q = QuadraticForm::diagonal(&f, &[el(&f, -1, 0, 0, 0)]);
        assert!(matches!(
            representation_search(&q, &BiquadElement::one(&f)),
            Err(Error::NotTotallyPositive(_))
        ));
    }

    #[test]
    fn general_search_agrees_on_nondiagonal_form() {
        let f = q23();
        let one = BiquadElement::one(&f);
        let two = el(&f, 2, 0, 0, 0);
        let form = QuadraticForm::from_entries(
            &f,
            vec![vec![two.clone(), one.clone()], vec![one.clone(), two.clone()]],
        );
        // Q(x, y) = 2x^2 + 2xy + 2y^2 represents 2 at (1, 0) and 6 at (1, 1).
        let found = representation_search(&form, &two).unwrap().unwrap();
        assert_eq!(form.evaluate(&found), two);
        let six = el(&f, 6, 0, 0, 0);
        let found = representation_search(&form, &six).unwrap().unwrap();
        assert_eq!(form.evaluate(&found), six);
        // 1 is below the minimum of the form.
        assert!(representation_search(&form, &one).unwrap().is_none());
    }

    #[test]
    fn escalation_over_q23() {
        let f = q23();
        let escalators = vec![
            BiquadElement::one(&f),
            mu(&f),
            sigma(&f),
            sigma_over_mu(&f),
            zeta(&f),
        ];
        let run = escalate(&f, &escalators, 5, None).unwrap();
        assert_eq!(run.bound, 5);
        assert!(!run.branch_capped);
        // Steps 2-4 force zero off-diagonals: a single path of diagonal forms.
        let mut node = &run.root;
        for _ in 0..3 {
            assert_eq!(node.children.len(), 1);
            node = &node.children[0];
            assert!(node.form.is_diagonal());
        }
        // Step 5 branches: 3 gamma choices times 9 delta choices.
        assert_eq!(node.children.len(), 27);
        assert_eq!(run.root.leaves(), 27);
        for leaf in &node.children {
            assert!(leaf.form.is_classical());
            assert_eq!(leaf.form.n(), 5);
        }
        // The 27 candidates satisfy the necessary pairwise bounds; only a
        // subset survives full Sylvester definiteness.
        let definite = node
            .children
            .iter()
            .filter(|c| is_totally_positive_definite(&c.form))
            .count();
        assert_eq!(definite, 11);
    }

    #[test]
    fn escalation_depth_one() {
        let f = q23();
        let run = escalate(&f, &[BiquadElement::one(&f)], 1, None).unwrap();
        assert_eq!(run.bound, 1);
        assert!(run.root.children.is_empty());
    }

    #[test]
    fn escalation_rejects_bad_lists() {
        let f = q23();
        assert!(matches!(
            escalate(&f, &[mu(&f)], 1, None),
            Err(Error::EscalatorListMustStartWithOne)
        ));
        // 4 = 2^2 is represented by x^2 already.
        assert!(matches!(
            escalate(&f, &[BiquadElement::one(&f), el(&f, 4, 0, 0, 0)], 2, None),
            Err(Error::EscalatorRepresented(_))
        ));
    }

    #[test]
    fn rank_lower_bounds() {
        let f = q23();
        assert_eq!(rank_lower_bound(&f, &q23_elements(&f)[..5]).unwrap(), 5);
        assert_eq!(
            rank_lower_bound(&f, &[BiquadElement::one(&f)]).unwrap(),
            1
        );
    }

    #[test]
    fn escalation_over_q619() {
        let f = make_field(6, 19).unwrap();
        let escalators = q619_elements(&f);
        let run = escalate(&f, &escalators, 6, None).unwrap();
        assert_eq!(run.bound, 6);
        // The depth-5 path is a single chain of diagonal forms.
        let mut node = &run.root;
        for _ in 0..4 {
            assert_eq!(node.children.len(), 1);
            node = &node.children[0];
            assert!(node.form.is_diagonal());
        }
        assert_eq!(node.unrepresented, Some(escalators[5].clone()));
    }
}
