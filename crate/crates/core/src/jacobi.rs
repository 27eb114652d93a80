//! Jacobi polynomials of `RM_q(1, m)`: exhaustive enumeration, closed forms
//! per T-class, the `b`/`a` counting tables, and the dual transform.
//!
//! A codeword `c` contributes `w^m0 z^m1 x^n0 y^n1`, where `m1` counts the
//! nonzero entries of `c` on `T`, `m0 = t - m1`, and `n0`, `n1` are the zero
//! and nonzero counts outside `T`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::grm::{rank, GrmCode, PointSet, Subcase, TClass};
use crate::poly::{exact_div, linear_pair_power, JacobiPolynomial, Monomial, WeightEnumerator};

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn pow(q: u64, e: usize) -> BigInt {
    num_traits::pow(big(q), e)
}

/// Weight enumerator of `RM_q(1, m)` from its closed form.
pub fn weight_enumerator_formula(q: u64, m: usize) -> Result<WeightEnumerator> {
    if m == 0 {
        return Err(Error::ZeroDimension);
    }
    let n = usize::try_from(q.pow(m as u32)).map_err(|_| Error::CodeTooLarge { q: q as u32, m })?;
    let mid = (q as usize - 1) * (n / q as usize);
    WeightEnumerator::new(
        n,
        [
            (0, BigInt::one()),
            (mid, pow(q, m + 1) - q),
            (n, big(q - 1)),
        ],
    )
}

/// Weight enumerator by scanning every codeword.
pub fn weight_enumerator_enumerated(code: &GrmCode) -> WeightEnumerator {
    let dist = code.weight_distribution();
    WeightEnumerator::new(code.n(), dist.into_iter().map(|(w, c)| (w, big(c))))
        .expect("weights are at most n")
}

/// `λ·u` for every point of `positions`.
fn functional_values(
    code: &GrmCode,
    lambda: &[FieldElement],
    positions: &[usize],
) -> Vec<FieldElement> {
    let zero = crate::grm::Codeword {
        lambda: lambda.to_vec(),
        b: FieldElement::ZERO,
    };
    positions.iter().map(|&p| code.eval(&zero, p)).collect()
}

/// Exhaustive Jacobi polynomial, taking the codeword weight from its known
/// value so only the `t` positions of `T` are evaluated.
pub fn brute_force(code: &GrmCode, t: &PointSet) -> JacobiPolynomial {
    brute_force_positions(code, &t.positions(code))
}

pub fn brute_force_positions(code: &GrmCode, positions: &[usize]) -> JacobiPolynomial {
    let f = code.field();
    let q = code.q() as u64;
    let t = positions.len();
    let functionals = code.n();
    // counts[kind][m1], kind 0: zero word, 1: non-constant, 2: nonzero constant
    let counts = (0..functionals)
        .into_par_iter()
        .with_min_len(256)
        .fold(
            || vec![vec![0u64; t + 1]; 3],
            |mut acc, li| {
                let lambda = code.codeword(li as u64 * q).lambda;
                let vals = functional_values(code, &lambda, positions);
                let constant = lambda.iter().all(|c| c.is_zero());
                for b in f.elements() {
                    let m1 = vals.iter().filter(|&&v| !f.add(v, b).is_zero()).count();
                    let kind = match (constant, b.is_zero()) {
                        (false, _) => 1,
                        (true, true) => 0,
                        (true, false) => 2,
                    };
                    acc[kind][m1] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![vec![0u64; t + 1]; 3],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );
    let n = code.n();
    let weights = [0, code.min_weight(), n];
    let mut poly = JacobiPolynomial::zero(t, n);
    for (kind, row) in counts.iter().enumerate() {
        for (m1, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let n1 = weights[kind] - m1;
            let mono = Monomial::new((t - m1) as u64, m1 as u64, (n - t - n1) as u64, n1 as u64);
            poly.add_term(mono, big(c))
                .expect("bi-homogeneous by construction");
        }
    }
    poly
}

/// Slow oracle: evaluates every codeword at every position.
pub fn brute_force_scan(code: &GrmCode, t: &PointSet) -> JacobiPolynomial {
    let positions = t.positions(code);
    let mut in_t = vec![false; code.n()];
    for &p in &positions {
        in_t[p] = true;
    }
    let mut tally: BTreeMap<Monomial, u64> = BTreeMap::new();
    for c in code.codewords() {
        let mut e = [0u64; 4];
        for (i, &inside) in in_t.iter().enumerate() {
            let nonzero = !code.eval(&c, i).is_zero();
            e[usize::from(!inside) * 2 + usize::from(nonzero)] += 1;
        }
        *tally
            .entry(Monomial::new(e[0], e[1], e[2], e[3]))
            .or_insert(0) += 1;
    }
    JacobiPolynomial::from_terms(
        positions.len(),
        code.n(),
        tally.into_iter().map(|(m, c)| (m, big(c))),
    )
    .expect("bi-homogeneous by construction")
}

/// Jacobi polynomial of an explicit list of words (used for dual codes).
pub fn jacobi_of_words(
    n: usize,
    words: &[Vec<FieldElement>],
    positions: &[usize],
) -> Result<JacobiPolynomial> {
    let mut in_t = vec![false; n];
    for &p in positions {
        if p >= n {
            return Err(Error::PositionOutOfRange(p, n));
        }
        in_t[p] = true;
    }
    let mut tally: BTreeMap<Monomial, u64> = BTreeMap::new();
    for w in words {
        if w.len() != n {
            return Err(Error::LengthMismatch {
                got: w.len(),
                expected: n,
            });
        }
        let mut e = [0u64; 4];
        for (x, &inside) in w.iter().zip(&in_t) {
            e[usize::from(!inside) * 2 + usize::from(!x.is_zero())] += 1;
        }
        *tally
            .entry(Monomial::new(e[0], e[1], e[2], e[3]))
            .or_insert(0) += 1;
    }
    JacobiPolynomial::from_terms(
        positions.len(),
        n,
        tally.into_iter().map(|(m, c)| (m, big(c))),
    )
}

fn check_class(q: u64, m: usize, class: TClass) -> Result<()> {
    if !class.is_well_formed() || class.rank > m {
        return Err(Error::ClassNotRealizable(class, q as u32, m));
    }
    if q.checked_pow(m as u32).is_some_and(|n| n < class.t as u64) {
        return Err(Error::FormulaNotApplicable(
            class,
            q as u32,
            m,
            "q^m < t".into(),
        ));
    }
    Ok(())
}

fn reject_negative(
    q: u64,
    m: usize,
    class: TClass,
    v: Vec<BigInt>,
    what: &str,
) -> Result<Vec<BigInt>> {
    if let Some((i, x)) = v.iter().enumerate().find(|(_, x)| x.is_negative()) {
        return Err(Error::FormulaNotApplicable(
            class,
            q as u32,
            m,
            format!("{what}[{i}] = {x} < 0"),
        ));
    }
    Ok(v)
}

/// Closed-form `a_0..a_t` for a T-class; `a_i` counts non-constant codewords
/// with exactly `i` nonzero entries on `T`. A negative entry means the class
/// cannot occur at `(q, m)`, and is reported as an error.
pub fn closed_form_a(q: u64, m: usize, class: TClass) -> Result<Vec<BigInt>> {
    let a = closed_form_a_unchecked(q, m, class)?;
    reject_negative(q, m, class, a, "a")
}

/// The closed-form `a` vector evaluated as is, negative entries included.
pub fn closed_form_a_unchecked(q: u64, m: usize, class: TClass) -> Result<Vec<BigInt>> {
    check_class(q, m, class)?;
    let qb = big(q);
    let q1: BigInt = &qb - 1;
    let p = |k: usize| pow(q, m - k);
    let one = BigInt::one();
    let a = match (class.t, class.rank, class.subcase) {
        (2, 1, None) => vec![p(1) - &one, 2 * &q1 * p(1), &q1 * (p(0) - p(1) - &one)],
        (3, 2, None) => vec![
            p(2) - &one,
            3 * p(2) * &q1,
            3 * p(2) * &q1 * &q1,
            &q1 * (p(0) - 2 * p(1) + p(2) - &one),
        ],
        (3, 1, None) => vec![
            p(1) - &one,
            BigInt::zero(),
            3 * p(1) * &q1,
            &q1 * (p(0) - 2 * p(1) - &one),
        ],
        (4, 3, None) => vec![
            p(3) - &one,
            4 * p(3) * &q1,
            6 * &q1 * &q1 * p(3),
            4 * p(3) * &q1 * &q1 * &q1,
            &q1 * (p(0) - 3 * p(1) + 3 * p(2) - p(3) - &one),
        ],
        (4, 2, Some(Subcase::CollinearTriple)) => vec![
            p(2) - &one,
            p(2) * &q1,
            3 * p(2) * &q1,
            p(2) * &q1 * (4 * &qb - 5),
            &q1 * (p(0) - 3 * p(1) + 2 * p(2) - &one),
        ],
        (4, 2, Some(Subcase::Generic)) => vec![
            p(2) - &one,
            BigInt::zero(),
            6 * p(2) * &q1,
            p(2) * &q1 * (4 * &qb - 8),
            &q1 * (p(0) - 3 * p(1) + 3 * p(2) - &one),
        ],
        (4, 1, None) => vec![
            p(1) - &one,
            BigInt::zero(),
            BigInt::zero(),
            4 * p(1) * &q1,
            &q1 * (p(0) - 3 * p(1) - &one),
        ],
        _ => return Err(Error::ClassNotRealizable(class, q as u32, m)),
    };
    Ok(a)
}

/// Closed-form `b_0..b_t` (sums over `j` of the functional counts `b_{i,j}`).
pub fn closed_form_b(q: u64, m: usize, class: TClass) -> Result<Vec<BigInt>> {
    check_class(q, m, class)?;
    let qb = big(q);
    let q1: BigInt = &qb - 1;
    let p = |k: usize| pow(q, m - k);
    let b = match (class.t, class.rank, class.subcase) {
        (2, 1, None) => vec![p(1) * &q1 * &q1, 2 * p(1) * &q1, p(1)],
        (3, 2, None) => vec![
            p(2) * num_traits::pow(q1.clone(), 3),
            3 * p(2) * &q1 * &q1,
            3 * p(2) * &q1,
            p(2),
        ],
        (3, 1, None) => vec![p(1) * &q1 * (&qb - 2), 3 * p(1) * &q1, BigInt::zero(), p(1)],
        (4, 3, None) => vec![
            num_traits::pow(q1.clone(), 4) * p(3),
            4 * num_traits::pow(q1.clone(), 3) * p(3),
            6 * &q1 * &q1 * p(3),
            4 * &q1 * p(3),
            p(3),
        ],
        (4, 2, Some(Subcase::CollinearTriple)) => vec![
            p(2) * &q1 * &q1 * (&qb - 2),
            p(2) * &q1 * (4 * &qb - 5),
            3 * p(2) * &q1,
            p(2) * &q1,
            p(2),
        ],
        (4, 2, Some(Subcase::Generic)) => vec![
            p(2) * &q1 * (&qb * &qb - 3 * &qb + 3),
            p(2) * &q1 * (4 * &qb - 8),
            6 * p(2) * &q1,
            BigInt::zero(),
            p(2),
        ],
        (4, 1, None) => vec![
            &q1 * (&qb - 3) * p(1),
            4 * &q1 * p(1),
            BigInt::zero(),
            BigInt::zero(),
            p(1),
        ],
        _ => return Err(Error::ClassNotRealizable(class, q as u32, m)),
    };
    reject_negative(q, m, class, b, "b")
}

/// Closed-form Jacobi polynomial of a T-class.
pub fn closed_form(q: u64, m: usize, class: TClass) -> Result<JacobiPolynomial> {
    let a = closed_form_a(q, m, class)?;
    jacobi_from_a(&a, q, m, class.t)
}

/// Assembles `w^t x^(n-t) + Σ a_i w^(t-i) z^i x^(q^(m-1)-(t-i)) y^((q-1)q^(m-1)-i) + (q-1) z^t y^(n-t)`.
pub fn jacobi_from_a(a: &[BigInt], q: u64, m: usize, t: usize) -> Result<JacobiPolynomial> {
    if a.len() != t + 1 {
        return Err(Error::LengthMismatch {
            got: a.len(),
            expected: t + 1,
        });
    }
    let n = q
        .checked_pow(m as u32)
        .ok_or(Error::CodeTooLarge { q: q as u32, m })? as i64;
    let base = n / q as i64;
    let t_i = t as i64;
    let mut poly = JacobiPolynomial::zero(t, n as usize);
    let mut put = |w: i64, z: i64, x: i64, y: i64, c: BigInt| -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let mono = Monomial::checked(w, z, x, y).ok_or(Error::NegativeExponent)?;
        poly.add_term(mono, c)
    };
    put(t_i, 0, n - t_i, 0, BigInt::one())?;
    for (i, ai) in a.iter().enumerate() {
        let i = i as i64;
        put(
            t_i - i,
            i,
            base - (t_i - i),
            (q as i64 - 1) * base - i,
            ai.clone(),
        )?;
    }
    put(0, t_i, 0, n - t_i, big(q - 1))?;
    Ok(poly)
}

/// Functional counts for a position set containing the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTables {
    pub t: usize,
    pub q: u64,
    /// `b_ij[i][j]`: functionals taking value `j` (element index) at exactly `i` points of `T`.
    pub b_ij: Vec<Vec<u64>>,
    pub b: Vec<u64>,
    pub a: Vec<u64>,
}

/// Tallies `b_{i,j}` over all `q^m` functionals, then derives `b` and `a`.
pub fn count_tables(code: &GrmCode, t: &PointSet) -> Result<CountTables> {
    if !t.contains_origin() {
        return Err(Error::MissingOrigin);
    }
    let positions = t.positions(code);
    let size = positions.len();
    let q = code.q() as usize;
    let mut b_ij = vec![vec![0u64; q]; size + 1];
    for li in 0..code.n() as u64 {
        let lambda = code.codeword(li * q as u64).lambda;
        let mut per_value = vec![0usize; q];
        for v in functional_values(code, &lambda, &positions) {
            per_value[v.index() as usize] += 1;
        }
        for (j, &i) in per_value.iter().enumerate() {
            b_ij[i][j] += 1;
        }
    }
    let b: Vec<u64> = b_ij.iter().map(|row| row.iter().sum()).collect();
    let a = a_from_b(&b, size, q as u64)?;
    Ok(CountTables {
        t: size,
        q: q as u64,
        b_ij,
        b,
        a,
    })
}

/// `a_i = b_(t-i) - δ_(i,0) - (q-1) δ_(i,t)`.
pub fn a_from_b(b: &[u64], t: usize, q: u64) -> Result<Vec<u64>> {
    if b.len() != t + 1 {
        return Err(Error::LengthMismatch {
            got: b.len(),
            expected: t + 1,
        });
    }
    (0..=t)
        .map(|i| {
            let mut v = b[t - i] as i128;
            if i == 0 {
                v -= 1;
            }
            if i == t {
                v -= q as i128 - 1;
            }
            u64::try_from(v).map_err(|_| Error::NegativeCount {
                index: i,
                value: v.to_string(),
            })
        })
        .collect()
}

/// `a_i` counted directly: non-constant codewords by their weight on `positions`.
pub fn restricted_weights(code: &GrmCode, positions: &[usize]) -> Vec<u64> {
    let mut a = vec![0u64; positions.len() + 1];
    for c in code.codewords().filter(|c| !c.is_constant()) {
        let w = positions
            .iter()
            .filter(|&&p| !code.eval(&c, p).is_zero())
            .count();
        a[w] += 1;
    }
    a
}

/// `b_{i,j}` through the image of `A: λ ↦ (λ(u_1), …, λ(u_(t-1)))`: every
/// vector of `Im A` has `q^(m - rank A)` preimages.
pub fn image_counts(code: &GrmCode, t: &PointSet) -> Result<Vec<Vec<u64>>> {
    if !t.contains_origin() {
        return Err(Error::MissingOrigin);
    }
    let f = code.field();
    let q = code.q() as usize;
    let rows: Vec<Vec<FieldElement>> = t
        .points()
        .iter()
        .filter(|p| p.0.iter().any(|c| !c.is_zero()))
        .map(|p| p.0.clone())
        .collect();
    let r = rank(f, &rows);
    // columns of A span Im A inside F_q^(t-1)
    let cols: Vec<Vec<FieldElement>> = (0..code.m())
        .map(|j| rows.iter().map(|row| row[j]).collect())
        .collect();
    let basis = crate::grm::row_space_basis(f, &cols);
    debug_assert_eq!(basis.len(), r);
    let size = t.len();
    let mut image = vec![vec![0u64; q]; size + 1];
    let fibre = (q as u64).pow((code.m() - r) as u32);
    let total = (q as u64).pow(r as u32);
    for idx in 0..total {
        let mut v = vec![FieldElement::ZERO; rows.len()];
        let mut rest = idx;
        for row in &basis {
            let s = FieldElement::from_index_unchecked((rest % q as u64) as u32);
            rest /= q as u64;
            for (x, &y) in v.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(s, y));
            }
        }
        let mut per_value = vec![0usize; q];
        per_value[0] += 1; // the origin of T
        for x in &v {
            per_value[x.index() as usize] += 1;
        }
        for (j, &i) in per_value.iter().enumerate() {
            image[i][j] += fibre;
        }
    }
    Ok(image)
}

/// `J_{C⊥,T} = J_{C,T}(w + (q-1)z, w - z, x + (q-1)y, x - y) / |C|`, expanded
/// stratum by stratum; every coefficient must divide exactly.
pub fn dual_jacobi(j: &JacobiPolynomial, code_size: &BigInt, q: u64) -> Result<JacobiPolynomial> {
    let t = j.t();
    let n = j.n();
    let mut strata: BTreeMap<(u64, u64), Vec<BigInt>> = BTreeMap::new();
    for (mono, c) in j.terms() {
        let acc = strata
            .entry((mono.w, mono.z))
            .or_insert_with(|| vec![BigInt::zero(); n - t + 1]);
        for (slot, v) in acc
            .iter_mut()
            .zip(linear_pair_power(mono.x as usize, mono.y as usize, q))
        {
            *slot += c * v;
        }
    }
    let mut out = JacobiPolynomial::zero(t, n);
    for ((w, z), xs) in strata {
        let ws = linear_pair_power(w as usize, z as usize, q);
        for (i, wc) in ws.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, xc) in xs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let mono = Monomial::new((t - i) as u64, i as u64, (n - t - k) as u64, k as u64);
                out.add_term(mono, wc * xc)?;
            }
        }
    }
    let mut divided = JacobiPolynomial::zero(t, n);
    for (mono, c) in out.terms() {
        divided.add_term(*mono, exact_div(c, code_size)?)?;
    }
    Ok(divided)
}

/// `|C⊥| = q^(n - m - 1)`.
pub fn dual_size(q: u64, m: usize) -> BigInt {
    let n = q.pow(m as u32) as usize;
    pow(q, n - m - 1)
}

/// Coefficients of `(wy - xz)^3` as `(w, z, x, y, coeff)`.
pub(crate) fn wy_minus_xz_cubed() -> [(u64, u64, u64, u64, i64); 4] {
    [
        (3, 0, 0, 3, 1),
        (2, 1, 1, 2, -3),
        (1, 2, 2, 1, 3),
        (0, 3, 3, 0, -1),
    ]
}

/// `-q^(m-2) (q-1) x^(q^(m-1)-3) y^((q-1)q^(m-1)-3) (wy - xz)^3`, the expected
/// difference between a rank-2 and a rank-1 three-point Jacobi polynomial.
pub fn difference_identity_rhs(q: u64, m: usize) -> Result<JacobiPolynomial> {
    if m < 2 {
        return Err(Error::ClassNotRealizable(TClass::new(3, 2), q as u32, m));
    }
    let n = q.pow(m as u32);
    let base = n / q;
    let (ax, by) = (base as i64 - 3, (q - 1) as i64 * base as i64 - 3);
    let scale = -(pow(q, m - 2) * (q - 1));
    let mut poly = JacobiPolynomial::zero(3, n as usize);
    for (w, z, x, y, c) in wy_minus_xz_cubed() {
        let mono = Monomial::checked(w as i64, z as i64, ax + x as i64, by + y as i64)
            .ok_or(Error::NegativeExponent)?;
        poly.add_term(mono, &scale * c)?;
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::grm::{classify, parse_points, Subsets};

    fn code(p: u64, k: u32, m: usize) -> GrmCode {
        GrmCode::new(FieldSpec::new(p, k).unwrap(), m).unwrap()
    }

    fn pts(code: &GrmCode, s: &str) -> PointSet {
        PointSet::new(code, parse_points(s).unwrap()).unwrap()
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn ubigs(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn empty_t_is_the_weight_enumerator() {
        let c = code(3, 1, 2);
        let j = brute_force(&c, &PointSet::empty());
        assert_eq!(j.to_string(), "x^9 + 24x^3y^6 + 2y^9");
        assert_eq!(j, weight_enumerator_formula(3, 2).unwrap().to_jacobi());
    }

    #[test]
    fn single_point_preserves_size() {
        let c = code(3, 1, 2);
        for i in 0..c.n() {
            let j = brute_force_positions(&c, &[i]);
            assert_eq!(j.eval_ones(), BigInt::from(27));
        }
    }

    #[test]
    fn pair_closed_form_instance() {
        let c = code(3, 1, 2);
        let expect = "w^2x^7 + 2w^2xy^6 + 12wzx^2y^5 + 10z^2x^3y^4 + 2z^2y^7";
        let cf = closed_form(3, 2, TClass::new(2, 1)).unwrap();
        assert_eq!(cf.to_string(), expect);
        assert_eq!(brute_force(&c, &pts(&c, "(0,0);(0,1)")), cf);
        assert_eq!(cf.coefficient(0, 2, 3, 4), BigInt::from(10));
        assert_eq!(cf.coefficient(0, 2, 3, 5), BigInt::zero());
        assert_eq!(cf.coefficient(2, 0, 7, 0), BigInt::one());
    }

    #[test]
    fn triple_closed_form_instances() {
        let r2 = closed_form(3, 2, TClass::new(3, 2)).unwrap();
        let r1 = closed_form(3, 2, TClass::new(3, 1)).unwrap();
        assert_eq!(r2.coefficient(0, 3, 3, 3), BigInt::from(6));
        assert_eq!(r1.coefficient(0, 3, 3, 3), BigInt::from(4));
    }

    #[test]
    fn fast_path_matches_full_scan() {
        for (p, k, m) in [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3)] {
            let c = code(p, k, m);
            for t in 0..=3 {
                for s in Subsets::new(c.n(), t).step_by(5) {
                    let ps = PointSet::from_positions(&c, &s).unwrap();
                    assert_eq!(brute_force(&c, &ps), brute_force_scan(&c, &ps), "{ps}");
                }
            }
        }
    }

    #[test]
    fn count_table_instances() {
        let c = code(3, 1, 2);
        let pair = count_tables(&c, &pts(&c, "(0,0);(1,2)")).unwrap();
        assert_eq!(pair.b, vec![12, 12, 3]);
        assert_eq!(pair.a, vec![2, 12, 10]);
        let r2 = count_tables(&c, &pts(&c, "(0,0);(1,0);(0,1)")).unwrap();
        assert_eq!(r2.b, vec![8, 12, 6, 1]);
        let r1 = count_tables(&c, &pts(&c, "(0,0);(1,0);(2,0)")).unwrap();
        assert_eq!(r1.b, vec![6, 18, 0, 3]);
        assert_eq!(r1.a, vec![2, 0, 18, 4]);
        for tbl in [&pair, &r2, &r1] {
            for j in 0..3 {
                assert_eq!(tbl.b_ij.iter().map(|row| row[j]).sum::<u64>(), 9);
            }
            assert_eq!(tbl.a.iter().sum::<u64>(), 24);
        }
        assert_eq!(
            count_tables(&c, &pts(&c, "(1,0);(2,0)")),
            Err(Error::MissingOrigin)
        );
    }

    #[test]
    fn a_from_b_rejects_negative() {
        assert_eq!(a_from_b(&[12, 12, 3], 2, 3).unwrap(), vec![2, 12, 10]);
        assert!(matches!(
            a_from_b(&[0, 12, 3], 2, 3),
            Err(Error::NegativeCount { index: 2, .. })
        ));
        assert!(matches!(
            a_from_b(&[1, 2], 2, 3),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn assembly_from_a() {
        let j = jacobi_from_a(&bigs(&[2, 12, 10]), 3, 2, 2).unwrap();
        assert_eq!(j, closed_form(3, 2, TClass::new(2, 1)).unwrap());
        assert_eq!(j.eval_ones(), BigInt::from(27));
        let empty = jacobi_from_a(&bigs(&[0]), 3, 2, 0).unwrap();
        assert_eq!(empty.to_string(), "x^9 + 2y^9");
        assert!(jacobi_from_a(&bigs(&[1, 2]), 3, 2, 2).is_err());
    }

    #[test]
    fn negative_formulas_are_rejected() {
        let rank1 = TClass::new(4, 1);
        assert!(matches!(
            closed_form_a(3, 3, rank1),
            Err(Error::FormulaNotApplicable(..))
        ));
        assert!(matches!(
            closed_form_a(2, 3, TClass::new(3, 1)),
            Err(Error::FormulaNotApplicable(..))
        ));
        assert!(matches!(
            closed_form_a(3, 2, TClass::new(4, 3)),
            Err(Error::ClassNotRealizable(..))
        ));
        assert!(matches!(
            closed_form_a(3, 2, TClass::new(5, 2)),
            Err(Error::ClassNotRealizable(..))
        ));
        assert!(closed_form_a(4, 2, rank1).is_ok());
    }

    #[test]
    fn closed_forms_match_every_set_small() {
        for (p, k, m) in [(2, 1, 3), (3, 1, 2), (2, 2, 2)] {
            let c = code(p, k, m);
            let q = c.q() as u64;
            for t in 2..=4 {
                for s in Subsets::new(c.n(), t) {
                    let ps = PointSet::from_positions(&c, &s).unwrap();
                    let class = classify(&c, &ps).unwrap();
                    assert_eq!(
                        brute_force(&c, &ps),
                        closed_form(q, m, class).unwrap(),
                        "{ps} {class}"
                    );
                }
            }
        }
    }

    #[test]
    fn b_closed_forms_match_counts() {
        let c = code(5, 1, 2);
        for t in 2..=4 {
            for (class, rep) in crate::grm::class_representatives(&c, t).unwrap() {
                let tbl = count_tables(&c, &rep).unwrap();
                assert_eq!(
                    ubigs(&tbl.b),
                    closed_form_b(5, 2, class).unwrap(),
                    "{class}"
                );
                assert_eq!(tbl.b_ij, image_counts(&c, &rep).unwrap());
                assert_eq!(tbl.a, restricted_weights(&c, &rep.positions(&c)));
            }
        }
    }

    #[test]
    fn dual_of_even_weight_code() {
        let c = code(2, 1, 2);
        let j = weight_enumerator_enumerated(&c).to_jacobi();
        assert_eq!(j.to_string(), "x^4 + 6x^2y^2 + y^4");
        let d = dual_jacobi(&j, &BigInt::from(8), 2).unwrap();
        assert_eq!(d.to_string(), "x^4 + y^4");
        assert_eq!(dual_jacobi(&d, &BigInt::from(2), 2).unwrap(), j);
        assert!(matches!(
            dual_jacobi(&j, &BigInt::from(16), 2),
            Err(Error::NonExactDivision { .. })
        ));
    }

    #[test]
    fn dual_matches_enumerated_dual_code() {
        let c = code(3, 1, 2);
        let words = c.dual_codewords(1 << 12).unwrap();
        assert_eq!(BigInt::from(words.len()), dual_size(3, 2));
        for s in [
            "(0,0);(0,1)",
            "(0,0);(1,0);(2,2)",
            "(0,0);(1,0);(0,1);(1,1)",
        ] {
            let ps = pts(&c, s);
            let primal = brute_force(&c, &ps);
            let dual = dual_jacobi(&primal, &BigInt::from(c.size()), 3).unwrap();
            assert_eq!(
                dual,
                jacobi_of_words(c.n(), &words, &ps.positions(&c)).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn difference_identity_small() {
        let lhs = closed_form(3, 2, TClass::new(3, 2))
            .unwrap()
            .sub(&closed_form(3, 2, TClass::new(3, 1)).unwrap())
            .unwrap();
        assert_eq!(lhs, difference_identity_rhs(3, 2).unwrap());
    }

    proptest::proptest! {
        #[test]
        fn dual_transform_is_an_involution(q in proptest::sample::select(vec![(2u64, 1u32), (3, 1), (2, 2), (5, 1)]),
                                           picks in proptest::collection::btree_set(0usize..25, 0..=4)) {
            let code = code(q.0, q.1, 2);
            let positions: Vec<usize> = picks.into_iter().filter(|&i| i < code.n()).collect();
            let j = brute_force_positions(&code, &positions);
            let size = BigInt::from(code.size());
            let dual = dual_jacobi(&j, &size, code.q() as u64).unwrap();
            proptest::prop_assert_eq!(dual.eval_ones(), dual_size(code.q() as u64, 2));
            proptest::prop_assert!(!dual.has_negative_coefficient());
            proptest::prop_assert_eq!(dual_jacobi(&dual, &dual_size(code.q() as u64, 2), code.q() as u64).unwrap(), j);
        }
    }
}
