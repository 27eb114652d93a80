//! Sparse four-variable polynomials with big-integer coefficients, and the
//! binomial convolutions used to expand `(x + (q-1)y)^c (x - y)^d`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponents of `w^w z^z x^x y^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub w: u64,
    pub z: u64,
    pub x: u64,
    pub y: u64,
}

impl Monomial {
    pub const fn new(w: u64, z: u64, x: u64, y: u64) -> Self {
        Monomial { w, z, x, y }
    }

    /// Builds a monomial from signed exponents; `None` if any is negative.
    pub fn checked(w: i64, z: i64, x: i64, y: i64) -> Option<Self> {
        let ok = |e: i64| u64::try_from(e).ok();
        Some(Monomial {
            w: ok(w)?,
            z: ok(z)?,
            x: ok(x)?,
            y: ok(y)?,
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (name, e) in [("w", self.w), ("z", self.z), ("x", self.x), ("y", self.y)] {
            match e {
                0 => {}
                1 => {
                    write!(f, "{name}")?;
                    any = true;
                }
                _ => {
                    write!(f, "{name}^{e}")?;
                    any = true;
                }
            }
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// One serialized term; the coefficient is a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub e_w: u64,
    pub e_z: u64,
    pub e_x: u64,
    pub e_y: u64,
    pub coeff: String,
}

/// A Jacobi polynomial (or a difference of two): every term has
/// `e_w + e_z = t` and `e_x + e_y = n - t`, and no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiPolynomial {
    t: usize,
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl JacobiPolynomial {
    pub fn zero(t: usize, n: usize) -> Self {
        JacobiPolynomial {
            t,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, m: &Monomial) -> Result<()> {
        if m.w + m.z != self.t as u64 || (m.x + m.y) as usize + self.t != self.n {
            return Err(Error::NotBihomogeneous(m.w, m.z, m.x, m.y, self.t, self.n));
        }
        Ok(())
    }

    /// Adds `coeff · mono`, dropping the term if it cancels.
    pub fn add_term(&mut self, mono: Monomial, coeff: BigInt) -> Result<()> {
        self.check(&mono)?;
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(mono).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
        Ok(())
    }

    pub fn from_terms(
        t: usize,
        n: usize,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self> {
        let mut p = Self::zero(t, n);
        for (m, c) in terms {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    pub fn coefficient(&self, w: u64, z: u64, x: u64, y: u64) -> BigInt {
        self.terms
            .get(&Monomial::new(w, z, x, y))
            .cloned()
            .unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Value at `w = z = x = y = 1`.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.terms.values().any(|c| c.is_negative())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.t != other.t || self.n != other.n {
            return Err(Error::NotBihomogeneous(
                other.t as u64,
                0,
                other.n as u64,
                0,
                self.t,
                self.n,
            ));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero(self.t, self.n);
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c * factor)).collect();
        JacobiPolynomial {
            t: self.t,
            n: self.n,
            terms,
        }
    }

    /// Terms whose coefficients differ: `(monomial, self, other)`.
    pub fn diff_terms(&self, other: &Self) -> Vec<(Monomial, BigInt, BigInt)> {
        let keys: std::collections::BTreeSet<&Monomial> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .filter_map(|m| {
                let a = self.terms.get(m).cloned().unwrap_or_default();
                let b = other.terms.get(m).cloned().unwrap_or_default();
                (a != b).then_some((*m, a, b))
            })
            .collect()
    }

    pub fn records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermRecord {
                e_w: m.w,
                e_z: m.z,
                e_x: m.x,
                e_y: m.y,
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_records(t: usize, n: usize, records: &[TermRecord]) -> Result<Self> {
        let mut p = Self::zero(t, n);
        for r in records {
            let c: BigInt = r
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", r.coeff)))?;
            p.add_term(Monomial::new(r.e_w, r.e_z, r.e_x, r.e_y), c)?;
        }
        Ok(p)
    }
}

impl fmt::Display for JacobiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mono = m.to_string();
            match (mag.is_one(), mono == "1") {
                (true, false) => write!(f, "{mono}")?,
                (_, true) => write!(f, "{mag}")?,
                _ => write!(f, "{mag}{mono}")?,
            }
        }
        Ok(())
    }
}

/// Homogeneous weight enumerator `Σ A_ℓ x^(n-ℓ) y^ℓ`, keyed by `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    n: usize,
    terms: BTreeMap<usize, BigInt>,
}

impl WeightEnumerator {
    pub fn new(n: usize, terms: impl IntoIterator<Item = (usize, BigInt)>) -> Result<Self> {
        let mut out = WeightEnumerator {
            n,
            terms: BTreeMap::new(),
        };
        for (w, c) in terms {
            if w > n {
                return Err(Error::WeightOutOfRange(w, n));
            }
            if !c.is_zero() {
                *out.terms.entry(w).or_insert_with(BigInt::zero) += c;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, weight: usize) -> BigInt {
        self.terms.get(&weight).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The same data as a Jacobi polynomial with empty `T`.
    pub fn to_jacobi(&self) -> JacobiPolynomial {
        let terms = self.terms.iter().map(|(&w, c)| {
            (
                Monomial::new(0, 0, (self.n - w) as u64, w as u64),
                c.clone(),
            )
        });
        JacobiPolynomial::from_terms(0, self.n, terms).expect("homogeneous by construction")
    }
}

/// `C(n, i)` for `i = 0..=n`, built incrementally.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for i in 0..n {
        c = c * (n - i) / (i + 1);
        row.push(c.clone());
    }
    row
}

/// Coefficients of `(x + s y)^e`, indexed by the power of `y`.
pub fn linear_power(e: usize, s: &BigInt) -> Vec<BigInt> {
    let mut out = binomial_row(e);
    let mut pow = BigInt::one();
    for c in out.iter_mut() {
        *c *= &pow;
        pow *= s;
    }
    out
}

/// Full product of two dense coefficient vectors.
pub fn convolve(left: &[BigInt], right: &[BigInt]) -> Vec<BigInt> {
    if left.is_empty() || right.is_empty() {
        return Vec::new();
    }
    (0..left.len() + right.len() - 1)
        .map(|l| convolve_at(left, right, l))
        .collect()
}

/// Coefficient `l` of the product of two dense coefficient vectors.
pub fn convolve_at(left: &[BigInt], right: &[BigInt], l: usize) -> BigInt {
    let lo = l.saturating_sub(right.len().saturating_sub(1));
    let hi = l.min(left.len().saturating_sub(1));
    let mut acc = BigInt::zero();
    if left.is_empty() || right.is_empty() || lo > hi {
        return acc;
    }
    for i in lo..=hi {
        acc += &left[i] * &right[l - i];
    }
    acc
}

/// Coefficients of `(x + (q-1) y)^c (x - y)^d` by power of `y`.
///
/// With `s = q - 1` and `f(y) = (1 + s y)^c (1 - y)^d`, the identity
/// `(1 + s y)(1 - y) f' = ((cs - d) - s(c + d) y) f` gives a three-term
/// recurrence, so the expansion costs `O(c + d)` big-integer steps.
pub fn linear_pair_power(c: usize, d: usize, q: u64) -> Vec<BigInt> {
    let len = c + d + 1;
    let s = BigInt::from(q - 1);
    let (cb, db) = (BigInt::from(c), BigInt::from(d));
    let mut f = Vec::with_capacity(len);
    f.push(BigInt::one());
    if len > 1 {
        f.push(&cb * &s - &db);
    }
    for l in 1..len - 1 {
        let lb = BigInt::from(l);
        let lead = (&cb * &s - &db - (&s - 1) * &lb) * &f[l];
        let tail = &s * (&cb + &db - &lb + 1) * &f[l - 1];
        f.push((lead - tail) / (l + 1));
    }
    f
}

/// Exact division; errors when `divisor` does not divide `value`.
pub fn exact_div(value: &BigInt, divisor: &BigInt) -> Result<BigInt> {
    let (quot, rem) = value.div_rem(divisor);
    if !rem.is_zero() {
        return Err(Error::NonExactDivision {
            coeff: value.to_string(),
            divisor: divisor.to_string(),
        });
    }
    Ok(quot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Oracle: expand by repeated multiplication with a linear factor.
    fn naive_pair_power(c: usize, d: usize, q: i64) -> Vec<BigInt> {
        let mut poly = vec![bi(1)];
        let factors = std::iter::repeat_n((1, q - 1), c).chain(std::iter::repeat_n((1, -1), d));
        for (a, b) in factors {
            let mut next = vec![bi(0); poly.len() + 1];
            for (i, p) in poly.iter().enumerate() {
                next[i] += p * a;
                next[i + 1] += p * b;
            }
            poly = next;
        }
        poly
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_row(4), vec![bi(1), bi(4), bi(6), bi(4), bi(1)]);
        assert_eq!(binomial_row(0), vec![bi(1)]);
        assert_eq!(binomial_row(60)[30].to_string(), "118264581564861424");
    }

    #[test]
    fn pair_power_small() {
        // (x + 2y)(x - y)^2 = x^3 + 0 x^2 y - 3 x y^2 + 2 y^3
        assert_eq!(
            linear_pair_power(1, 2, 3),
            vec![bi(1), bi(0), bi(-3), bi(2)]
        );
        assert_eq!(linear_pair_power(0, 0, 5), vec![bi(1)]);
    }

    proptest! {
        #[test]
        fn pair_power_matches_naive(c in 0usize..12, d in 0usize..12, q in 2i64..9) {
            prop_assert_eq!(linear_pair_power(c, d, q as u64), naive_pair_power(c, d, q));
        }
    }

    #[test]
    fn terms_must_be_bihomogeneous() {
        let mut p = JacobiPolynomial::zero(2, 9);
        assert!(p.add_term(Monomial::new(2, 0, 7, 0), bi(1)).is_ok());
        assert!(p.add_term(Monomial::new(1, 0, 7, 0), bi(1)).is_err());
        assert!(p.add_term(Monomial::new(2, 0, 6, 0), bi(1)).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = JacobiPolynomial::zero(1, 2);
        let m = Monomial::new(1, 0, 1, 0);
        p.add_term(m, bi(3)).unwrap();
        p.add_term(m, bi(-3)).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.coefficient(1, 0, 1, 0), bi(0));
    }

    #[test]
    fn display_and_records() {
        let p = JacobiPolynomial::from_terms(
            2,
            9,
            [
                (Monomial::new(2, 0, 7, 0), bi(1)),
                (Monomial::new(2, 0, 1, 6), bi(2)),
                (Monomial::new(0, 2, 0, 7), bi(-2)),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "w^2x^7 + 2w^2xy^6 - 2z^2y^7");
        let back = JacobiPolynomial::from_records(2, 9, &p.records()).unwrap();
        assert_eq!(back, p);
        assert_eq!(p.eval_ones(), bi(1));
    }

    #[test]
    fn exact_division() {
        assert_eq!(exact_div(&bi(12), &bi(4)).unwrap(), bi(3));
        assert!(matches!(
            exact_div(&bi(13), &bi(4)),
            Err(Error::NonExactDivision { .. })
        ));
    }
}
