//! Exact arithmetic in `F_q`, `q = p^k`.
//!
//! An element is stored as its index in `[0, q)`: the base-`p` digits of the
//! index are the coefficients `c_0, ..., c_{k-1}` of `c_0 + c_1 α + ... +
//! c_{k-1} α^{k-1}`, where `α` is a root of the field's modulus. Index 0 is
//! zero, index 1 is one, and for `k > 1` index `p` is `α`.
//!
//! The modulus is the lexicographically least monic irreducible polynomial of
//! degree `k` over `F_p`, comparing coefficient lists `(c_0, ..., c_k)` from
//! the constant term upwards. This fixes the element order across runs.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_ORDER: u64 = 1 << 16;

/// Operation tables are materialized below this order.
const TABLE_ORDER: u32 = 256;

#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps an index without range checking; see [`FieldSpec::element`].
    pub const fn from_index_unchecked(index: u32) -> Self {
        FieldElement(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

#[derive(Debug)]
struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// The field `F_{p^k}`. Cheap to clone and safe to share between threads.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.k == other.inner.k
            && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decomposes `q = p^k`; `None` unless `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // no factor up to sqrt(q): q is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

impl FieldSpec {
    /// Builds `F_{p^k}` with the lexicographically least monic irreducible
    /// modulus of degree `k`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge {
                p,
                k,
                max: MAX_ORDER,
            })?;
        let p = p as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, k as usize).ok_or(Error::NoIrreducible { p: p as u64, k })?
        };
        let mut inner = Inner {
            p,
            k,
            q: q as u32,
            modulus,
            tables: None,
        };
        if inner.q <= TABLE_ORDER {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldSpec {
            inner: Arc::new(inner),
        })
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, k)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Coefficients `(c_0, ..., c_k)` of the modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q() {
            Ok(FieldElement(index))
        } else {
            Err(Error::ElementOutOfRange { index, q: self.q() })
        }
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q()).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(t) => FieldElement(t.add[self.slot(a, b)]),
            None => FieldElement(raw_add(&self.inner, a.0, b.0)),
        }
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(t) => FieldElement(t.mul[self.slot(a, b)]),
            None => FieldElement(raw_mul(&self.inner, a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(t) => FieldElement(t.neg[a.0 as usize]),
            None => FieldElement(raw_neg(&self.inner, a.0)),
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, computed as `a^(q-2)`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match &self.inner.tables {
            Some(t) => FieldElement(t.inv[a.0 as usize]),
            None => self.pow(a, self.q() as u64 - 2),
        })
    }

    /// Renders an element as a polynomial in `a` (the modulus root).
    pub fn describe(&self, e: FieldElement) -> String {
        let digits = to_digits(&self.inner, e.0);
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            parts.push(match i {
                0 => coeff,
                1 => format!("{coeff}a"),
                _ => format!("{coeff}a^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    #[inline]
    fn slot(&self, a: FieldElement, b: FieldElement) -> usize {
        a.0 as usize * self.inner.q as usize + b.0 as usize
    }
}

fn to_digits(f: &Inner, mut index: u32) -> Vec<u32> {
    let mut out = vec![0; f.k as usize];
    for d in out.iter_mut() {
        *d = index % f.p;
        index /= f.p;
    }
    out
}

fn from_digits(f: &Inner, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * f.p + d)
}

fn raw_add(f: &Inner, a: u32, b: u32) -> u32 {
    if f.k == 1 {
        return (a + b) % f.p;
    }
    let (da, db) = (to_digits(f, a), to_digits(f, b));
    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % f.p).collect();
    from_digits(f, &sum)
}

fn raw_neg(f: &Inner, a: u32) -> u32 {
    if f.k == 1 {
        return (f.p - a) % f.p;
    }
    let d: Vec<u32> = to_digits(f, a).iter().map(|x| (f.p - x) % f.p).collect();
    from_digits(f, &d)
}

fn raw_mul(f: &Inner, a: u32, b: u32) -> u32 {
    let p = f.p as u64;
    if f.k == 1 {
        return ((a as u64 * b as u64) % p) as u32;
    }
    let (da, db) = (to_digits(f, a), to_digits(f, b));
    let mut prod = vec![0u64; da.len() + db.len() - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
        }
    }
    let k = f.k as usize;
    // reduce with α^k = -(c_0 + ... + c_{k-1} α^{k-1})
    for deg in (k..prod.len()).rev() {
        let lead = prod[deg];
        if lead == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &c) in f.modulus[..k].iter().enumerate() {
            let slot = deg - k + i;
            prod[slot] = (prod[slot] + (p - lead) * c as u64) % p;
        }
    }
    let digits: Vec<u32> = prod[..k].iter().map(|&d| d as u32).collect();
    from_digits(f, &digits)
}

fn build_tables(f: &Inner) -> Tables {
    let q = f.q as usize;
    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    for a in 0..q {
        for b in 0..q {
            add[a * q + b] = raw_add(f, a as u32, b as u32);
            mul[a * q + b] = raw_mul(f, a as u32, b as u32);
        }
    }
    let neg = (0..q as u32).map(|a| raw_neg(f, a)).collect();
    let mut inv = vec![0; q];
    for a in 1..q {
        inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u32;
    }
    Tables { add, mul, neg, inv }
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c as u64 % p) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Monic polynomials of degree `deg` over `F_p`, coefficient lists in
/// lexicographic order of `(c_0, ..., c_{deg-1})`.
fn monic_polys(p: u32, deg: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(deg as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u32; deg + 1];
        coeffs[deg] = 1;
        // c_0 is the most significant digit of idx
        for slot in (0..deg).rev() {
            coeffs[slot] = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        coeffs
    })
}

pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() - 1;
    (1..=k / 2).all(|d| monic_polys(p, d).all(|f| poly_rem(poly, &f, p).iter().any(|&c| c != 0)))
}

fn least_irreducible(p: u32, k: usize) -> Option<Vec<u32>> {
    monic_polys(p, k).find(|f| is_irreducible(f, p))
}
