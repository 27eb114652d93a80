//! Dual-shell scan: for `C = RM_q(1, m)` with `q ≥ 3`, checks whether the
//! three-point Jacobi polynomials of `C⊥` for a rank-2 and a rank-1 set differ
//! in the `z^3 x^(n-ℓ) y^(ℓ-3)` coefficient of each nonempty dual shell `ℓ`.
//!
//! The dual difference is `(q-1) (x+(q-1)y)^A (x-y)^B (wy-xz)^3` with
//! `A = q^(m-1) - 3`, `B = (q-1) q^(m-1) - 3`; only the `(-xz)^3` part carries
//! `z^3`. A zero coefficient at a nonempty shell means both classes see the
//! same count there, so (with only these two classes present) the shell is a
//! 3-design.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{prime_power, FieldElement, FieldSpec};
use crate::grm::{classify, GrmCode, Point, PointSet, TClass, MAX_LENGTH};
use crate::jacobi::{closed_form, dual_jacobi};
use crate::poly::{exact_div, linear_pair_power, JacobiPolynomial, WeightEnumerator};

/// Default bound on `q^(2m)`.
pub const DEFAULT_BOUND: u128 = 10_000_000;

fn length(q: u64, m: usize) -> Result<usize> {
    q.checked_pow(m as u32)
        .map(|n| n as usize)
        .filter(|&n| n <= MAX_LENGTH)
        .ok_or(Error::CodeTooLarge { q: q as u32, m })
}

/// Weight enumerator of `RM_q(1, m)⊥`, by expanding the transform of the
/// three-term enumerator of `RM_q(1, m)` and dividing by `q^(m+1)`.
pub fn dual_weight_enumerator(q: u64, m: usize) -> Result<WeightEnumerator> {
    if m == 0 {
        return Err(Error::ZeroDimension);
    }
    let n = length(q, m)?;
    let base = n / q as usize;
    let size = num_traits::pow(BigInt::from(q), m + 1);
    let all = linear_pair_power(n, 0, q);
    let mid = linear_pair_power(base, n - base, q);
    let top = linear_pair_power(0, n, q);
    let mid_count = &size - q;
    let mut terms = Vec::with_capacity(n + 1);
    for l in 0..=n {
        let total = &all[l] + &mid_count * &mid[l] + (q - 1) * &top[l];
        let c = exact_div(&total, &size)?;
        if c.is_negative() {
            return Err(Error::NegativeCount {
                index: l,
                value: c.to_string(),
            });
        }
        terms.push((l, c));
    }
    WeightEnumerator::new(n, terms)
}

/// Exponents `(A, B)` of the dual difference; `None` for `m = 1`, where no
/// rank-2 set exists.
fn difference_exponents(q: u64, m: usize) -> Option<(usize, usize)> {
    let base = q.checked_pow(m.checked_sub(1)? as u32)? as usize;
    Some((base.checked_sub(3)?, (q as usize - 1) * base - 3))
}

/// Coefficient of `z^3 x^(n-ℓ) y^(ℓ-3)` in the dual difference polynomial,
/// as a streamed binomial convolution:
/// `-(q-1) Σ_i C(A,i) (q-1)^i C(B, ℓ-3-i) (-1)^(ℓ-3-i)`.
pub fn dual_diff_coefficient(q: u64, m: usize, ell: usize) -> Result<BigInt> {
    let n = length(q, m)?;
    if !(3..=n).contains(&ell) {
        return Err(Error::WeightOutOfRange(ell, n));
    }
    let (a, b) = difference_exponents(q, m).ok_or(Error::ClassNotRealizable(
        TClass::new(3, 2),
        q as u32,
        m,
    ))?;
    let e = ell - 3;
    if e > a + b {
        return Ok(BigInt::zero());
    }
    let lo = e.saturating_sub(b);
    let hi = e.min(a);
    let s = BigInt::from(q - 1);
    // left = C(A, i) (q-1)^i, right = C(B, e-i) (-1)^(e-i)
    let mut left = binomial(a, lo) * num_traits::pow(s.clone(), lo);
    let mut right = binomial(b, e - lo);
    if (e - lo) % 2 == 1 {
        right = -right;
    }
    let mut acc = BigInt::zero();
    for i in lo..=hi {
        acc += &left * &right;
        if i == hi {
            break;
        }
        left = left * (a - i) * &s / (i + 1);
        let k = e - i;
        right = -(right * k) / (b - k + 1);
    }
    Ok(-(s * acc))
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// `J_{C⊥,T1} - J_{C⊥,T2}` by transforming the three-point closed forms.
pub fn dual_difference_via_transform(q: u64, m: usize) -> Result<JacobiPolynomial> {
    let size = num_traits::pow(BigInt::from(q), m + 1);
    let d2 = dual_jacobi(&closed_form(q, m, TClass::new(3, 2))?, &size, q)?;
    let d1 = dual_jacobi(&closed_form(q, m, TClass::new(3, 1))?, &size, q)?;
    d2.sub(&d1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShellStatus {
    Empty,
    /// The two classes see different counts: not a 3-design.
    Distinguished,
    /// Equal counts for every class present: a 3-design.
    ThreeDesign,
    /// `ℓ = n`: every block is the full point set.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellCheck {
    pub ell: usize,
    pub nonempty: bool,
    pub diff_coeff: String,
    pub status: ShellStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Confirmed,
    Counterexample,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::Counterexample => "COUNTEREXAMPLE",
            Verdict::Skipped => "SKIPPED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub ell: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    /// Three-point classes found to occur.
    pub classes: Vec<TClass>,
    pub checked_shells: Vec<ShellCheck>,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub skip_reason: Option<String>,
    /// Every nonempty shell with `3 ≤ ℓ ≤ n - 3` is distinguished.
    pub window_confirmed: bool,
}

/// Three-point classes that occur, found by classifying explicit witnesses;
/// rank 2 is impossible when `m = 1`.
fn occurring_classes(q: u64, m: usize) -> Result<Vec<TClass>> {
    let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let code = GrmCode::new(FieldSpec::new(p, k)?, m)?;
    let unit = |j: usize, c: u32| {
        let mut v = vec![FieldElement::ZERO; m];
        v[j] = FieldElement::from_index_unchecked(c);
        Point(v)
    };
    let origin = Point(vec![FieldElement::ZERO; m]);
    let mut witnesses = vec![vec![origin.clone(), unit(0, 1), unit(0, 2)]];
    if m >= 2 {
        witnesses.push(vec![origin, unit(0, 1), unit(1, 1)]);
    }
    let mut out = Vec::new();
    for w in witnesses {
        out.push(classify(&code, &PointSet::new(&code, w)?)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Scans one `(q, m)` pair.
pub fn scan_pair(q: u64, m: usize) -> ScanResult {
    let skipped = |n: usize, reason: String| ScanResult {
        q,
        m,
        n,
        classes: Vec::new(),
        checked_shells: Vec::new(),
        verdict: Verdict::Skipped,
        counterexample: None,
        skip_reason: Some(reason),
        window_confirmed: false,
    };
    let n = match length(q, m) {
        Ok(n) => n,
        Err(e) => return skipped(0, e.to_string()),
    };
    if q < 3 {
        return skipped(n, "q < 3".into());
    }
    let run = || -> Result<(Vec<TClass>, Vec<ShellCheck>)> {
        let classes = occurring_classes(q, m)?;
        let dual = dual_weight_enumerator(q, m)?;
        let two_classes = classes.len() == 2;
        let shells = (3..=n)
            .into_par_iter()
            .map(|ell| {
                let nonempty = !dual.count(ell).is_zero();
                let coeff = if two_classes {
                    dual_diff_coefficient(q, m, ell)?
                } else {
                    BigInt::zero()
                };
                let status = match (nonempty, ell == n, coeff.is_zero()) {
                    (false, _, _) => ShellStatus::Empty,
                    (true, true, _) => ShellStatus::Trivial,
                    (true, false, false) => ShellStatus::Distinguished,
                    (true, false, true) => ShellStatus::ThreeDesign,
                };
                Ok(ShellCheck {
                    ell,
                    nonempty,
                    diff_coeff: coeff.to_string(),
                    status,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((classes, shells))
    };
    match run() {
        Err(e) => skipped(n, e.to_string()),
        Ok((classes, checked_shells)) => {
            let counterexample = checked_shells
                .iter()
                .find(|s| s.status == ShellStatus::ThreeDesign)
                .map(|s| Counterexample {
                    ell: s.ell,
                    coeff: s.diff_coeff.clone(),
                });
            let window_confirmed = checked_shells
                .iter()
                .filter(|s| s.nonempty && s.ell + 3 <= n)
                .all(|s| s.status == ShellStatus::Distinguished);
            let verdict = if counterexample.is_some() {
                Verdict::Counterexample
            } else {
                Verdict::Confirmed
            };
            ScanResult {
                q,
                m,
                n,
                classes,
                checked_shells,
                verdict,
                counterexample,
                skip_reason: None,
                window_confirmed,
            }
        }
    }
}

/// All `(q, m)` with `q ≥ 3` a prime power, `m ≥ 1` and `q^(2m) < bound`, in
/// `(q, m)` order.
pub fn scan_pairs(bound: u128) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    let mut q: u64 = 3;
    while (q as u128) * (q as u128) < bound {
        if prime_power(q).is_some() {
            let mut m = 1;
            while (q as u128)
                .checked_pow(2 * m as u32)
                .is_some_and(|v| v < bound)
            {
                out.push((q, m));
                m += 1;
            }
        }
        q += 1;
    }
    out
}

/// Scans every pair below `bound`; results are in `(q, m)` order regardless of
/// worker count.
pub fn conjecture_scan(bound: u128) -> Vec<ScanResult> {
    scan_pairs(bound)
        .into_par_iter()
        .map(|(q, m)| scan_pair(q, m))
        .collect()
}
