//! Design checks on codeword shells: from Jacobi coefficients per T-class and
//! by counting blocks directly.
//!
//! Blocks are counted with multiplicity, so the `q - 1` nonzero multiples of a
//! codeword contribute `q - 1` copies of the same support.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grm::{
    binomial_u128, census_through_origin, classify_positions, GrmCode, Subsets, TClass,
};
use crate::jacobi::{closed_form, closed_form_a_unchecked};

/// Default work budget (subset × block containment tests) for block counting.
pub const DEFAULT_BUDGET: u128 = 2_000_000_000;

/// Number of codewords of weight `ell`.
pub fn shell_size(code: &GrmCode, ell: usize) -> u64 {
    let q = code.q() as u64;
    if ell == 0 {
        1
    } else if ell == code.n() {
        q - 1
    } else if ell == code.min_weight() {
        code.size() - q
    } else {
        0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    JacobiExhaustive,
    JacobiRepresentatives,
    BlockCount,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::JacobiExhaustive => "jacobi-exhaustive",
            Method::JacobiRepresentatives => "jacobi-representatives",
            Method::BlockCount => "block-count",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedParams {
    pub v: usize,
    pub k: usize,
    /// Distinct λ values, in class order.
    pub lambdas: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub q: u32,
    pub m: usize,
    pub ell: usize,
    pub t: usize,
    pub method: Method,
    pub blocks: u64,
    pub lambda_by_class: BTreeMap<TClass, String>,
    pub is_t_design: bool,
    /// Every block is the full point set.
    pub trivial: bool,
    pub generalized_params: Option<GeneralizedParams>,
    /// Sum over all t-subsets of their block counts; present when every
    /// t-subset was visited.
    pub incidences: Option<String>,
}

impl DesignReport {
    fn build(
        code: &GrmCode,
        ell: usize,
        t: usize,
        method: Method,
        lambdas: BTreeMap<TClass, BigInt>,
        incidences: Option<BigInt>,
    ) -> Self {
        let distinct: Vec<&BigInt> = {
            let mut seen = BTreeSet::new();
            lambdas.values().filter(|v| seen.insert(*v)).collect()
        };
        let is_t_design = distinct.len() <= 1;
        let generalized_params = (!is_t_design).then(|| GeneralizedParams {
            v: code.n(),
            k: ell,
            lambdas: distinct.iter().map(|v| v.to_string()).collect(),
        });
        DesignReport {
            q: code.q(),
            m: code.m(),
            ell,
            t,
            method,
            blocks: shell_size(code, ell),
            lambda_by_class: lambdas
                .into_iter()
                .map(|(c, v)| (c, v.to_string()))
                .collect(),
            is_t_design,
            trivial: ell == code.n(),
            generalized_params,
            incidences: incidences.map(|v| v.to_string()),
        }
    }

    /// Distinct λ values as decimal strings.
    pub fn distinct_lambdas(&self) -> BTreeSet<String> {
        self.lambda_by_class.values().cloned().collect()
    }

    pub fn verdict(&self) -> &'static str {
        match (self.trivial, self.is_t_design) {
            (true, _) => "trivial",
            (false, true) => "design",
            (false, false) => "not-design",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiMode {
    /// Classify every t-subset of `V`.
    Exhaustive,
    /// Classify the t-subsets through the origin, which reach every class.
    Representatives,
}

fn check_shell(code: &GrmCode, ell: usize) -> Result<()> {
    if ell > code.n() {
        return Err(Error::WeightOutOfRange(ell, code.n()));
    }
    if shell_size(code, ell) == 0 {
        return Err(Error::EmptyShell(ell));
    }
    Ok(())
}

fn lambda_from(j: &crate::poly::JacobiPolynomial, n: usize, ell: usize, t: usize) -> BigInt {
    if ell < t {
        return BigInt::zero();
    }
    j.coefficient(0, t as u64, (n - ell) as u64, (ell - t) as u64)
}

/// λ per T-class from the coefficient of `z^t x^(n-ℓ) y^(ℓ-t)` of the closed
/// forms.
pub fn design_check_jacobi(
    code: &GrmCode,
    ell: usize,
    t: usize,
    mode: JacobiMode,
) -> Result<DesignReport> {
    check_shell(code, ell)?;
    if !(2..=4).contains(&t) {
        return Err(Error::UnsupportedSize(t, "2..=4"));
    }
    let classes: BTreeSet<TClass> = match mode {
        JacobiMode::Exhaustive => {
            let n = code.n();
            (0..n)
                .into_par_iter()
                .map(|first| {
                    let mut seen = BTreeSet::new();
                    for s in Subsets::starting_with(n, t, first) {
                        seen.insert(classify_positions(code, &s)?);
                    }
                    Ok(seen)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect()
        }
        JacobiMode::Representatives => census_through_origin(code, t)?.into_keys().collect(),
    };
    let q = code.q() as u64;
    let mut lambdas = BTreeMap::new();
    for class in classes {
        let j = closed_form(q, code.m(), class)?;
        lambdas.insert(class, lambda_from(&j, code.n(), ell, t));
    }
    let method = match mode {
        JacobiMode::Exhaustive => Method::JacobiExhaustive,
        JacobiMode::Representatives => Method::JacobiRepresentatives,
    };
    Ok(DesignReport::build(code, ell, t, method, lambdas, None))
}

/// The supports of a shell, one bitset per codeword.
#[derive(Clone, Debug)]
pub struct BlockMultiset {
    n: usize,
    ell: usize,
    blocks: Vec<Vec<u64>>,
}

impl BlockMultiset {
    /// Supports found by evaluating every codeword at every position.
    pub fn from_shell(code: &GrmCode, ell: usize) -> Self {
        let words = code.n().div_ceil(64);
        let blocks = code
            .shell(ell)
            .iter()
            .map(|c| {
                let mut bits = vec![0u64; words];
                for p in code.support(c) {
                    bits[p / 64] |= 1 << (p % 64);
                }
                bits
            })
            .collect();
        BlockMultiset {
            n: code.n(),
            ell,
            blocks,
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_size(&self) -> usize {
        self.ell
    }

    pub fn blocks(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.blocks.iter().map(|b| {
            (0..self.n)
                .filter(|&p| b[p / 64] >> (p % 64) & 1 == 1)
                .collect()
        })
    }

    /// Blocks (with multiplicity) containing every position of `subset`.
    pub fn count_containing(&self, subset: &[usize]) -> u64 {
        let mut mask = vec![0u64; self.blocks.first().map_or(0, |b| b.len())];
        for &p in subset {
            mask[p / 64] |= 1 << (p % 64);
        }
        self.blocks
            .iter()
            .filter(|b| b.iter().zip(&mask).all(|(x, y)| x & y == *y))
            .count() as u64
    }
}

fn merge_counts(
    mut a: BTreeMap<TClass, BTreeSet<u64>>,
    b: BTreeMap<TClass, BTreeSet<u64>>,
) -> BTreeMap<TClass, BTreeSet<u64>> {
    for (k, v) in b {
        a.entry(k).or_default().extend(v);
    }
    a
}

fn uniform(counts: BTreeMap<TClass, BTreeSet<u64>>) -> Result<BTreeMap<TClass, BigInt>> {
    counts
        .into_iter()
        .map(|(class, values)| {
            if values.len() != 1 {
                return Err(Error::NonUniformClass {
                    class,
                    values: values.into_iter().collect(),
                });
            }
            Ok((class, BigInt::from(*values.first().expect("one value"))))
        })
        .collect()
}

/// Counts blocks over every t-subset of positions; λ is keyed by the class of
/// the subset. Fails if a class sees more than one count.
pub fn design_check_bruteforce(
    code: &GrmCode,
    ell: usize,
    t: usize,
    budget: u128,
) -> Result<DesignReport> {
    check_shell(code, ell)?;
    if !(2..=4).contains(&t) {
        return Err(Error::UnsupportedSize(t, "2..=4"));
    }
    let n = code.n();
    let work = binomial_u128(n as u64, t as u64) * shell_size(code, ell) as u128;
    if work > budget {
        return Err(Error::BudgetExceeded { work, budget });
    }
    let blocks = BlockMultiset::from_shell(code, ell);
    let (counts, total) = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut counts: BTreeMap<TClass, BTreeSet<u64>> = BTreeMap::new();
            let mut total = 0u128;
            for s in Subsets::starting_with(n, t, first) {
                let c = blocks.count_containing(&s);
                total += c as u128;
                counts
                    .entry(classify_positions(code, &s)?)
                    .or_default()
                    .insert(c);
            }
            Ok((counts, total))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold((BTreeMap::new(), 0u128), |(ca, ta), (cb, tb)| {
            (merge_counts(ca, cb), ta + tb)
        });
    let lambdas = uniform(counts)?;
    Ok(DesignReport::build(
        code,
        ell,
        t,
        Method::BlockCount,
        lambdas,
        Some(BigInt::from(total)),
    ))
}

/// Block counts of the given t-subsets, grouped by class (all values seen).
pub fn sampled_block_counts(
    code: &GrmCode,
    ell: usize,
    subsets: &[Vec<usize>],
) -> Result<BTreeMap<TClass, BTreeSet<u64>>> {
    check_shell(code, ell)?;
    let blocks = BlockMultiset::from_shell(code, ell);
    subsets
        .par_iter()
        .map(|s| Ok((classify_positions(code, s)?, blocks.count_containing(s))))
        .collect::<Result<Vec<_>>>()
        .map(|v| {
            v.into_iter().fold(
                BTreeMap::new(),
                |mut acc: BTreeMap<TClass, BTreeSet<u64>>, (c, x)| {
                    acc.entry(c).or_default().insert(x);
                    acc
                },
            )
        })
}

/// One class of the generalized-design parameter list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassLambda {
    pub class: TClass,
    /// Formula value, possibly negative; `None` when the rank exceeds `m`.
    pub formula: Option<String>,
    /// Whether some t-subset of `V` has this class.
    pub occurs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedDesign {
    pub v: usize,
    pub k: usize,
    pub t: usize,
    /// λ of the occurring classes, in class order.
    pub lambdas: Vec<String>,
    pub classes: Vec<ClassLambda>,
}

/// `(v, k, (λ_1, …))` for the minimum-weight shell, t = 3 (rank 2, rank 1) or
/// t = 4 (rank 3, collinear, generic, rank 1). Classes are checked for
/// occurrence by census; formula values are reported even when negative.
pub fn generalized_design_params(
    code: &GrmCode,
    ell: usize,
    t: usize,
) -> Result<GeneralizedDesign> {
    if ell != code.min_weight() || !(3..=4).contains(&t) {
        return Err(Error::UnsupportedDesignParams);
    }
    let present = census_through_origin(code, t)?;
    let q = code.q() as u64;
    let mut classes = Vec::new();
    for class in TClass::all_for_size(t) {
        let formula = match closed_form_a_unchecked(q, code.m(), class) {
            Ok(a) => Some(a[t].to_string()),
            Err(Error::ClassNotRealizable(..)) => None,
            Err(e) => return Err(e),
        };
        classes.push(ClassLambda {
            class,
            formula,
            occurs: present.contains_key(&class),
        });
    }
    let lambdas = classes
        .iter()
        .filter(|c| c.occurs)
        .filter_map(|c| c.formula.clone())
        .collect();
    Ok(GeneralizedDesign {
        v: code.n(),
        k: ell,
        t,
        lambdas,
        classes,
    })
}
