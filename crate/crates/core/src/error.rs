use thiserror::Error;

use crate::grm::TClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} exceeds the supported size (q <= {max})")]
    FieldTooLarge { p: u64, k: u32, max: u64 },
    #[error("no monic irreducible polynomial of degree {k} over F_{p} was found")]
    NoIrreducible { p: u64, k: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element index {index} is out of range for F_{q}")]
    ElementOutOfRange { index: u32, q: u32 },
    #[error("dimension m must be at least 1")]
    ZeroDimension,
    #[error("code length q^m overflows the enumeration budget (q = {q}, m = {m})")]
    CodeTooLarge { q: u32, m: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointDimension { got: usize, expected: usize },
    #[error("point set contains a repeated point at positions {first} and {second}")]
    RepeatedPoint { first: usize, second: usize },
    #[error("unsupported position-set size {0} (expected {1})")]
    UnsupportedSize(usize, &'static str),
    #[error("count tables require a position set containing the origin")]
    MissingOrigin,
    #[error("class {0} cannot occur for q = {1}, m = {2}")]
    ClassNotRealizable(TClass, u32, usize),
    #[error("formula for class {0} is not applicable at q = {1}, m = {2}: {3}")]
    FormulaNotApplicable(TClass, u32, usize, String),
    #[error("monomial has a negative exponent with nonzero coefficient")]
    NegativeExponent,
    #[error(
        "term breaks bi-homogeneity: (w, z, x, y) = ({0}, {1}, {2}, {3}) for t = {4}, n = {5}"
    )]
    NotBihomogeneous(u64, u64, u64, u64, usize, usize),
    #[error("coefficient {coeff} is not divisible by {divisor}")]
    NonExactDivision { coeff: String, divisor: String },
    #[error("vector length {got} does not match t + 1 = {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("negative count a[{index}] = {value} (counting bug)")]
    NegativeCount { index: usize, value: String },
    #[error("shell of weight {0} is empty")]
    EmptyShell(usize),
    #[error("position {0} is out of range for length {1}")]
    PositionOutOfRange(usize, usize),
    #[error("weight {0} is out of range for length {1}")]
    WeightOutOfRange(usize, usize),
    #[error("work estimate {work} exceeds the budget {budget}")]
    BudgetExceeded { work: u128, budget: u128 },
    #[error("t-subsets of class {class} lie in differing numbers of blocks: {values:?}")]
    NonUniformClass { class: TClass, values: Vec<u64> },
    #[error("generalized design parameters are defined only for the minimum-weight shell and t in {{3, 4}}")]
    UnsupportedDesignParams,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0}")]
    Parse(String),
}
