use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be an odd prime (got {0})")]
    NotOddPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{m} exceeds the supported size")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("q = {0} must be odd")]
    EvenOrder(u64),
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("element index {index} is outside a field of order {q}")]
    ForeignElement { index: u64, q: u64 },
    #[error("{n} does not divide q - 1 = {q_minus_one}; the roots of unity lie in an extension")]
    NoRootOfUnity { n: u64, q_minus_one: u64 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("reciprocal is undefined for a polynomial with zero constant term")]
    ZeroConstantTerm,
    #[error("{0} is not a canonical coset representative")]
    NotARepresentative(u64),
    #[error("minimal polynomial of coset {0} has a coefficient outside the base field")]
    CoefficientOutsideBase(u64),
    #[error("extension of degree {0} is too large to search")]
    ExtensionTooLarge(u32),
    #[error("exponent {exp} at representative {rep} exceeds p^s = {max}")]
    ExponentOutOfRange { rep: u64, exp: u64, max: u64 },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("factor {0} is not irreducible over the base field")]
    NotIrreducible(String),
    #[error("factor {factor} does not divide x^{n} - 1")]
    NotAFactor { factor: String, n: u64 },
    #[error("polynomial does not divide x^{0} - 1")]
    NotADivisor(u64),
    #[error("enumeration of {needed} items exceeds the budget of {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("codes have different ambient parameters")]
    MismatchedAmbient,
    #[error("t = {t} is outside 0..{bound}")]
    LayerOutOfRange { t: u64, bound: u64 },
    #[error("interval lookup needs 1 <= l <= p^s - 1 (got l = {0})")]
    IntervalOutOfRange(u64),
    #[error("closed-form evaluation needs q = 2^a*b + 1 with a >= r")]
    NotSplitCase,
    #[error("{0}")]
    Precondition(String),
    #[error("quantum Singleton bound violated: k = {k} > n - 2d + 2 with n = {n}, d = {d}")]
    SingletonViolation { n: u64, k: u64, d: u64 },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
