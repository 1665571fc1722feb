use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("factor index {0} is not 1 or 2")]
    BadFactorIndex(u8),
    #[error("character is not Weyl invariant at weight {0:?}")]
    NotWeylInvariant(Vec<i32>),
    #[error("incompatible factor counts {0} and {1}")]
    FactorMismatch(u8, u8),
    #[error("plethysm is only defined here for single-factor characters")]
    PlethysmOfProduct,
    #[error("character is virtual: multiplicity {mult} at weight {weight:?} after peeling")]
    NotEffective { weight: Vec<i32>, mult: i64 },
    #[error("local data at different primes: {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("decomposition needs {expected} Hecke data, got {got}")]
    HeckeArity { expected: usize, got: usize },
    #[error("exact mode requires integral input: {0}")]
    OverflowPolicy(String),
    #[error("invalid Hecke data: {0}")]
    InvalidHecke(String),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("weight {0} does not index a one-dimensional level-one cusp space")]
    UnsupportedWeight(u32),
    #[error("missing prime data for {0:?}")]
    MissingPrime(Vec<u64>),
    #[error("schema error at `{0}`")]
    SchemaError(String),
    #[error("invariant violated: {0}")]
    InvariantError(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("series is not self-dual: {0}")]
    NotSelfDual(String),
    #[error("accuracy unreachable: {0}")]
    AccuracyUnreachable(String),
    #[error("evaluation paths disagree: {0}")]
    Disagreement(String),
    #[error("norm must be positive, got {0}")]
    NonPositiveNorm(f64),
    #[error("positivity of the coefficients has not been verified for `{0}`")]
    PositivityUnverified(String),
    #[error("prerequisite failed: {0}")]
    PrerequisiteFailed(String),
    #[error("unknown identity tag `{0}`")]
    UnknownIdentityTag(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("exact coefficients are irrational at p = {0}; use float mode or arithmetic normalization")]
    IrrationalCoefficients(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
