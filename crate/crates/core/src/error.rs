use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid permutation `{0}` (expected e, 12, 13, 23, 123 or 132, optionally parenthesized)")]
    InvalidPerm(String),
    #[error("invalid map triple `{0}` (expected a form like \"(e,13,e)\")")]
    InvalidTriple(String),
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("point is not in the triangle: {0}")]
    OutsideSimplex(String),
    #[error("undefined point: zero renormalization denominator")]
    UndefinedPoint,
    #[error("Gauss step undefined: {0}")]
    GaussUndefined(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("query needs factor length {requested} but the reliable window is {reliable}")]
    WindowExceeded { requested: usize, reliable: usize },
    #[error("`{0}` is not a factor of the language")]
    NotAFactor(String),
    #[error("antecedent undefined for `{0}`")]
    NoAntecedent(String),
    #[error("coding exhausted: {0}")]
    CodingExhausted(String),
    #[error("disallowed extension parameters: {0}")]
    Disallowed(String),
    #[error("matrix has a negative entry")]
    NegativeEntry,
}

pub type Result<T> = std::result::Result<T, Error>;
