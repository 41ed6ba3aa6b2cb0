use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a two-bridge link: p = {0} (need p >= 2)")]
    NotTwoBridge(i64),
    #[error("p and q are not coprime: gcd({p}, {q}) != 1")]
    NotCoprime { p: i64, q: i64 },
    #[error("q is congruent to 0 mod p")]
    DegenerateFraction,
    #[error("knot has one component")]
    KnotHasOneComponent,
    #[error("matrix is not of full rank")]
    NotFullRank,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero twist parameter")]
    ZeroTwist,
    #[error("not genus one")]
    NotGenusOne,
    #[error("base case: {0}")]
    BaseCase(String),
    #[error("gradings are not incremental (steps must be +1 or -1)")]
    NotIncremental,
    #[error("path is not closable (endpoint gradings differ)")]
    NotClosable,
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("not a contiguous arc of the cycle")]
    NotAnArc,
    #[error("cycle reduction failed: {0}")]
    Reduce(String),
    #[error("witness construction failed: {0}")]
    Witness(String),
    #[error("nested word condition {0} failed")]
    NestedWord(String),
    #[error("chain invariant violated: {0}")]
    ChainInvariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
