use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range")]
    BadModulus(i64),
    #[error("T^2 + {a}T + {b} is reducible over F_{q}")]
    Reducible { q: u32, a: u32, b: u32 },
    #[error("degree {0} exceeds the supported cap")]
    DegreeCap(usize),
    #[error("coefficient index {index} lies outside the known window [{lo}, {hi})")]
    Precision { index: i64, lo: i64, hi: i64 },
    #[error("cyclotomic value is not a rational integer")]
    NotRational,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("target is not in the rational span of the basis")]
    NoSolution,
    #[error("solution is not integral")]
    NotIntegral,
    #[error("structure mismatch: {0}")]
    StructureMismatch(String),
    #[error("formula produced a non-integer: {0}")]
    NonIntegral(String),
    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),
    #[error("no candidate found within the search bound")]
    NotFound,
    #[error("no intertwiner verified for the given pairing")]
    NoIntertwiner,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
