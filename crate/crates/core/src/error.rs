use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported")]
    UnsupportedCharacteristic(u64),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    ModulusMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("curve f(x) is singular (not squarefree)")]
    SingularCurve,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("H^0({m}D0) is outside the nonspecial range (m*d0 < 2g-1)")]
    SpecialRange { m: u32 },
    #[error("multiplication table ({0},{1}) is not available")]
    MissingTable(u32, u32),
    #[error("space H^0({0}D0) is not available")]
    MissingSpace(u32),
    #[error("curve validation failed: {0}")]
    Validation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("claimed degree {claimed} disagrees with codimension {codim}")]
    DegreeMismatch { claimed: usize, codim: usize },
    #[error("subspace is zero")]
    ZeroSpace,
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("class not representable after {0} attempts")]
    NotRepresentable(usize),

    #[error("invalid Mumford divisor: {0}")]
    InvalidMumford(String),
    #[error("no rational point found")]
    NoRationalPoint,

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
