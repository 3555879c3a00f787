use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field order {order} exceeds the supported maximum of 256")]
    FieldTooLarge { order: u64 },
    #[error("no irreducible polynomial of degree {m} over GF({p})")]
    NoIrreducible { p: u32, m: u32 },
    #[error("division by zero in GF({0})")]
    ZeroInverse(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed array: {0}")]
    MalformedArray(String),
    #[error("{0}")]
    Io(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("generator matrix has rank {rank} < {rows}")]
    RankDeficient { rank: usize, rows: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("size guard: {0}")]
    TooLarge(String),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),
    #[error("not a density matrix: {0}")]
    NotDensity(String),
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("scheme error: {0}")]
    Scheme(String),
}

pub type Result<T> = std::result::Result<T, Error>;
