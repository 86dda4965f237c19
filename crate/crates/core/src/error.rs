use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u32, right: u32 },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u64, found: u64 },

    #[error("{0}")]
    OutOfRange(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error(
        "fraction-free determinant {exact} disagrees with determinant {modular} mod {modulus}"
    )]
    DeterminantMismatch {
        modulus: u64,
        exact: String,
        modular: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
