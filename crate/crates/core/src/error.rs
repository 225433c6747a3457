use num_bigint::BigInt;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{a} and {b} are not coprime (gcd = {gcd})")]
    NotCoprime { a: BigInt, b: BigInt, gcd: BigInt },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("invalid offsets: {0}")]
    InvalidOffsets(String),

    #[error("resource ceiling exceeded: {0}")]
    ResourceLimit(String),
}

impl Error {
    /// Process exit code the CLI maps this error to: 3 for resource
    /// ceilings, 2 for every other input problem.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
