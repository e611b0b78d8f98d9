use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: i64, modulus: u64 },

    #[error("moduli {0} and {1} are not coprime")]
    ModuliNotCoprime(u64, u64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("value out of supported range: {0}")]
    RangeExceeded(String),

    #[error("class cap of {cap} exceeded")]
    ClassCapExceeded { cap: u64 },

    #[error("oracle is limited to n <= {max_degree} and g <= {max_genus}")]
    OracleRangeExceeded { max_degree: u64, max_genus: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}
