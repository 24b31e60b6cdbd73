use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p and q must be distinct (got {0})")]
    EqualPrimes(u64),
    #[error("p^2 q = {order} exceeds the configured bound {bound}")]
    OrderTooLarge { order: u64, bound: u64 },
    #[error("element index {index} out of range for a carrier of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },
    #[error("element {0} does not belong to this carrier")]
    BadElement(String),
    #[error("invalid automorphism: {0}")]
    BadAutomorphism(String),
    #[error("constant `{name}` is not defined for (p, q) = ({p}, {q})")]
    ConstantNotFound { name: &'static str, p: u64, q: u64 },
    #[error("closure exceeded the size cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("subgroup is not regular")]
    NotRegular,
    #[error("carriers differ")]
    SpecMismatch,
    #[error("(p, q) = (2, 3) is excluded: braces of order 12 are covered by the GAP YangBaxter package")]
    Excluded12,
    #[error("the oracle refuses |Hol(A)| = {size} above its bound {bound}")]
    OracleBound { size: u64, bound: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unrecognised multiplicative group: {0}")]
    UnrecognisedGroup(String),
    #[error("{0} is not a subgroup of the carrier")]
    NotSubgroup(String),
    #[error("malformed brace data: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
