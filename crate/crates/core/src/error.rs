use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// p = 2 or a non-prime modulus.
    #[error("unsupported prime {0}: only odd primes are handled")]
    UnsupportedPrime(u64),

    #[error("group of order {order} exceeds the configured bound {bound}{hint}")]
    SizeExceeded {
        order: usize,
        bound: usize,
        hint: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),

    /// Elements or subgroups of two different groups were combined.
    #[error("elements belong to different groups")]
    GroupMismatch,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported group family: {0}")]
    Unsupported(String),

    #[error("cannot parse group spec {input:?}: {reason}")]
    Parse { input: String, reason: String },

    /// A computation that the theory guarantees to succeed did not.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
