use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("coefficient `{coeff}` is not an element of {field}")]
    CoefficientNotInField { coeff: String, field: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid variable declaration: {0}")]
    InvalidVariable(String),

    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("polynomial `{0}` is not homogeneous")]
    NotHomogeneous(String),

    #[error("ideals live in different rings")]
    RingMismatch,

    #[error("resource limit hit: {0}")]
    ResourceLimit(String),

    #[error("operation requires positive characteristic")]
    CharacteristicZero,

    #[error("{q} is not a power of the characteristic {p}")]
    NotPowerOfCharacteristic { q: u64, p: u64 },

    #[error("radical hypothesis fails: {0}")]
    RadicalViolation(String),

    #[error("not a homogeneous system of parameters: {0}")]
    NotHsop(String),

    #[error("quotient does not have finite length: {0}")]
    InfiniteLength(String),

    #[error("identity violated: {identity}: {detail}")]
    IdentityViolation { identity: String, detail: String },

    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Format(String),
}

impl Error {
    /// True when the error comes from a configured resource cap rather
    /// than from bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
