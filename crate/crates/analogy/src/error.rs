use thiserror::Error;

/// Domain errors shared by all library modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input must be a strictly positive finite number, got {0}")]
    NonPositive(f64),
    #[error("input must be a nonzero finite number, got {0}")]
    NonFiniteOrZero(f64),
    #[error("finite power must be nonzero and finite, got {0}")]
    InvalidPower(f64),
    #[error("finite power magnitude below 1e-8 is not evaluated; route |p| < 1e-8 to the zero (geometric) power")]
    TinyFinitePower,
    #[error("empty value list")]
    EmptyList,
    #[error("quadruple must be all-positive for this operation (sign mode {0})")]
    NotAllPositive(&'static str),
    #[error("quadruple sign mode {0} is not supported by negative normalization")]
    UnsupportedSignMode(&'static str),
    #[error("terms must be sorted ascending")]
    Unsorted,
    #[error("terms must be pairwise distinct")]
    NotDistinct,
    #[error("last term must be the maximal term")]
    LastNotMaximal,
    #[error("scale factor must be strictly positive, got {0}")]
    NonPositiveScale(f64),
    #[error("composition exponent must be nonzero")]
    ZeroExponent,
    #[error("infinite powers are not supported by this operation")]
    InfinitePower,
    #[error("boolean terms must be 0 or 1, got {0}")]
    NotBoolean(f64),
    #[error("complex term must be nonzero")]
    ZeroComplexTerm,
    #[error("invalid scan interval [{0}, {1}] with {2} points")]
    InvalidInterval(f64, f64, usize),
    #[error("invalid grid specification: {0}")]
    InvalidGridSpec(String),
    #[error("write failed: {0}")]
    Write(String),
}

pub type Result<T> = std::result::Result<T, Error>;
