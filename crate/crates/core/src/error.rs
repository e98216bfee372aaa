use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(String),

    #[error("coefficient index {index} exceeds truncation order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("substitution u -> u^{0} requires a positive power")]
    InvalidSubstitution(usize),

    #[error("value {value} is not an integer where an integral count was expected ({context})")]
    NonIntegral { value: String, context: String },

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    #[error("q = {0} must be odd for this formula")]
    EvenQ(String),

    #[error("q = {0} is not a prime power")]
    NotPrimePower(String),

    #[error("q = {q} does not match the {expected} characteristic of {family}")]
    ParityMismatch {
        q: String,
        expected: &'static str,
        family: String,
    },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("{0} has no series in this characteristic")]
    UnsupportedFamily(String),

    #[error("degree must be at least 1, got {0}")]
    InvalidDegree(usize),

    #[error("e = {e} does not divide q - 1 = {q_minus_one}")]
    IndexNotDividing { e: u64, q_minus_one: u64 },

    #[error("k(H(i,q)) values are required for e = {e}, q = {q} up to n = {n}")]
    MissingBaseline { e: u64, q: u64, n: usize },

    #[error("group of order {required} exceeds the element cap {cap}")]
    CapExceeded { required: u128, cap: u128 },

    #[error("no {0}")]
    NoSuchForm(String),

    #[error("unsupported field order {0}")]
    UnsupportedField(u64),

    #[error("dimension {0} is outside the supported range")]
    UnsupportedDimension(usize),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
