use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid characteristic {0}: expected 0 or an odd prime")]
    InvalidCharacteristic(u64),
    #[error("polynomials or ideals live in different rings")]
    RingMismatch,
    #[error("exponent vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("too many variables: {0} (at most {max})", max = crate::polyalg::MAX_VARS)]
    TooManyVariables(usize),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("block order eliminates {0} variables but the ring has only {1}")]
    InvalidBlock(usize, usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("expected a monomial ideal")]
    NotMonomial,
    #[error("expected a homogeneous ideal")]
    NotHomogeneous,
    #[error("operation requires a degree-compatible monomial order")]
    NotDegreeCompatible,
    #[error("ring map is malformed: {0}")]
    InvalidMap(String),
    #[error("exact division failed: {0}")]
    DivisionFailure(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
