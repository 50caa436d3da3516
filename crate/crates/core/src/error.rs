use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),
    #[error("field size {0} is outside the supported range [2, 256]")]
    UnsupportedField(usize),
    #[error("element 0 has no multiplicative inverse")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("code has {0} words, at least 2 are needed")]
    TooSmall(usize),
    #[error("code would have {0} words, more than the supported maximum")]
    TooLarge(u128),
    #[error("duplicate codeword {0}")]
    DuplicateWord(String),
    #[error("subcode word {0} is not in the ambient code")]
    NotSubcode(String),
    #[error("ambient code is not a union of cosets: {0} is missing")]
    NotCosetClosed(String),
    #[error("length {n} is not (q^m - 1)/(q - 1) for q = {q} and any m >= 2")]
    LengthNotAdmissible { q: usize, n: usize },
    #[error("character sums need a prime field, got q = {0}")]
    NonPrimeField(usize),
    #[error("code is not 1-perfect")]
    NotPerfect,
    #[error("{0} is not orthogonal to every codeword")]
    NotDualWord(String),
    #[error("dual word has weight {found}, expected {expected}")]
    WrongWeight { expected: usize, found: usize },
    #[error("the decomposition is not defined over GF(2)")]
    BinaryFieldUnsupported,
    #[error("invalid partition: {0}")]
    PartitionInvalid(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("the concatenated code does not contain the all-zero word")]
    ZeroNotInCode,
    #[error("no permutation reaches rank {0}")]
    NotFound(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Stable machine-readable name used in CLI error lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::DivisionByZero => "DivisionByZero",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::TooSmall(_) => "TooSmall",
            Error::TooLarge(_) => "TooLarge",
            Error::DuplicateWord(_) => "DuplicateWord",
            Error::NotSubcode(_) => "NotSubcode",
            Error::NotCosetClosed(_) => "NotCosetClosed",
            Error::LengthNotAdmissible { .. } => "LengthNotAdmissible",
            Error::NonPrimeField(_) => "NonPrimeField",
            Error::NotPerfect => "NotPerfect",
            Error::NotDualWord(_) => "NotDualWord",
            Error::WrongWeight { .. } => "WrongWeight",
            Error::BinaryFieldUnsupported => "BinaryFieldUnsupported",
            Error::PartitionInvalid(_) => "PartitionInvalid",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::ZeroNotInCode => "ZeroNotInCode",
            Error::NotFound(_) => "NotFound",
            Error::Parse { .. } => "Parse",
            Error::Io { .. } => "Io",
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
