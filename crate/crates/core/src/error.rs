use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("argument must be positive; the valuation of zero is infinite")]
    ZeroArgument,

    #[error("the mod-4 character at p = 2 is only defined on odd integers, got {0}")]
    EvenAtTwo(i64),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(String),

    #[error("invalid `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("prime {0} listed more than once")]
    DuplicatePrime(u64),

    #[error("construction needs {expected} primes, got {got}")]
    WrongPrimeCount { expected: usize, got: usize },

    #[error("assignment table would have {size} entries, cap is {cap}")]
    TableTooLarge { size: u128, cap: u64 },

    #[error("invalid partition document: {0}")]
    InvalidDocument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("operation needs a modular-table partition, got {0}")]
    NotModular(String),

    #[error("certificate refuted by the window: {0}")]
    CertificateRefuted(String),

    #[error("ratio oracles disagree: {0}")]
    OracleDisagreement(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }
}
