use thiserror::Error;

/// Errors raised by the library. Precondition failures carry the name of the
/// violated rule so the CLI can report it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{0} is not a discriminant (must be 0 or 1 mod 4)")]
    NotDiscriminant(i64),

    #[error("discriminant {0} is not positive")]
    NonPositiveDiscriminant(i64),

    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(i64),

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("invalid rational point {p}/{q}")]
    InvalidPoint { p: i64, q: i64 },

    #[error("level must be positive")]
    InvalidLevel,

    #[error("{0} is not a dimension-one level")]
    UnknownLevel(u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no represented value coprime to {d0} found for form [{a},{b},{c}]")]
    SearchExhausted { d0: i64, a: i64, b: i64, c: i64 },

    #[error("no coefficient data for level {0}")]
    UnsupportedLevel(u32),

    #[error("{0} is a prime of bad reduction for this model")]
    BadPrime(u64),

    #[error("missing a_p for prime {0}")]
    MissingPrime(u64),

    #[error("insufficient coefficients: need {needed}, have {have}")]
    InsufficientCoefficients { needed: usize, have: usize },

    #[error("invalid data: {0}")]
    Data(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors caused by bad caller input rather than a failure
    /// inside the library.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::Overflow(_) | Error::SearchExhausted { .. } | Error::Data(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
