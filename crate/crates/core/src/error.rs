use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} exceeds cap ({value} > {cap})")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,

    #[error("meataxe undecided after {0} iterations")]
    MeataxeUndecided(usize),

    #[error("x^p - x^[p] does not act as a scalar for basis element {0}")]
    NonScalarCentral(usize),

    #[error("verification failed in {stage}: {detail}")]
    Verification { stage: &'static str, detail: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: &'static str, value: u64, cap: u64) -> Self {
        Error::CapExceeded { what, value, cap }
    }

    pub(crate) fn verification(stage: &'static str, detail: impl Into<String>) -> Self {
        Error::Verification {
            stage,
            detail: detail.into(),
        }
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            Error::Verification { .. } | Error::MeataxeUndecided(_) => 4,
            Error::NonScalarCentral(_) => 4,
            _ => 2,
        }
    }
}
