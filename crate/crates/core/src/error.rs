use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a unit: series has zero constant term")]
    NotAUnit,
    #[error("series must have zero constant term ({0})")]
    NonzeroConstant(&'static str),
    #[error("series must have the form z + O(z^2) ({0})")]
    BadNormalization(&'static str),
    #[error("series must have the form z^2 (1 + O(z))")]
    NotSquareNormalized,
    #[error("insufficient series order: need {needed}, have {available}")]
    InsufficientOrder { needed: i64, available: i64 },
    #[error("cannot mix t-side and T-side polynomials")]
    MixedKinds,
    #[error("wrong variable kind: expected {expected}")]
    WrongKind { expected: &'static str },
    #[error("no substitution image for variable {0}")]
    MissingImage(String),
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    #[error("cannot specialize hbar to zero with negative hbar powers present")]
    HbarZero,
    #[error("excluded parameter locus: p + q = 0")]
    ExcludedLocus,
    #[error("s^2 = {s_squared} does not equal p + q = {sum}")]
    BadSquareRoot { s_squared: String, sum: String },
    #[error("Bernoulli index must be even and positive, got {0}")]
    BernoulliIndex(i64),
    #[error("R violates symplectic condition")]
    NotSymplectic,
    #[error("R(0) must equal 1")]
    RNotNormalized,
    #[error("exponential does not terminate on truncated space (weight drop {0})")]
    NonNilpotent(i64),
    #[error("operator index out of range: {0}")]
    OperatorIndex(String),
    #[error("hbar must be specialized before the Hirota check")]
    UnspecializedHbar,
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("{0} needs a parameter point")]
    MissingPoint(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Errors caused by the request rather than by the engine.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InsufficientOrder { .. }
                | Error::ParseRational(_)
                | Error::HbarZero
                | Error::ExcludedLocus
                | Error::BadSquareRoot { .. }
                | Error::UnknownCheck(_)
                | Error::MissingPoint(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
