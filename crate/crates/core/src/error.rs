use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("multisegment {0} is not aperiodic")]
    NonAperiodic(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("resource bound exceeded: {what} is {value}, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("partition {0} is not {1}-regular")]
    NotRegular(String, u32),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("inexact division: {0}")]
    DivisionFailure(String),

    #[error("leading term failure: {0}")]
    LeadingTermFailure(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("Hall polynomial interpolation inconsistent: {0}")]
    InterpolationInconsistency(String),

    #[error("generic orbit not reached: {0}")]
    GenericityNotReached(String),

    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
}

impl Error {
    /// Short machine-readable name of the variant, used by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidRing(_) => "InvalidRing",
            Error::Syntax { .. } => "SyntaxError",
            Error::RingMismatch(_) => "RingMismatch",
            Error::NonAperiodic(_) => "NonAperiodic",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::NotRegular(..) => "NotRegular",
            Error::InvalidInput(_) => "InvalidInput",
            Error::DivisionFailure(_) => "DivisionFailure",
            Error::LeadingTermFailure(_) => "LeadingTermFailure",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::InterpolationInconsistency(_) => "InterpolationInconsistency",
            Error::GenericityNotReached(_) => "GenericityNotReached",
            Error::NotNilpotent(_) => "NotNilpotent",
        }
    }

    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::DivisionFailure(_)
                | Error::LeadingTermFailure(_)
                | Error::InvariantViolation(_)
                | Error::InterpolationInconsistency(_)
                | Error::GenericityNotReached(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
