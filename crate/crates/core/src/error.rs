use thiserror::Error;

/// Errors raised by the open-game engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("domain error: {value} is not an element of {ty}")]
    Domain { value: String, ty: String },

    #[error("enumeration cap exceeded: {what} has {count} items, cap is {cap}")]
    EnumerationCapExceeded { what: String, count: u128, cap: u128 },

    #[error("boundary mismatch: expected {expected}, found {found}")]
    BoundaryMismatch { expected: String, found: String },

    #[error("incomplete profile: {0}")]
    IncompleteProfile(String),

    #[error("context does not fit the game: {0}")]
    ContextType(String),

    #[error("game is not scalar: its boundary is {0}")]
    NotScalar(String),

    #[error("non-numeric outcome: {0}")]
    NonNumericOutcome(String),

    #[error("outcome type mismatch: {0}")]
    OutcomeTypeMismatch(String),

    #[error("{0} is not a finite type")]
    NotFinite(String),

    #[error("{0}")]
    Invalid(String),
}

impl CoreError {
    pub(crate) fn domain(value: impl ToString, ty: impl ToString) -> Self {
        CoreError::Domain {
            value: value.to_string(),
            ty: ty.to_string(),
        }
    }

    pub(crate) fn cap(what: impl Into<String>, count: u128, cap: u128) -> Self {
        CoreError::EnumerationCapExceeded {
            what: what.into(),
            count,
            cap,
        }
    }

    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, CoreError::EnumerationCapExceeded { .. })
    }
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
