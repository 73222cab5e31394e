use thiserror::Error;

use crate::scalar::ScalarMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operands belong to different algebras")]
    IncompatibleAlgebras,

    /// A result that the algebra guarantees to be scalar was not. Signals a
    /// broken multiplication rather than bad input.
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("element has zero norm and cannot be inverted")]
    NotInvertible,

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("scalar mode mismatch: expected {expected}, found {found}")]
    ModeMismatch {
        expected: ScalarMode,
        found: ScalarMode,
    },

    #[error("cannot parse scalar {0:?}")]
    Parse(String),

    #[error("non-finite floating-point value")]
    NonFinite,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
