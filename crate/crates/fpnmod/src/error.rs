//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by exact-arithmetic and module-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The zero polynomial has no Newton polygon or slope data.
    #[error("zero polynomial")]
    ZeroPolynomial,

    /// Operand shapes are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A subspace handed to `restrict_operator` (or `submodule`/`quotient`)
    /// is not stable under the operator.
    #[error("subspace is not invariant under the operator")]
    NotInvariant,

    /// Construction parameters violate a stated precondition.
    #[error("bad parameters: {0}")]
    BadParameters(String),

    /// Hensel separation or certified rounding failed at the working
    /// precision.
    #[error("p-adic precision exhausted at {precision} digits: {detail}")]
    PrecisionExhausted { precision: u32, detail: String },

    /// The semilinear commutation system does not reduce to the supported
    /// triangular constraint forms; callers may fall back to the Q_p-linear
    /// endomorphism dimension as a lower bound.
    #[error("semilinear system is not triangular: {0}")]
    NotTriangular(String),

    /// An operation was invoked outside its stated precondition.
    #[error("precondition breach: {0}")]
    PreconditionBreach(String),

    /// A verification that is guaranteed by a theorem failed; this indicates
    /// a library bug or an undetected precondition breach, never a valid
    /// negative result.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
