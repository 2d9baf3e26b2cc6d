//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by valuation, key-polynomial, family, chain, and
/// extension operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A polynomial that must be monic is not.
    #[error("polynomial is not monic")]
    NotMonic,

    #[error("{0} is not prime")]
    NotPrime(u64),

    /// The zero polynomial was passed where a nonzero one is required.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// An augmentation value does not exceed the predecessor value, or a
    /// non-final step carries an infinite value.
    #[error("augmentation values are not properly nested: {0}")]
    NotNested(String),

    /// A residual factor expected to be irreducible is not.
    #[error("polynomial is not irreducible over the residue field")]
    NotIrreducible,

    /// Lifting the residual class of the key itself is rejected.
    #[error("cannot lift y; it corresponds to the current key")]
    PsiIsY,

    /// The operation needs a residually transcendental valuation (finite
    /// final value).
    #[error("valuation is not residually transcendental")]
    NotResiduallyTranscendental,

    /// Equality testing is only implemented for purely ordinary chains.
    #[error("chain contains a limit step; equality is only semi-decidable")]
    LimitStepPresent,

    /// A coefficient in a limit-step expansion did not stabilize within
    /// the stability budget.
    #[error("coefficient did not stabilize within budget: {0}")]
    UnstableCoefficient(String),

    /// A family stream ran out of entries or iterations.
    #[error("stability budget {budget} exhausted on {context}")]
    BudgetExhausted { budget: usize, context: String },

    /// A chain fails one of the MacLane-Vaquie chain conditions.
    #[error("chain condition violated at step {step}: {condition}")]
    MlvViolation { step: usize, condition: String },

    /// The defect ledger needs a valuation with support (final value
    /// infinity).
    #[error("operation requires the final augmentation value to be infinite")]
    SupportRequired,

    /// The input polynomial has repeated factors.
    #[error("polynomial is not squarefree")]
    NotSquarefree,

    /// The input polynomial must have integer coefficients.
    #[error("polynomial must have integer coefficients")]
    NonIntegralCoefficients,

    /// The extension search exceeded its recursion guard.
    #[error("extension search exceeded the recursion depth cap of {0}")]
    DepthCapExceeded(usize),

    /// A digit stream cannot be built from the given data.
    #[error("invalid digit stream parameter: {0}")]
    InvalidTheta(String),

    /// An internal consistency check failed; this is a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
