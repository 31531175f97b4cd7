//! Exact certification of isometric embeddings of perturbed Euclidean norms
//! into the L_q scales, plus a floating-point validation harness.
//!
//! The crate decides, with rational and algebraic-number arithmetic only,
//! whether the norm family N_lambda(x) = |x|_2 (1 + lambda f(x_n^2/|x|_2^2))^s
//! defines a norm and embeds in a given L_q, locates the exact lambda windows
//! where embeddings exist or fail, and emits machine-checkable certificates.
//! A separate numerical layer spot-checks every symbolic claim with quadrature
//! and randomized sampling.

pub mod embed;
pub mod exact;
pub mod moments;
pub mod norms;
pub mod validate;

/// Crate-wide error type. Variants map onto process exit codes: bad input and
/// unsupported requests exit 2, a degenerate certification window exits 3, and
/// internal invariant violations exit 4.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The request itself is malformed (out-of-range parameter, empty interval,
    /// non-reduced fraction syntax, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested parameters leave the unit ball non-convex, so no norm
    /// exists and no embedding question can be posed.
    #[error("not a norm: {0}")]
    NotANorm(String),

    /// A certification window collapsed to a single point, so there is no open
    /// parameter range to report.
    #[error("degenerate window: {0}")]
    DegenerateWindow(String),

    /// The combination of parameters is outside what the numerical harness can
    /// check (the symbolic layer may still have an answer).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A gamma-ratio constant cannot be reduced to rational form.
    #[error("unreducible constant: {0}")]
    Unreducible(String),

    /// An internal invariant failed; always a bug, never a data error.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for this error. Success is 0; the codes here are
    /// stable and scripted against.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::NotANorm(_)
            | Error::Unsupported(_)
            | Error::Unreducible(_) => 2,
            Error::DegenerateWindow(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
