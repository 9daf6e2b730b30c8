//! Error type shared by all decoding stages.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Code parameters must satisfy 1 <= k < n.
    InvalidCodeParams { n: usize, k: usize },
    /// Message degree must stay below the code dimension.
    DegreeTooLarge { degree: usize, k: usize },
    /// A vector had the wrong length for the operation.
    LengthMismatch { expected: usize, actual: usize },
    /// Requested sparsity exceeds the code length.
    SparsityOutOfRange { t: usize, n: usize },
    /// The restricted linear system was numerically rank deficient.
    RankDeficient,
    /// Root extraction was asked for the roots of the zero polynomial.
    ZeroPolynomial,
    /// The eigenvalue iteration failed to converge.
    EigenFailure,
    /// No decoding radius >= 0 exists for the given (s, l).
    NoFeasibleRadius,
    /// The target radius exceeds the Johnson bound for the effective code.
    RadiusExceedsJohnson { tau: usize, johnson: usize },
    /// All decoding trials were exhausted without an accepted candidate.
    DecodeFailure,
    /// Statistics were requested over an empty dataset.
    EmptyDataset,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidCodeParams { n, k } => {
                write!(
                    f,
                    "invalid code parameters: need 1 <= k < n, got n={n}, k={k}"
                )
            }
            Error::DegreeTooLarge { degree, k } => {
                write!(f, "message degree {degree} not below dimension {k}")
            }
            Error::LengthMismatch { expected, actual } => {
                write!(f, "length mismatch: expected {expected}, got {actual}")
            }
            Error::SparsityOutOfRange { t, n } => {
                write!(f, "sparsity {t} out of range for length {n}")
            }
            Error::RankDeficient => write!(f, "restricted system is rank deficient"),
            Error::ZeroPolynomial => write!(f, "zero polynomial has no well-defined roots"),
            Error::EigenFailure => write!(f, "eigenvalue iteration did not converge"),
            Error::NoFeasibleRadius => write!(f, "no nonnegative decoding radius exists"),
            Error::RadiusExceedsJohnson { tau, johnson } => {
                write!(f, "target radius {tau} exceeds Johnson radius {johnson}")
            }
            Error::DecodeFailure => write!(f, "decoding failed: no candidate accepted"),
            Error::EmptyDataset => write!(f, "empty dataset"),
        }
    }
}

impl std::error::Error for Error {}
