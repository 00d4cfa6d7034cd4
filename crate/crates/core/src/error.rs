use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("jacobi identity fails on {count} basis triple(s), worst residual {worst:.3e}")]
    Jacobi { count: usize, worst: f64 },

    #[error("not of compact type: {0}")]
    NotCompactType(String),

    #[error("form is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("metric is not bi-invariant")]
    NotBiInvariant,

    #[error("subspace is not closed under the bracket (residual {0:.3e})")]
    NotBracketClosed(f64),

    #[error("decomposition failed after {attempts} attempts: {reason}")]
    DecompositionFailed { attempts: usize, reason: String },

    #[error("metric restricted to ideal {ideal} is not proportional to the Killing form (residual {residual:.3e})")]
    Proportionality { ideal: usize, residual: f64 },

    #[error("vectors do not span a 2-plane")]
    DegeneratePlane,

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("operand {side}: {source}")]
    Operand {
        side: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn on_side(self, side: usize) -> Error {
        Error::Operand {
            side,
            source: Box::new(self),
        }
    }

    /// The innermost error, unwrapping any operand labels.
    pub fn root(&self) -> &Error {
        match self {
            Error::Operand { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
