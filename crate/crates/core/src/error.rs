use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A denominator vanished. `index` names the offending factor when the
    /// value is a product.
    #[error("pole: {context}")]
    Pole { context: String, index: Option<usize> },
    /// A truncated sum did not settle.
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    /// A postcondition failed. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn pole(context: impl Into<String>) -> Self {
        Error::Pole { context: context.into(), index: None }
    }

    pub fn pole_at(context: impl Into<String>, index: usize) -> Self {
        Error::Pole { context: context.into(), index: Some(index) }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, Error::Pole { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
