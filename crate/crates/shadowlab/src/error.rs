use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-visible precondition was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A construction is geometrically infeasible for the given parameters.
    #[error("infeasible construction: {0}")]
    Infeasible(String),

    /// An orbit left the region where an operation is defined.
    #[error("iterate escaped the defining region at step {step}")]
    Escape { step: usize },

    /// An iterative solver did not converge; carries the last residual.
    #[error("solver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// A search exhausted its budget without finding the required object.
    #[error("search exhausted: {0}")]
    Exhausted(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }

    /// Exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition(_) | Error::Infeasible(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
