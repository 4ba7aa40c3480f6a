//! Error taxonomy shared by every module.
//!
//! Three user-visible classes map onto CLI exit codes: domain errors (bad
//! input, exit 1), resource errors (caps exceeded, exit 2), and internal
//! errors (a violated invariant — a bug, exit 3, never silently ignored).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("syntax error at line {line}, column {col}: {msg} (at `{token}`)")]
    Parse {
        line: usize,
        col: usize,
        token: String,
        msg: String,
    },

    #[error("resource error at step n = {n}: {msg}")]
    Resource { n: usize, msg: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("root finder did not converge: residual {residual:.3e} after {iterations} iterations")]
    RootsNonconverged {
        /// Best-effort roots, still usable by callers that verify independently.
        roots: Vec<(num::complex::Complex64, usize)>,
        residual: f64,
        iterations: usize,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn resource(n: usize, msg: impl Into<String>) -> Self {
        Error::Resource { n, msg: msg.into() }
    }

    /// Process exit code for the CLI: 1 domain, 2 resource, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse { .. } | Error::Io(_) => 1,
            Error::Resource { .. } | Error::RootsNonconverged { .. } => 2,
            Error::Internal(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
