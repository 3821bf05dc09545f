use thiserror::Error;

use crate::format::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed tables, unknown names, out-of-range indices.
    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    /// An operation was called on a value that does not meet its precondition.
    #[error("precondition violated: {0}")]
    Contract(String),

    /// The pseudo BCK-meet-semilattice lacks meet compatibility, so it has no
    /// pseudo equality algebra counterpart.
    #[error("rejected: {law} fails at witness {witness:?}")]
    Rejected { law: &'static str, witness: Vec<usize> },

    #[error("capacity exceeded: {what} of size {size} exceeds the bound {bound}")]
    Capacity {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    /// A property that holds in every model failed on a concrete table. Either the
    /// implementation or the claimed property is wrong; never silently ignored.
    #[error("theorem violation: {claim} fails at witness {witness:?}")]
    TheoremViolation { claim: String, witness: Vec<usize> },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn violation(claim: impl Into<String>, witness: &[usize]) -> Self {
        Error::TheoremViolation {
            claim: claim.into(),
            witness: witness.to_vec(),
        }
    }

    /// Exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Parse(_) | Error::Io(_) => 2,
            Error::Capacity { .. } => 3,
            Error::Contract(_) | Error::Rejected { .. } | Error::TheoremViolation { .. } => 1,
        }
    }
}
